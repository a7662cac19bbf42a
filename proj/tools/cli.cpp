// Copyright 2026 The asrscale Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "asrscale/analysis.hpp"
#include "asrscale/chart.hpp"
#include "asrscale/config.hpp"
#include "asrscale/csv.hpp"
#include "asrscale/error.hpp"
#include "asrscale/flops.hpp"
#include "asrscale/metrics.hpp"
#include "asrscale/runs.hpp"
#include "asrscale/scaling.hpp"
#include "asrscale/store.hpp"

namespace asrscale::cli {
namespace {

using Format = std::string;  // "table" | "csv" | "json"

/// Raised for bad flag combinations detected after CLI11 parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("failed writing '" + path + "'");
}

std::string store_path(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("ASRSCALE_STORE"); env != nullptr && *env != '\0') return env;
  throw UsageError("no store: pass --store <path> or set ASRSCALE_STORE");
}

// Fixed-point presentation with half-up rounding.
std::string fixed(double v, int decimals) {
  if (!std::isfinite(v)) return "nan";
  return fmt::format("{:.{}f}", round_half_up(v, decimals), decimals);
}

std::string percent(double fraction, int decimals = 1) { return fixed(fraction * 100.0, decimals) + "%"; }

std::string num(double v) { return std::isfinite(v) ? csv::format_number(v) : "nan"; }

// Left-aligned text table with two-space gutters.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows)
    for (std::size_t c = 0; c < r.size() && c < width.size(); ++c) width[c] = std::max(width[c], r[c].size());
  auto line = [&](const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      s += cells[c];
      if (c + 1 < cells.size()) s += std::string(width[c] - cells[c].size() + 2, ' ');
    }
    return s + "\n";
  };
  std::string out = line(header);
  for (const auto& r : rows) out += line(r);
  return out;
}

std::string render_csv(const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
  std::string out = csv::join(header) + "\n";
  for (const auto& r : rows) out += csv::join(r) + "\n";
  return out;
}

// --input: CSV path, fixture:tableN[:selector] or store[:selector]. A
// selector keeps records whose strategy_id or encoder_tag equals it.
std::vector<RunRecord> load_input(const std::string& spec, const std::string& store_flag) {
  auto select = [](std::vector<RunRecord> runs, const std::string& selector, const std::string& what) {
    if (selector.empty()) return runs;
    std::erase_if(runs, [&](const RunRecord& r) {
      return r.strategy_id != selector && r.encoder_tag != selector;
    });
    if (runs.empty()) throw UsageError("selector '" + selector + "' matches nothing in " + what);
    return runs;
  };
  if (spec.starts_with("fixture:")) {
    std::string rest = spec.substr(8);
    std::string selector;
    if (auto colon = rest.find(':'); colon != std::string::npos) {
      selector = rest.substr(colon + 1);
      rest = rest.substr(0, colon);
    }
    if (!rest.starts_with("table") || rest.size() != 6 || rest[5] < '1' || rest[5] > '4') {
      throw UsageError("unknown fixture '" + spec + "' (expected fixture:table1..4[:selector])");
    }
    return select(load_fixtures(rest[5] - '0'), selector, rest);
  }
  if (spec == "store" || spec.starts_with("store:")) {
    const std::string selector = spec.size() > 6 ? spec.substr(6) : "";
    return select(RunStore(store_path(store_flag)).load(), selector, "store");
  }
  return parse_runs_csv(read_file(spec));
}

struct Series {
  std::string label;
  std::vector<RunRecord> runs;
};

// Groups runs by (strategy, encoder) in order of first appearance; labels name
// whichever of the two varies.
std::vector<Series> group_series(const std::vector<RunRecord>& runs) {
  std::set<std::string> strategies, encoders;
  for (const RunRecord& r : runs) {
    strategies.insert(r.strategy_id);
    encoders.insert(r.encoder_tag);
  }
  std::vector<Series> out;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (const RunRecord& r : runs) {
    auto [it, inserted] = index.try_emplace({r.strategy_id, r.encoder_tag}, out.size());
    if (inserted) {
      std::string label = r.strategy_id;
      if (encoders.size() > 1 && strategies.size() == 1) label = r.encoder_tag;
      else if (encoders.size() > 1) label = r.strategy_id + " (" + r.encoder_tag + ")";
      out.push_back({label, {}});
    }
    out[it->second].runs.push_back(r);
  }
  return out;
}

std::vector<SamplePoint> to_points(const std::vector<RunRecord>& runs) {
  std::vector<SamplePoint> pts;
  for (const RunRecord& r : runs) pts.push_back({r.total_flops, average_cer(r.scores)});
  return pts;
}

void add_format(CLI::App* cmd, Format& format, std::vector<std::string> choices) {
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember(std::move(choices)))
      ->capture_default_str();
}

// ---------------------------------------------------------------- commands

std::string cmd_fixtures(const std::string& table_arg, const Format& format) {
  std::string t = table_arg;
  if (t.starts_with("table")) t = t.substr(5);
  if (t.size() != 1 || t[0] < '1' || t[0] > '4') throw UsageError("unknown table '" + table_arg + "'");
  const std::vector<RunRecord> runs = load_fixtures(t[0] - '0');
  if (format == "csv") return write_runs_csv(runs);
  std::vector<std::vector<std::string>> rows;
  for (const RunRecord& r : runs) {
    std::vector<std::string> row{r.run_id, r.strategy_id, r.encoder_tag, fixed(r.data_hours, 0)};
    for (const TestSetScore& s : r.scores) row.push_back(fixed(s.cer, 2));
    row.push_back(fixed(average_cer(r.scores), 2));
    row.push_back(fixed(r.total_flops, 2));
    rows.push_back(std::move(row));
  }
  return render_table({"run_id", "strategy", "encoder", "hours", "TEST-MEETING", "TEST-NET", "AVG",
                       "FLOPs(1e15)"},
                      rows);
}

std::string cmd_ingest(const std::string& csv_path, const std::string& store_flag) {
  const std::vector<RunRecord> runs = parse_runs_csv(read_file(csv_path));
  RunStore store(store_path(store_flag));
  const std::vector<RunRecord> existing = store.load();
  for (const RunRecord& r : runs) {
    for (const RunRecord& e : existing) {
      if (e.run_id == r.run_id) throw ConflictError("run '" + r.run_id + "' is already in the store");
    }
  }
  for (const RunRecord& r : runs) store.put(r);
  return fmt::format("ingested {} run(s) into {}\n", runs.size(), store.path().string());
}

std::string cmd_list(const std::string& store_flag, const RunFilter& filter, const Format& format) {
  const std::vector<RunRecord> runs = RunStore(store_path(store_flag)).list(filter);
  if (format == "csv") return write_runs_csv(runs);
  if (format == "json") {
    std::string out;
    for (const RunRecord& r : runs) out += to_json_line(r) + "\n";
    return out;
  }
  std::vector<std::vector<std::string>> rows;
  for (const RunRecord& r : runs) {
    rows.push_back({r.run_id, r.strategy_id, r.encoder_tag, fixed(r.data_hours, 0),
                    fixed(average_cer(r.scores), 2), fixed(r.total_flops, 2), to_string(r.source)});
  }
  return render_table({"run_id", "strategy", "encoder", "hours", "AVG", "FLOPs(1e15)", "source"}, rows);
}

std::map<std::string, std::string> read_tsv(const std::string& path, std::vector<std::string>& order) {
  const std::string text = read_file(path);
  std::map<std::string, std::string> out;
  std::size_t line_no = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw ParseError(path + ": expected '<id>\\t<text>'", line_no);
    std::string id = line.substr(0, tab);
    if (!out.emplace(id, line.substr(tab + 1)).second) {
      throw ParseError(path + ": duplicate utterance id '" + id + "'", line_no);
    }
    order.push_back(std::move(id));
  }
  return out;
}

std::string cmd_cer(const std::string& ref_path, const std::string& hyp_path, bool strip_punct,
                    const Format& format) {
  std::vector<std::string> ref_order, hyp_order;
  const auto refs = read_tsv(ref_path, ref_order);
  const auto hyps = read_tsv(hyp_path, hyp_order);
  std::vector<std::string> missing;
  for (const auto& id : ref_order)
    if (!hyps.contains(id)) missing.push_back("hypothesis lacks '" + id + "'");
  for (const auto& id : hyp_order)
    if (!refs.contains(id)) missing.push_back("reference lacks '" + id + "'");
  if (!missing.empty()) {
    std::string msg = "unmatched utterance ids:";
    for (const auto& m : missing) msg += "\n  " + m;
    throw UsageError(msg);
  }
  NormalizeOptions opts;
  opts.strip_punctuation = strip_punct;
  std::vector<UtterancePair> pairs;
  for (const auto& id : ref_order) pairs.push_back(make_utterance_pair(refs.at(id), hyps.at(id), opts));
  const CorpusErrors totals = corpus_errors(pairs);
  const double cer = corpus_cer(pairs);
  if (format == "csv") {
    return render_csv({"utterances", "reference_chars", "edits", "cer_percent"},
                      {{std::to_string(pairs.size()), std::to_string(totals.reference_chars),
                        std::to_string(totals.edits), num(cer * 100.0)}});
  }
  if (format == "json") {
    return fmt::format("{{\"utterances\": {}, \"reference_chars\": {}, \"edits\": {}, \"cer_percent\": {}}}\n",
                       pairs.size(), totals.reference_chars, totals.edits, num(cer * 100.0));
  }
  return render_table({"utterances", "reference_chars", "edits", "CER"},
                      {{std::to_string(pairs.size()), std::to_string(totals.reference_chars),
                        std::to_string(totals.edits), percent(cer, 2)}});
}

struct FitOptions {
  std::string input;
  std::string method = "loglog";
  bool saturating = false;
  std::size_t grid = 1000;
  Format format = "table";
};

CommandResult cmd_fit(const FitOptions& o, const std::string& store_flag) {
  const auto series = group_series(load_input(o.input, store_flag));
  if (series.empty()) throw UsageError("no series");
  std::vector<std::pair<std::string, PowerLawFit>> fits;
  for (const Series& s : series) {
    const auto pts = to_points(s.runs);
    PowerLawFit fit;
    if (o.saturating) {
      SaturatingFitConfig cfg;
      cfg.grid_size = o.grid;
      cfg.polish = o.method == "nonlinear";
      fit = fit_saturating_power_law(pts, cfg);
    } else {
      fit = fit_power_law(pts, fit_method_from_string(o.method));
    }
    fits.emplace_back(s.label, fit);
  }

  CommandResult res;
  if (o.format == "json") {
    if (fits.size() == 1) {
      res.out = to_json(fits.front().second) + "\n";
    } else {
      res.out = "[\n";
      for (std::size_t i = 0; i < fits.size(); ++i) {
        res.out += "{\"series\": \"" + fits[i].first + "\", \"fit\": " + to_json(fits[i].second) + "}";
        res.out += i + 1 < fits.size() ? ",\n" : "\n";
      }
      res.out += "]\n";
    }
  } else {
    std::vector<std::vector<std::string>> rows;
    for (const auto& [label, f] : fits) {
      if (o.format == "csv") {
        rows.push_back({label, std::string(to_string(f.method)), num(f.alpha), num(f.beta),
                        num(f.l_infinity), num(f.r2_log), num(f.r2_linear), std::to_string(f.n_points)});
      } else {
        rows.push_back({label, std::string(to_string(f.method)), fixed(f.alpha, 4), fixed(f.beta, 2),
                        fixed(f.l_infinity, 4), fixed(f.r2_log, 4), fixed(f.r2_linear, 4),
                        std::to_string(f.n_points)});
      }
    }
    const std::vector<std::string> header{"series", "method", "alpha", "beta", "l_infinity",
                                          "r2_log", "r2_linear", "n_points"};
    res.out = o.format == "csv" ? render_csv(header, rows) : render_table(header, rows);
  }
  for (const auto& [label, f] : fits) {
    if (f.degenerate) {
      res.err += "degenerate fit for '" + label + "': observations are constant\n";
      res.exit_code = kExitDomain;
    }
  }
  return res;
}

std::string cmd_predict(double alpha, double beta, double linf, double budget, const Format& format) {
  PowerLawFit fit;
  fit.alpha = alpha;
  fit.beta = beta;
  fit.l_infinity = linf;
  const double err = predict_error(fit, budget);
  if (format == "csv") return render_csv({"budget", "predicted_error"}, {{num(budget), num(err)}});
  if (format == "json") return fmt::format("{{\"budget\": {}, \"predicted_error\": {}}}\n", num(budget), num(err));
  return fixed(err, 2) + "\n";
}

std::string cmd_plan(double target, const std::string& fit_path, const Format& format) {
  const PowerLawFit fit = power_law_fit_from_json(read_file(fit_path));
  const double budget = required_budget(fit, target);
  if (format == "csv") return render_csv({"target_cer", "required_budget"}, {{num(target), num(budget)}});
  if (format == "json") {
    return fmt::format("{{\"target_cer\": {}, \"required_budget\": {}}}\n", num(target), num(budget));
  }
  return "required budget: " + fixed(budget, 2) + " x1e15 FLOPs\n";
}

std::string cmd_compare(const std::string& input, const std::string& baseline,
                        const std::string& store_flag, const Format& format) {
  const auto outcomes = to_outcomes(load_input(input, store_flag));
  const bool known = std::any_of(outcomes.begin(), outcomes.end(),
                                 [&](const StrategyOutcome& o) { return o.strategy_id == baseline; });
  if (!known) throw UsageError("baseline '" + baseline + "' is not in the input");
  const auto rows = compare_strategies(outcomes, baseline);
  std::vector<std::vector<std::string>> cells;
  for (const ComparisonRow& r : rows) {
    if (format == "csv") {
      cells.push_back({r.strategy_id, num(r.data_hours), num(r.avg_cer), num(r.total_flops), num(r.cerr),
                       num(r.flops_ratio)});
    } else {
      cells.push_back({r.strategy_id, fixed(r.data_hours, 0), fixed(r.avg_cer, 2), fixed(r.total_flops, 2),
                       percent(r.cerr), percent(r.flops_ratio)});
    }
  }
  if (format == "csv") {
    return render_csv({"strategy_id", "data_hours", "avg_cer", "total_flops", "cerr_vs_baseline",
                       "flops_ratio_vs_baseline"},
                      cells);
  }
  return render_table({"strategy", "hours", "AVG", "FLOPs(1e15)", "CERR vs " + baseline,
                       "FLOPs vs " + baseline},
                      cells);
}

std::string cmd_pareto(const std::string& input, const std::string& store_flag, const Format& format) {
  const auto frontier = pareto_frontier(to_outcomes(load_input(input, store_flag)));
  std::vector<std::vector<std::string>> cells;
  for (const StrategyOutcome& o : frontier) {
    if (format == "csv") {
      cells.push_back({o.strategy_id, num(o.data_hours), num(o.avg_cer), num(o.total_flops)});
    } else {
      cells.push_back({o.strategy_id, fixed(o.data_hours, 0), fixed(o.avg_cer, 2), fixed(o.total_flops, 2)});
    }
  }
  if (format == "csv") return render_csv({"strategy_id", "data_hours", "avg_cer", "total_flops"}, cells);
  return render_table({"strategy", "hours", "AVG", "FLOPs(1e15)"}, cells);
}

std::string cmd_decompose(const std::string& input, const std::string& store_flag, const Format& format,
                          std::string& err) {
  std::vector<std::vector<std::string>> cells;
  for (const Series& s : group_series(load_input(input, store_flag))) {
    const auto outcomes = to_outcomes(s.runs);
    StageCostDecomposition d;
    try {
      d = stage_cost_decomposition(outcomes);
    } catch (const InvalidArgument&) {
      err += "skipping '" + s.label + "': fewer than two distinct data scales\n";
      continue;
    }
    if (format == "csv") {
      cells.push_back({s.label, num(d.slope), num(d.intercept), num(d.residual_max_relative)});
    } else {
      cells.push_back({s.label, fixed(d.slope, 2), fixed(d.intercept, 2), percent(d.residual_max_relative, 3)});
    }
  }
  if (cells.empty()) throw UsageError("no series with at least two distinct data scales");
  if (format == "csv") return render_csv({"series", "slope_per_1000h", "intercept", "residual_max_relative"}, cells);
  return render_table({"series", "FLOPs/1000h", "fixed FLOPs", "max residual"}, cells);
}

std::string cmd_converge(const std::string& curve_path, const ConvergencePolicy& policy, const Format& format) {
  const auto rows = csv::parse(read_file(curve_path));
  if (rows.empty() || csv::join(rows.front().fields) != "cumulative_flops,avg_cer,stage_kind") {
    throw ParseError("missing header; expected 'cumulative_flops,avg_cer,stage_kind'",
                     rows.empty() ? 1 : rows.front().line);
  }
  CheckpointCurve curve;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& f = rows[i].fields;
    if (f.size() != 3) throw ParseError("expected 3 columns", rows[i].line);
    try {
      curve.points.push_back({std::stod(f[0]), std::stod(f[1]), stage_kind_from_string(f[2])});
    } catch (const std::logic_error&) {
      throw ParseError("cannot parse checkpoint", rows[i].line);
    } catch (const ConfigError& e) {
      throw ParseError(e.what(), rows[i].line);
    }
  }
  const auto pre = detect_convergence(curve, policy, Convergence::kPreliminary);
  const auto full = detect_convergence(curve, policy, Convergence::kFull);
  auto show = [](const std::optional<std::size_t>& i) { return i ? std::to_string(*i) : std::string("none"); };
  if (format == "csv") return render_csv({"level", "checkpoint_index"}, {{"preliminary", show(pre)}, {"full", show(full)}});
  return render_table({"level", "checkpoint"}, {{"preliminary", show(pre)}, {"full", show(full)}});
}

std::string cmd_flops(const std::string& config_path, const std::string& strategy_id, const Format& format) {
  const ToolkitConfig cfg = config_path.empty() ? ToolkitConfig{} : parse_config(read_file(config_path));
  std::vector<StrategySpec> strategies;
  for (const StrategySpec& s : cfg.strategies) {
    if (strategy_id.empty() || s.id == strategy_id) strategies.push_back(s);
  }
  if (strategies.empty()) throw UsageError("unknown strategy '" + strategy_id + "'");

  std::vector<std::vector<std::string>> cells;
  for (const StrategySpec& s : strategies) {
    const StrategyFlops f = strategy_flops(s, cfg.architecture, cfg.cost_model);
    for (std::size_t i = 0; i < f.per_stage.size(); ++i) {
      const std::string kind(to_string(s.stages[i].kind));
      if (format == "csv") {
        for (const auto& [module, p] : f.per_stage[i].per_module) {
          cells.push_back({s.id, std::to_string(i), kind, module, num(p.forward), num(p.activation_backward),
                           num(p.weight_gradient)});
        }
      } else {
        cells.push_back({s.id, std::to_string(i), kind, fixed(f.per_stage[i].total, 2)});
      }
    }
    if (format != "csv") cells.push_back({s.id, "total", "", fixed(f.total, 2)});
  }
  if (format == "csv") {
    return render_csv({"strategy_id", "stage", "kind", "module", "forward", "activation_backward",
                       "weight_gradient"},
                      cells);
  }
  return render_table({"strategy", "stage", "kind", "FLOPs(1e15)"}, cells);
}

struct ChartOptions {
  std::string input;
  std::string out;
  std::string axes = "loglog";
  std::string title;
  bool no_fit = false;
};

std::string cmd_chart(const ChartOptions& o, const std::string& store_flag) {
  ChartSpec spec;
  spec.axes = o.axes == "linear" ? ChartAxes::kLinear : ChartAxes::kLogLog;
  spec.title = o.title;
  spec.output_path = o.out;
  for (const Series& s : group_series(load_input(o.input, store_flag))) {
    ChartSeries cs{s.label, to_points(s.runs)};
    if (!o.no_fit && cs.points.size() >= 2) {
      try {
        spec.fits.push_back({s.label, fit_power_law(cs.points)});
      } catch (const InvalidArgument&) {
        // single budget: plot the points without a curve
      }
    }
    spec.series.push_back(std::move(cs));
  }
  const std::string svg = render_chart(spec);
  write_file(o.out, svg);
  return fmt::format("wrote {} ({} series, {} fits)\n", o.out, spec.series.size(), spec.fits.size());
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  CLI::App app{"Training-budget planning and scaling-law toolkit for LLM-based ASR", "asrscale"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  std::string store_flag;
  Format format = "table";
  CommandResult result;
  std::function<void()> action;

  auto* fixtures = app.add_subcommand("fixtures", "Print a bundled result table (1-4)");
  std::string table;
  fixtures->add_option("table", table, "Table id: 1-4 or table1-table4")->required();
  add_format(fixtures, format, {"table", "csv"});
  fixtures->callback([&] { action = [&] { result.out = cmd_fixtures(table, format); }; });

  auto* ingest = app.add_subcommand("ingest", "Append runs from a CSV file to the store");
  std::string ingest_csv;
  ingest->add_option("csv", ingest_csv, "Runs CSV")->required();
  ingest->add_option("--store", store_flag, "Store file (default: $ASRSCALE_STORE)");
  ingest->callback([&] { action = [&] { result.out = cmd_ingest(ingest_csv, store_flag); }; });

  auto* list = app.add_subcommand("list", "List runs in the store");
  std::string f_strategy, f_encoder, f_source;
  list->add_option("--store", store_flag, "Store file (default: $ASRSCALE_STORE)");
  list->add_option("--strategy", f_strategy, "Keep runs of this strategy id");
  list->add_option("--encoder", f_encoder, "Keep runs with this encoder tag");
  list->add_option("--source", f_source, "Keep runs from this source (ingested, fixture:tableN)");
  add_format(list, format, {"table", "csv", "json"});
  list->callback([&] {
    action = [&] {
      RunFilter filter;
      if (!f_strategy.empty()) filter.strategy_id = f_strategy;
      if (!f_encoder.empty()) filter.encoder_tag = f_encoder;
      if (!f_source.empty()) filter.source = run_source_from_string(f_source);
      result.out = cmd_list(store_flag, filter, format);
    };
  });

  auto* cer = app.add_subcommand("cer", "Corpus CER of hypothesis against reference transcripts");
  std::string ref_path, hyp_path;
  bool strip_punct = false;
  cer->add_option("--ref", ref_path, "Reference TSV (id<TAB>text)")->required();
  cer->add_option("--hyp", hyp_path, "Hypothesis TSV (id<TAB>text)")->required();
  cer->add_flag("--strip-punct", strip_punct, "Remove punctuation before scoring");
  add_format(cer, format, {"table", "csv", "json"});
  cer->callback([&] { action = [&] { result.out = cmd_cer(ref_path, hyp_path, strip_punct, format); }; });

  auto* fit = app.add_subcommand("fit", "Fit power-law scaling curves to (FLOPs, AVG CER) series");
  FitOptions fit_opts;
  fit->add_option("--input", fit_opts.input, "CSV, fixture:tableN[:selector] or store[:selector]")->required();
  fit->add_option("--method", fit_opts.method, "loglog or nonlinear")
      ->check(CLI::IsMember({"loglog", "nonlinear"}))
      ->capture_default_str();
  fit->add_flag("--saturating", fit_opts.saturating, "Fit L = L_inf + beta * C^alpha");
  fit->add_option("--grid", fit_opts.grid, "L_inf grid size for --saturating")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  fit->add_option("--store", store_flag, "Store file for store inputs");
  add_format(fit, fit_opts.format, {"table", "csv", "json"});
  fit->callback([&] { action = [&] { result = cmd_fit(fit_opts, store_flag); }; });

  auto* predict = app.add_subcommand("predict", "Evaluate L_inf + beta * C^alpha");
  double alpha = 0, beta = 0, linf = 0, budget = 0;
  predict->add_option("--alpha", alpha, "Exponent")->required();
  predict->add_option("--beta", beta, "Coefficient")->required();
  predict->add_option("--linf", linf, "Irreducible error")->capture_default_str();
  predict->add_option("--budget", budget, "Compute budget (1e15 FLOPs)")->required();
  add_format(predict, format, {"table", "csv", "json"});
  predict->callback([&] { action = [&] { result.out = cmd_predict(alpha, beta, linf, budget, format); }; });

  auto* plan = app.add_subcommand("plan", "Budget needed to reach a target CER under a fit");
  double target = 0;
  std::string fit_path;
  plan->add_option("--target-cer", target, "Target CER (%)")->required();
  plan->add_option("--fit", fit_path, "Fit JSON document (from `fit --format json`)")->required();
  add_format(plan, format, {"table", "csv", "json"});
  plan->callback([&] { action = [&] { result.out = cmd_plan(target, fit_path, format); }; });

  auto* compare = app.add_subcommand("compare", "CERR and FLOPs ratio against a baseline strategy");
  std::string baseline, compare_input;
  compare->add_option("--baseline", baseline, "Baseline strategy id")->required();
  compare->add_option("--input", compare_input, "CSV, fixture:tableN[:selector] or store[:selector]")->required();
  compare->add_option("--store", store_flag, "Store file for store inputs");
  add_format(compare, format, {"table", "csv"});
  compare->callback([&] { action = [&] { result.out = cmd_compare(compare_input, baseline, store_flag, format); }; });

  auto* pareto = app.add_subcommand("pareto", "Pareto frontier over (FLOPs, AVG CER)");
  std::string pareto_input;
  pareto->add_option("--input", pareto_input, "CSV, fixture:tableN[:selector] or store[:selector]")->required();
  pareto->add_option("--store", store_flag, "Store file for store inputs");
  add_format(pareto, format, {"table", "csv"});
  pareto->callback([&] { action = [&] { result.out = cmd_pareto(pareto_input, store_flag, format); }; });

  auto* decompose = app.add_subcommand("decompose", "Per-series OLS of total FLOPs on data hours");
  std::string decompose_input;
  decompose->add_option("--input", decompose_input, "CSV, fixture:tableN[:selector] or store[:selector]")->required();
  decompose->add_option("--store", store_flag, "Store file for store inputs");
  add_format(decompose, format, {"table", "csv"});
  decompose->callback([&] {
    action = [&] { result.out = cmd_decompose(decompose_input, store_flag, format, result.err); };
  });

  auto* converge = app.add_subcommand("converge", "Detect preliminary/full convergence on a checkpoint curve");
  std::string curve_path;
  ConvergencePolicy policy;
  converge->add_option("--curve", curve_path, "CSV: cumulative_flops,avg_cer,stage_kind")->required();
  converge->add_option("--window", policy.window, "Trailing checkpoints")->capture_default_str();
  converge->add_option("--preliminary", policy.preliminary_threshold, "Relative improvement threshold")
      ->capture_default_str();
  converge->add_option("--full", policy.full_threshold, "Relative improvement threshold")->capture_default_str();
  add_format(converge, format, {"table", "csv"});
  converge->callback([&] { action = [&] { result.out = cmd_converge(curve_path, policy, format); }; });

  auto* flops = app.add_subcommand("flops", "Estimate strategy FLOPs under the cost model");
  std::string config_path, strategy_id;
  flops->add_option("--config", config_path, "JSON configuration (default: built-in)");
  flops->add_option("--strategy", strategy_id, "Only this strategy id");
  add_format(flops, format, {"table", "csv"});
  flops->callback([&] { action = [&] { result.out = cmd_flops(config_path, strategy_id, format); }; });

  auto* chart = app.add_subcommand("chart", "Render series and power-law fits as SVG");
  ChartOptions chart_opts;
  chart->add_option("--input", chart_opts.input, "CSV, fixture:tableN[:selector] or store[:selector]")->required();
  chart->add_option("--out", chart_opts.out, "SVG output path")->required();
  chart->add_option("--axes", chart_opts.axes, "loglog or linear")
      ->check(CLI::IsMember({"loglog", "linear"}))
      ->capture_default_str();
  chart->add_option("--title", chart_opts.title, "Chart title");
  chart->add_flag("--no-fit", chart_opts.no_fit, "Omit fitted curves");
  chart->add_option("--store", store_flag, "Store file for store inputs");
  chart->callback([&] { action = [&] { result.out = cmd_chart(chart_opts, store_flag); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    const CLI::App* target = &app;
    for (const CLI::App* sub : app.get_subcommands()) target = sub;
    return {kExitOk, target->help(), ""};
  } catch (const CLI::CallForAllHelp&) {
    return {kExitOk, app.help("", CLI::AppFormatMode::All), ""};
  } catch (const CLI::ParseError& e) {
    return {kExitUsage, "", std::string("error: ") + e.what() + "\n\n" + app.help()};
  }

  try {
    if (action) action();
  } catch (const DomainError& e) {
    return {kExitDomain, "", std::string("error: ") + e.what() + "\n"};
  } catch (const ConflictError& e) {
    return {kExitDomain, "", std::string("error: ") + e.what() + "\n"};
  } catch (const Error& e) {
    return {kExitUsage, "", std::string("error: ") + e.what() + "\n"};
  }
  return result;
}

}  // namespace asrscale::cli
