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

#include "asrscale/runs.hpp"

#include <charconv>
#include <cmath>
#include <map>

#include "asrscale/csv.hpp"
#include "asrscale/error.hpp"

namespace asrscale {
namespace {

double parse_number(const std::string& text, const char* column, std::size_t line) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty() || !std::isfinite(value)) {
    throw ParseError(std::string("column '") + column + "': cannot parse number '" + text + "'",
                     line);
  }
  return value;
}

}  // namespace

std::string to_string(const RunSource& source) {
  return source.is_fixture() ? "fixture:table" + std::to_string(source.fixture_table)
                             : "ingested";
}

RunSource run_source_from_string(std::string_view text) {
  if (text == "ingested") return RunSource::ingested();
  constexpr std::string_view prefix = "fixture:table";
  if (text.starts_with(prefix) && text.size() == prefix.size() + 1) {
    const char d = text.back();
    if (d >= '1' && d <= '4') return RunSource::fixture(d - '0');
  }
  throw InvalidArgument("unknown run source '" + std::string(text) + "'");
}

void validate_run(const RunRecord& run) {
  if (run.run_id.empty()) throw InvalidArgument("run_id must be non-empty");
  if (run.scores.empty()) throw InvalidArgument("run '" + run.run_id + "' has no scores");
  if (!(run.total_flops > 0.0)) {
    throw InvalidArgument("run '" + run.run_id + "' needs total_flops > 0");
  }
  if (!(run.data_hours >= 0.0)) {
    throw InvalidArgument("run '" + run.run_id + "' needs data_hours >= 0");
  }
  for (const TestSetScore& s : run.scores) {
    if (!(s.cer >= 0.0)) throw InvalidArgument("run '" + run.run_id + "' has a negative CER");
  }
  if (run.curve) validate_curve(*run.curve);
}

StrategyOutcome to_outcome(const RunRecord& run) {
  return {run.strategy_id, run.data_hours, average_cer(run.scores), run.total_flops};
}

std::vector<StrategyOutcome> to_outcomes(const std::vector<RunRecord>& runs) {
  std::vector<StrategyOutcome> out;
  out.reserve(runs.size());
  for (const RunRecord& r : runs) out.push_back(to_outcome(r));
  return out;
}

std::vector<RunRecord> parse_runs_csv(std::string_view text, RunSource source) {
  const std::vector<csv::Row> rows = csv::parse(text);
  if (rows.empty()) return {};

  const csv::Row& header = rows.front();
  if (csv::join(header.fields) != kRunsCsvHeader) {
    throw ParseError("missing header; expected '" + std::string(kRunsCsvHeader) + "'",
                     header.line);
  }

  std::vector<RunRecord> runs;
  std::map<std::string, std::size_t> index;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const csv::Row& row = rows[r];
    if (row.fields.size() != 7) {
      throw ParseError("expected 7 columns, got " + std::to_string(row.fields.size()), row.line);
    }
    const auto& f = row.fields;
    if (f[0].empty()) throw ParseError("empty run_id", row.line);
    const double hours = parse_number(f[3], "data_hours", row.line);
    const double cer = parse_number(f[5], "cer", row.line);
    const double flops = parse_number(f[6], "total_flops", row.line);
    if (hours < 0.0) throw ParseError("data_hours must be non-negative", row.line);
    if (cer < 0.0) throw ParseError("cer must be non-negative", row.line);
    if (!(flops > 0.0)) throw ParseError("total_flops must be positive", row.line);

    auto [it, inserted] = index.try_emplace(f[0], runs.size());
    if (inserted) {
      RunRecord run;
      run.run_id = f[0];
      run.strategy_id = f[1];
      run.encoder_tag = f[2];
      run.data_hours = hours;
      run.total_flops = flops;
      run.source = source;
      runs.push_back(std::move(run));
    }
    RunRecord& run = runs[it->second];
    if (run.strategy_id != f[1] || run.encoder_tag != f[2] || run.data_hours != hours ||
        run.total_flops != flops) {
      throw ParseError("rows of run '" + f[0] + "' disagree on run-level columns", row.line);
    }
    for (const TestSetScore& s : run.scores) {
      if (s.set_name == f[4]) {
        throw ParseError("duplicate test set '" + f[4] + "' for run '" + f[0] + "'", row.line);
      }
    }
    run.scores.push_back({f[4], cer});
  }
  return runs;
}

std::string write_runs_csv(const std::vector<RunRecord>& runs) {
  std::string out(kRunsCsvHeader);
  out.push_back('\n');
  for (const RunRecord& run : runs) {
    for (const TestSetScore& s : run.scores) {
      out += csv::join({run.run_id, run.strategy_id, run.encoder_tag,
                        csv::format_number(run.data_hours), s.set_name,
                        csv::format_number(s.cer), csv::format_number(run.total_flops)});
      out.push_back('\n');
    }
  }
  return out;
}

}  // namespace asrscale
