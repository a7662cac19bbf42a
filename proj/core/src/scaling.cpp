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

#include "asrscale/scaling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "asrscale/error.hpp"
#include "json.hpp"

namespace asrscale {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Line {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = kNaN;
};

// Mean-centred simple linear regression of ys on xs.
Line ols(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  Line line;
  line.slope = sxx == 0.0 ? 0.0 : sxy / sxx;
  line.intercept = my - line.slope * mx;
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (line.intercept + line.slope * xs[i]);
      ss_res += r * r;
    }
    line.r2 = 1.0 - ss_res / syy;
  }
  return line;
}

void check_points(std::span<const SamplePoint> points, std::size_t min_points) {
  if (points.size() < min_points) {
    throw InvalidArgument("power-law fit needs at least " + std::to_string(min_points) +
                          " points, got " + std::to_string(points.size()));
  }
  for (const SamplePoint& p : points) {
    if (!(p.budget > 0.0)) throw InvalidArgument("budgets must be positive");
    if (!(p.error > 0.0)) throw InvalidArgument("errors must be positive");
  }
  const bool one_budget = std::all_of(points.begin(), points.end(), [&](const SamplePoint& p) {
    return p.budget == points.front().budget;
  });
  if (one_budget) throw InvalidArgument("power-law fit needs at least two distinct budgets");
}

using GradRef = Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>>;

// Model value and its Jacobian row for parameters theta at budget x.
using ModelFn = std::function<double(const Eigen::VectorXd& theta, double x, GradRef grad)>;
// Maps a proposed parameter vector into the feasible set; false rejects it.
using ProjectFn = std::function<bool(Eigen::VectorXd& theta)>;

double sse(const ModelFn& model, const Eigen::VectorXd& theta, std::span<const SamplePoint> pts) {
  Eigen::RowVectorXd scratch(theta.size());
  double s = 0.0;
  for (const SamplePoint& p : pts) {
    const double r = p.error - model(theta, p.budget, scratch);
    s += r * r;
  }
  return s;
}

// Levenberg-Marquardt on the linear-space sum of squared residuals. Stops when
// an accepted step changes every parameter by less than 1e-10 relative, or
// after 200 iterations.
Eigen::VectorXd levenberg_marquardt(const ModelFn& model, Eigen::VectorXd theta,
                                    std::span<const SamplePoint> pts,
                                    const ProjectFn& project = nullptr) {
  constexpr int kMaxIterations = 200;
  constexpr double kTolerance = 1e-10;
  const Eigen::Index n = theta.size();
  const Eigen::Index m = static_cast<Eigen::Index>(pts.size());

  double lambda = 1e-3;
  double cost = sse(model, theta, pts);
  Eigen::MatrixXd jac(m, n);
  Eigen::VectorXd res(m);

  for (int iter = 0; iter < kMaxIterations && cost > 0.0; ++iter) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const SamplePoint& p = pts[static_cast<std::size_t>(i)];
      res(i) = p.error - model(theta, p.budget, jac.row(i));
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * res;

    bool accepted = false;
    while (lambda < 1e30) {
      Eigen::MatrixXd damped = jtj;
      for (Eigen::Index k = 0; k < n; ++k) damped(k, k) += lambda * std::max(jtj(k, k), 1e-300);
      const Eigen::VectorXd step = damped.ldlt().solve(jtr);
      Eigen::VectorXd candidate = theta + step;
      if (step.allFinite() && (!project || project(candidate))) {
        const double candidate_cost = sse(model, candidate, pts);
        if (candidate_cost <= cost) {
          const Eigen::VectorXd delta = candidate - theta;
          theta = candidate;
          cost = candidate_cost;
          lambda = std::max(lambda / 10.0, 1e-15);
          accepted = true;
          bool small = true;
          for (Eigen::Index k = 0; k < n; ++k) {
            if (std::abs(delta(k)) >= kTolerance * std::max(std::abs(theta(k)), 1e-12)) small = false;
          }
          if (small) return theta;
          break;
        }
      }
      lambda *= 10.0;
    }
    if (!accepted) break;
  }
  return theta;
}

// theta = (ln beta, alpha)
double plain_model(const Eigen::VectorXd& t, double x, GradRef g) {
  const double v = std::exp(t(0) + t(1) * std::log(x));
  g(0) = v;
  g(1) = v * std::log(x);
  return v;
}

// theta = (l_infinity, ln beta, alpha)
double saturating_model(const Eigen::VectorXd& t, double x, GradRef g) {
  const double v = std::exp(t(1) + t(2) * std::log(x));
  g(0) = 1.0;
  g(1) = v;
  g(2) = v * std::log(x);
  return t(0) + v;
}

// For a fixed exponent the model is linear in (l_infinity, beta); solve that
// least-squares problem with l_infinity clamped to [0, upper].
struct Profile {
  double sse = std::numeric_limits<double>::infinity();
  double l_infinity = 0.0;
  double beta = 0.0;
};

Profile profile_at(double alpha, std::span<const SamplePoint> pts, double upper) {
  const double n = static_cast<double>(pts.size());
  double su = 0, sy = 0, suu = 0, suy = 0;
  for (const SamplePoint& p : pts) {
    const double u = std::pow(p.budget, alpha);
    su += u;
    sy += p.error;
    suu += u * u;
    suy += u * p.error;
  }
  Profile out;
  const double var = suu - su * su / n;
  if (!(var > 0.0)) return out;
  double beta = (suy - su * sy / n) / var;
  double linf = (sy - beta * su) / n;
  if (linf < 0.0 || linf > upper) {
    linf = std::clamp(linf, 0.0, upper);
    beta = (suy - linf * su) / suu;
  }
  if (!(beta > 0.0)) return out;
  double s = 0.0;
  for (const SamplePoint& p : pts) {
    const double r = p.error - linf - beta * std::pow(p.budget, alpha);
    s += r * r;
  }
  out = {s, linf, beta};
  return out;
}

// Minimizes the profiled SSE over alpha = -exp(t): a coarse scan over
// |alpha| in [1e-3, 10], then golden-section refinement around the best cell.
double profile_alpha(std::span<const SamplePoint> pts, double upper) {
  constexpr int kScan = 400;
  const double lo = std::log(1e-3), hi = std::log(10.0);
  auto cost = [&](double t) { return profile_at(-std::exp(t), pts, upper).sse; };
  int best = 0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= kScan; ++k) {
    const double c = cost(lo + (hi - lo) * k / kScan);
    if (c < best_cost) {
      best_cost = c;
      best = k;
    }
  }
  double a = lo + (hi - lo) * std::max(best - 1, 0) / kScan;
  double b = lo + (hi - lo) * std::min(best + 1, kScan) / kScan;
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = cost(c), fd = cost(d);
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = cost(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = cost(d);
    }
  }
  return -std::exp((a + b) / 2.0);
}

void fill_r2(PowerLawFit& fit, std::span<const SamplePoint> points) {
  const RSquared log_r2 = r_squared(fit, points, R2Space::kLog);
  const RSquared lin_r2 = r_squared(fit, points, R2Space::kLinear);
  fit.r2_log = log_r2.value;
  fit.r2_linear = lin_r2.value;
}

}  // namespace

std::string_view to_string(FitMethod method) {
  return method == FitMethod::kLogLogOls ? "loglog-ols" : "nonlinear-ls";
}

FitMethod fit_method_from_string(std::string_view text) {
  if (text == "loglog-ols" || text == "loglog") return FitMethod::kLogLogOls;
  if (text == "nonlinear-ls" || text == "nonlinear") return FitMethod::kNonlinearLs;
  throw InvalidArgument("unknown fit method '" + std::string(text) + "'");
}

PowerLawFit fit_power_law(std::span<const SamplePoint> points, FitMethod method) {
  check_points(points, 2);
  std::vector<double> lx, ly;
  lx.reserve(points.size());
  ly.reserve(points.size());
  for (const SamplePoint& p : points) {
    lx.push_back(std::log(p.budget));
    ly.push_back(std::log(p.error));
  }
  const Line line = ols(lx, ly);

  PowerLawFit fit;
  fit.alpha = line.slope;
  fit.beta = std::exp(line.intercept);
  fit.method = method;
  fit.n_points = points.size();
  fit.degenerate = std::isnan(line.r2);

  if (method == FitMethod::kNonlinearLs && !fit.degenerate) {
    Eigen::VectorXd theta(2);
    theta << line.intercept, line.slope;
    theta = levenberg_marquardt(plain_model, theta, points);
    fit.beta = std::exp(theta(0));
    fit.alpha = theta(1);
  }
  fill_r2(fit, points);
  return fit;
}

PowerLawFit fit_saturating_power_law(std::span<const SamplePoint> points,
                                     const SaturatingFitConfig& config) {
  check_points(points, 3);
  if (config.grid_size < 1) throw InvalidArgument("grid_size must be >= 1");
  if (!(config.epsilon > 0.0 && config.epsilon < 1.0)) {
    throw InvalidArgument("epsilon must lie in (0, 1)");
  }

  const double min_error =
      std::min_element(points.begin(), points.end(), [](const auto& a, const auto& b) {
        return a.error < b.error;
      })->error;

  PowerLawFit fit;
  fit.n_points = points.size();
  if (std::all_of(points.begin(), points.end(),
                  [&](const SamplePoint& p) { return p.error == min_error; })) {
    fit.l_infinity = min_error;
    fit.alpha = 0.0;
    fit.beta = 0.0;
    fit.degenerate = true;
    fit.r2_log = kNaN;
    fit.r2_linear = kNaN;
    return fit;
  }

  std::vector<double> lx;
  for (const SamplePoint& p : points) lx.push_back(std::log(p.budget));
  std::vector<double> ly(points.size());

  const double upper = min_error * (1.0 - config.epsilon);
  const std::size_t steps = config.grid_size > 1 ? config.grid_size - 1 : 1;
  double best_r2 = -std::numeric_limits<double>::infinity();
  double best_linf = 0.0;
  Line best_line;
  for (std::size_t k = 0; k < config.grid_size; ++k) {
    const double linf = upper * static_cast<double>(k) / static_cast<double>(steps);
    for (std::size_t i = 0; i < points.size(); ++i) ly[i] = std::log(points[i].error - linf);
    const Line line = ols(lx, ly);
    // Strict comparison keeps the smallest l_infinity on ties.
    if (!std::isnan(line.r2) && line.r2 > best_r2) {
      best_r2 = line.r2;
      best_linf = linf;
      best_line = line;
    }
  }

  fit.l_infinity = best_linf;
  fit.alpha = best_line.slope;
  fit.beta = std::exp(best_line.intercept);
  fit.method = FitMethod::kLogLogOls;

  if (config.polish) {
    Eigen::VectorXd theta(3);
    theta << best_linf, best_line.intercept, best_line.slope;
    const double start_cost = sse(saturating_model, theta, points);
    auto project = [min_error](Eigen::VectorXd& t) {
      if (t(0) < 0.0) t(0) = 0.0;
      return t(0) < min_error;
    };
    // Two starts: the grid winner, and the variable-projection optimum over
    // alpha, which survives curves whose reducible part dies out early.
    std::vector<Eigen::VectorXd> starts{theta};
    const double v_alpha = profile_alpha(points, upper);
    const Profile v = profile_at(v_alpha, points, upper);
    if (std::isfinite(v.sse)) {
      Eigen::VectorXd t(3);
      t << v.l_infinity, std::log(v.beta), v_alpha;
      starts.push_back(t);
    }
    double best_cost = start_cost;
    for (const Eigen::VectorXd& s : starts) {
      const Eigen::VectorXd polished = levenberg_marquardt(saturating_model, s, points, project);
      const double cost = sse(saturating_model, polished, points);
      if (cost < best_cost) {
        best_cost = cost;
        fit.l_infinity = polished(0);
        fit.beta = std::exp(polished(1));
        fit.alpha = polished(2);
        fit.method = FitMethod::kNonlinearLs;
      }
    }
  }
  fill_r2(fit, points);
  return fit;
}

double predict_error(const PowerLawFit& fit, double budget) {
  if (!(budget > 0.0)) throw InvalidArgument("budget must be positive");
  return fit.l_infinity + fit.beta * std::pow(budget, fit.alpha);
}

double required_budget(const PowerLawFit& fit, double target_error) {
  if (!(fit.alpha < 0.0)) {
    throw DomainError("fit is not invertible: alpha must be negative");
  }
  if (!(target_error > fit.l_infinity)) {
    throw DomainError("target error is unattainable: it must exceed l_infinity");
  }
  if (!(fit.beta > 0.0)) throw DomainError("fit is not invertible: beta must be positive");
  return std::pow((target_error - fit.l_infinity) / fit.beta, 1.0 / fit.alpha);
}

RSquared r_squared(const PowerLawFit& fit, std::span<const SamplePoint> points, R2Space space) {
  if (points.size() < 2) throw InvalidArgument("r_squared needs at least two points");
  std::vector<double> observed, predicted;
  RSquared out;
  for (const SamplePoint& p : points) {
    if (space == R2Space::kLinear) {
      observed.push_back(p.error);
      predicted.push_back(predict_error(fit, p.budget));
    } else {
      if (p.error <= fit.l_infinity || !(fit.beta > 0.0)) {
        ++out.skipped;
        continue;
      }
      observed.push_back(std::log(p.error - fit.l_infinity));
      predicted.push_back(std::log(fit.beta) + fit.alpha * std::log(p.budget));
    }
  }
  double mean = 0.0;
  for (double v : observed) mean += v;
  mean /= static_cast<double>(std::max<std::size_t>(observed.size(), 1));
  double ss_tot = 0.0, ss_res = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    ss_tot += (observed[i] - mean) * (observed[i] - mean);
    ss_res += (observed[i] - predicted[i]) * (observed[i] - predicted[i]);
  }
  if (observed.empty() || ss_tot == 0.0) {
    out.degenerate = true;
    out.value = kNaN;
    return out;
  }
  out.value = 1.0 - ss_res / ss_tot;
  return out;
}

std::string to_json(const PowerLawFit& fit) {
  auto num = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
  nlohmann::ordered_json doc;
  doc["alpha"] = num(fit.alpha);
  doc["beta"] = num(fit.beta);
  doc["l_infinity"] = num(fit.l_infinity);
  doc["method"] = std::string(to_string(fit.method));
  doc["r2_log"] = num(fit.r2_log);
  doc["r2_linear"] = num(fit.r2_linear);
  doc["n_points"] = fit.n_points;
  if (fit.degenerate) doc["degenerate"] = true;
  return doc.dump(2);
}

PowerLawFit power_law_fit_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("fit document: ") + e.what(), 0);
  }
  if (!doc.is_object()) throw ParseError("fit document must be a JSON object", 0);
  auto number = [&](const char* key, bool required) {
    if (!doc.contains(key)) {
      if (required) throw ParseError(std::string("fit document is missing '") + key + "'", 0);
      return key == std::string_view("l_infinity") ? 0.0 : kNaN;
    }
    const auto& v = doc[key];
    if (v.is_null()) return kNaN;
    if (!v.is_number()) throw ParseError(std::string("fit field '") + key + "' must be a number", 0);
    return v.get<double>();
  };
  PowerLawFit fit;
  fit.alpha = number("alpha", true);
  fit.beta = number("beta", true);
  fit.l_infinity = number("l_infinity", false);
  fit.r2_log = number("r2_log", false);
  fit.r2_linear = number("r2_linear", false);
  try {
    if (doc.contains("method")) fit.method = fit_method_from_string(doc["method"].get<std::string>());
    if (doc.contains("n_points")) fit.n_points = doc["n_points"].get<std::size_t>();
    if (doc.contains("degenerate")) fit.degenerate = doc["degenerate"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("fit document: ") + e.what(), 0);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), 0);
  }
  if (std::isnan(fit.alpha) || std::isnan(fit.beta)) {
    throw ParseError("fit document needs numeric alpha and beta", 0);
  }
  return fit;
}

}  // namespace asrscale
