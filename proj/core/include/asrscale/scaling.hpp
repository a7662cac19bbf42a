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

// Power-law scaling fits of error against a resource variable:
//   L(x) = l_infinity + beta * x^alpha
// with l_infinity = 0 for the plain form.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

namespace asrscale {

/// Budget in 1e15 FLOPs (or any positive scaling variable) and error in percent.
struct SamplePoint {
  double budget = 0.0;
  double error = 0.0;

  bool operator==(const SamplePoint&) const = default;
};

enum class FitMethod { kLogLogOls, kNonlinearLs };

std::string_view to_string(FitMethod method);
FitMethod fit_method_from_string(std::string_view text);

struct PowerLawFit {
  double alpha = 0.0;
  double beta = 0.0;
  double l_infinity = 0.0;
  FitMethod method = FitMethod::kLogLogOls;
  /// NaN when undefined (constant observations).
  double r2_log = 0.0;
  double r2_linear = 0.0;
  std::size_t n_points = 0;
  /// Observations carry no reducible error; alpha is 0 and R^2 is undefined.
  bool degenerate = false;
};

/// Fits the plain power law. Needs >= 2 points, positive budgets and errors,
/// and at least two distinct budgets; throws InvalidArgument otherwise.
PowerLawFit fit_power_law(std::span<const SamplePoint> points,
                          FitMethod method = FitMethod::kLogLogOls);

struct SaturatingFitConfig {
  std::size_t grid_size = 1000;
  /// Upper grid edge is min(error) * (1 - epsilon).
  double epsilon = 1e-3;
  /// Refine (l_infinity, beta, alpha) jointly in linear space after the grid.
  bool polish = true;
};

/// Grid search over l_infinity, OLS in log space per candidate, then optional
/// nonlinear polish. Needs >= 3 points.
PowerLawFit fit_saturating_power_law(std::span<const SamplePoint> points,
                                     const SaturatingFitConfig& config = {});

/// l_infinity + beta * budget^alpha; throws InvalidArgument for budget <= 0.
double predict_error(const PowerLawFit& fit, double budget);

/// Budget at which the fit reaches `target_error`. Throws DomainError when
/// alpha >= 0 or target_error <= l_infinity.
double required_budget(const PowerLawFit& fit, double target_error);

enum class R2Space { kLog, kLinear };

struct RSquared {
  double value = 0.0;
  /// Points at or below l_infinity, excluded from the log-space sum.
  std::size_t skipped = 0;
  /// SS_tot was zero (or nothing left to score); value is NaN.
  bool degenerate = false;
};

RSquared r_squared(const PowerLawFit& fit, std::span<const SamplePoint> points, R2Space space);

/// `{alpha, beta, l_infinity, method, r2_log, r2_linear, n_points}`, numbers at
/// round-trip precision; undefined R^2 serializes as null.
std::string to_json(const PowerLawFit& fit);
/// Throws ParseError on malformed documents.
PowerLawFit power_law_fit_from_json(std::string_view text);

}  // namespace asrscale
