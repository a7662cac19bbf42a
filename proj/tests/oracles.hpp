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

// Reference implementations used only by tests. They follow the textbook
// definitions directly and share no code with the library.

#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace asrscale::oracle {

// Shortest edit script by exhaustive recursion over delete / insert /
// substitute-or-match of the leading characters, memoized on suffix pairs.
inline std::size_t edit_distance(const std::u32string& a, const std::u32string& b) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> std::size_t {
    if (i == a.size()) return b.size() - j;
    if (j == b.size()) return a.size() - i;
    if (auto it = memo.find({i, j}); it != memo.end()) return it->second;
    std::size_t best = self(self, i + 1, j) + 1;
    best = std::min(best, self(self, i, j + 1) + 1);
    best = std::min(best, self(self, i + 1, j + 1) + (a[i] == b[j] ? 0 : 1));
    memo[{i, j}] = best;
    return best;
  };
  return rec(rec, 0, 0);
}

struct HandOls {
  double slope;
  double intercept;
};

// Normal equations written out with raw sums.
inline HandOls ols(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

// alpha, beta of error = beta * budget^alpha by OLS in log space.
inline std::pair<double, double> loglog_fit(const std::vector<std::pair<double, double>>& pts) {
  std::vector<double> x, y;
  for (const auto& [c, l] : pts) {
    x.push_back(std::log(c));
    y.push_back(std::log(l));
  }
  const HandOls f = ols(x, y);
  return {f.slope, std::exp(f.intercept)};
}

struct Outcome {
  double flops;
  double cer;
};

// Indices of outcomes that no other outcome dominates (pairwise check).
inline std::vector<std::size_t> non_dominated(const std::vector<Outcome>& v) {
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < v.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < v.size() && !dominated; ++j) {
      const bool weak = v[j].flops <= v[i].flops && v[j].cer <= v[i].cer;
      const bool strict = v[j].flops < v[i].flops || v[j].cer < v[i].cer;
      dominated = weak && strict;
    }
    if (!dominated) keep.push_back(i);
  }
  return keep;
}

// First index whose trailing-window relative improvement is below threshold.
inline std::optional<std::size_t> convergence_scan(const std::vector<double>& cer, std::size_t window,
                                                   double threshold) {
  for (std::size_t i = 0; i < cer.size(); ++i) {
    if (i + 1 < window) continue;
    const double first = cer[i + 1 - window];
    if ((first - cer[i]) / first < threshold) return i;
  }
  return std::nullopt;
}

}  // namespace asrscale::oracle
