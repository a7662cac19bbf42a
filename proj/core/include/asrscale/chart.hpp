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

// Self-contained SVG scatter/line charts of (budget, error) series and fits.

#pragma once

#include <string>
#include <vector>

#include "asrscale/scaling.hpp"

namespace asrscale {

enum class ChartAxes { kLinear, kLogLog };

struct ChartSeries {
  std::string label;
  std::vector<SamplePoint> points;
};

struct ChartFit {
  std::string label;
  PowerLawFit fit;
};

struct ChartSpec {
  std::vector<ChartSeries> series;
  std::vector<ChartFit> fits;
  ChartAxes axes = ChartAxes::kLogLog;
  std::string title;
  /// Destination used by the CLI; render_chart ignores it.
  std::string output_path;
};

/// Number of budgets each fit curve is sampled at.
inline constexpr int kFitSamples = 200;

/// Maps data coordinates to SVG pixels for a given spec.
class ChartGeometry {
 public:
  explicit ChartGeometry(const ChartSpec& spec);

  double to_pixel_x(double budget) const;
  double to_pixel_y(double error) const;
  double from_pixel_x(double px) const;
  double from_pixel_y(double py) const;

  double data_x_min() const { return x_lo_; }
  double data_x_max() const { return x_hi_; }

  static constexpr double kWidth = 1000.0;
  static constexpr double kHeight = 520.0;
  static constexpr double kLeft = 80.0;
  static constexpr double kRight = 620.0;
  static constexpr double kTop = 50.0;
  static constexpr double kBottom = 460.0;

 private:
  double forward(double v) const;
  double inverse(double v) const;

  bool log_;
  double x_lo_, x_hi_;  // data range of the samples
  double ax_lo_, ax_hi_, ay_lo_, ay_hi_;  // padded, in transformed space
};

/// Throws InvalidArgument without any series and DomainError when log-log
/// axes meet a non-positive value. Output is byte-identical for equal specs.
std::string render_chart(const ChartSpec& spec);

}  // namespace asrscale
