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

#include "asrscale/chart.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "asrscale/csv.hpp"
#include "asrscale/error.hpp"

namespace asrscale {
namespace {

constexpr std::array kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                 "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string px(double v) { return fmt::format("{:.2f}", v); }

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

double nice_step(double range) {
  const double raw = range / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

std::vector<double> linear_ticks(double lo, double hi) {
  std::vector<double> ticks;
  if (!(hi > lo)) return {lo};
  const double step = nice_step(hi - lo);
  for (double t = std::ceil(lo / step) * step; t <= hi + step * 1e-9; t += step) {
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {  // bounds in linear values
  std::vector<double> all, decades;
  for (int k = static_cast<int>(std::floor(std::log10(lo))); k <= static_cast<int>(std::ceil(std::log10(hi))); ++k) {
    for (double m : {1.0, 2.0, 5.0}) {
      const double t = m * std::pow(10.0, k);
      if (t >= lo * (1 - 1e-12) && t <= hi * (1 + 1e-12)) {
        all.push_back(t);
        if (m == 1.0) decades.push_back(t);
      }
    }
  }
  if (all.size() > 8 && decades.size() >= 2) return decades;
  if (all.size() >= 2) return all;
  return linear_ticks(lo, hi);
}

std::vector<double> fit_budgets(const ChartGeometry& g, bool log) {
  std::vector<double> xs;
  xs.reserve(kFitSamples);
  const double lo = g.data_x_min(), hi = g.data_x_max();
  for (int i = 0; i < kFitSamples; ++i) {
    const double t = static_cast<double>(i) / (kFitSamples - 1);
    xs.push_back(log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                     : lo + t * (hi - lo));
  }
  return xs;
}

void validate_spec(const ChartSpec& spec) {
  const bool any_points = std::any_of(spec.series.begin(), spec.series.end(),
                                      [](const ChartSeries& s) { return !s.points.empty(); });
  if (!any_points) throw InvalidArgument("no series");
  for (const ChartSeries& s : spec.series) {
    for (const SamplePoint& p : s.points) {
      if (!std::isfinite(p.budget) || !std::isfinite(p.error)) {
        throw DomainError("chart values must be finite");
      }
      if (spec.axes == ChartAxes::kLogLog && (p.budget <= 0.0 || p.error <= 0.0)) {
        throw DomainError("log-log axes need positive values (series '" + s.label + "')");
      }
    }
  }
}

}  // namespace

ChartGeometry::ChartGeometry(const ChartSpec& spec) : log_(spec.axes == ChartAxes::kLogLog) {
  validate_spec(spec);
  x_lo_ = std::numeric_limits<double>::infinity();
  x_hi_ = -x_lo_;
  double y_lo = x_lo_, y_hi = -x_lo_;
  for (const ChartSeries& s : spec.series) {
    for (const SamplePoint& p : s.points) {
      x_lo_ = std::min(x_lo_, p.budget);
      x_hi_ = std::max(x_hi_, p.budget);
      y_lo = std::min(y_lo, p.error);
      y_hi = std::max(y_hi, p.error);
    }
  }
  for (const ChartFit& f : spec.fits) {
    for (double x : fit_budgets(*this, log_)) {
      const double y = predict_error(f.fit, x);
      if (!std::isfinite(y) || (log_ && y <= 0.0)) {
        throw DomainError("fit '" + f.label + "' leaves the plottable range");
      }
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  auto pad = [](double lo, double hi, double& out_lo, double& out_hi) {
    double span = hi - lo;
    if (span <= 0.0) span = std::max(std::abs(lo), 1.0) * 0.1;
    out_lo = lo - 0.05 * span;
    out_hi = hi + 0.05 * span;
  };
  pad(forward(x_lo_), forward(x_hi_), ax_lo_, ax_hi_);
  pad(forward(y_lo), forward(y_hi), ay_lo_, ay_hi_);
}

double ChartGeometry::forward(double v) const { return log_ ? std::log10(v) : v; }
double ChartGeometry::inverse(double v) const { return log_ ? std::pow(10.0, v) : v; }

double ChartGeometry::to_pixel_x(double budget) const {
  return kLeft + (forward(budget) - ax_lo_) / (ax_hi_ - ax_lo_) * (kRight - kLeft);
}
double ChartGeometry::to_pixel_y(double error) const {
  return kBottom - (forward(error) - ay_lo_) / (ay_hi_ - ay_lo_) * (kBottom - kTop);
}
double ChartGeometry::from_pixel_x(double p) const {
  return inverse(ax_lo_ + (p - kLeft) / (kRight - kLeft) * (ax_hi_ - ax_lo_));
}
double ChartGeometry::from_pixel_y(double p) const {
  return inverse(ay_lo_ + (kBottom - p) / (kBottom - kTop) * (ay_hi_ - ay_lo_));
}

std::string render_chart(const ChartSpec& spec) {
  const ChartGeometry g(spec);
  const bool log = spec.axes == ChartAxes::kLogLog;
  using G = ChartGeometry;

  std::string svg;
  svg += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n",
      G::kWidth, G::kHeight);
  svg += fmt::format("<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
                     G::kWidth, G::kHeight);
  if (!spec.title.empty()) {
    svg += fmt::format("<text class=\"title\" x=\"{}\" y=\"28\" text-anchor=\"middle\" "
                       "font-size=\"16\">{}</text>\n",
                       px((G::kLeft + G::kRight) / 2), xml_escape(spec.title));
  }

  // Axes frame and ticks.
  svg += fmt::format("<rect class=\"frame\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" "
                     "fill=\"none\" stroke=\"#333\"/>\n",
                     px(G::kLeft), px(G::kTop), px(G::kRight - G::kLeft), px(G::kBottom - G::kTop));
  const double x_lo = g.from_pixel_x(G::kLeft), x_hi = g.from_pixel_x(G::kRight);
  const double y_lo = g.from_pixel_y(G::kBottom), y_hi = g.from_pixel_y(G::kTop);
  for (double t : log ? log_ticks(x_lo, x_hi) : linear_ticks(x_lo, x_hi)) {
    const double x = g.to_pixel_x(t);
    svg += fmt::format("<line class=\"tick\" x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#333\"/>"
                       "<text x=\"{0}\" y=\"{3}\" text-anchor=\"middle\">{4:.4g}</text>\n",
                       px(x), px(G::kBottom), px(G::kBottom + 5), px(G::kBottom + 20), t);
  }
  for (double t : log ? log_ticks(y_lo, y_hi) : linear_ticks(y_lo, y_hi)) {
    const double y = g.to_pixel_y(t);
    svg += fmt::format("<line class=\"tick\" x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"#333\"/>"
                       "<text x=\"{3}\" y=\"{4}\" text-anchor=\"end\">{5:.4g}</text>\n",
                       px(G::kLeft - 5), px(y), px(G::kLeft), px(G::kLeft - 8), px(y + 4), t);
  }
  svg += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">Compute (x1e15 FLOPs){}</text>\n",
                     px((G::kLeft + G::kRight) / 2), px(G::kBottom + 42), log ? ", log scale" : "");
  svg += fmt::format("<text x=\"20\" y=\"{0}\" text-anchor=\"middle\" "
                     "transform=\"rotate(-90 20 {0})\">CER (%){1}</text>\n",
                     px((G::kTop + G::kBottom) / 2), log ? ", log scale" : "");

  // Fit curves.
  for (std::size_t i = 0; i < spec.fits.size(); ++i) {
    const ChartFit& f = spec.fits[i];
    std::string d;
    for (double x : fit_budgets(g, log)) {
      d += fmt::format("{}{} {}", d.empty() ? "M" : " L", px(g.to_pixel_x(x)),
                       px(g.to_pixel_y(predict_error(f.fit, x))));
    }
    svg += fmt::format("<path class=\"fit\" data-label=\"{}\" d=\"{}\" fill=\"none\" stroke=\"{}\" "
                       "stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n",
                       xml_escape(f.label), d, kPalette[i % kPalette.size()]);
  }

  // Sample markers.
  for (std::size_t i = 0; i < spec.series.size(); ++i) {
    const ChartSeries& s = spec.series[i];
    for (const SamplePoint& p : s.points) {
      svg += fmt::format("<circle class=\"marker\" data-series=\"{}\" data-x=\"{}\" data-y=\"{}\" "
                         "cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{}\"/>\n",
                         xml_escape(s.label), csv::format_number(p.budget),
                         csv::format_number(p.error), px(g.to_pixel_x(p.budget)),
                         px(g.to_pixel_y(p.error)), kPalette[i % kPalette.size()]);
    }
  }

  // Legend.
  double ly = G::kTop + 10;
  for (std::size_t i = 0; i < spec.series.size(); ++i, ly += 20) {
    svg += fmt::format("<rect class=\"legend-swatch\" x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"{}\"/>"
                       "<text x=\"{}\" y=\"{}\">{}</text>\n",
                       px(G::kRight + 20), px(ly - 9), kPalette[i % kPalette.size()],
                       px(G::kRight + 36), px(ly), xml_escape(spec.series[i].label));
  }
  for (std::size_t i = 0; i < spec.fits.size(); ++i, ly += 20) {
    const PowerLawFit& f = spec.fits[i].fit;
    const std::string formula =
        f.l_infinity > 0.0 ? fmt::format("L = {:.2f} + {:.2f} C^{:.3f}", f.l_infinity, f.beta, f.alpha)
                           : fmt::format("L = {:.2f} C^{:.3f}", f.beta, f.alpha);
    svg += fmt::format("<line class=\"legend-line\" x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" "
                       "stroke=\"{3}\" stroke-dasharray=\"6 3\"/><text x=\"{4}\" y=\"{5}\">{6}: {7}</text>\n",
                       px(G::kRight + 14), px(ly - 4), px(G::kRight + 32), kPalette[i % kPalette.size()],
                       px(G::kRight + 36), px(ly), xml_escape(spec.fits[i].label), xml_escape(formula));
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace asrscale
