#pragma once

#include <string>
#include <vector>

#include "headingsim/metrics.hpp"

namespace hsim {

// Self-contained SVG renderers. Output is a pure function of the inputs:
// identical data gives byte-identical markup.

struct Series {
  std::string label;
  std::vector<double> values;  // plotted against 0..n-1
};

// Line plot of one or more series against their index.
std::string render_series_svg(const std::vector<Series>& series,
                              const std::string& title,
                              const std::string& x_label,
                              const std::string& y_label);

// Scatter with the dashed y = x ideal line.
std::string render_scatter_svg(const std::vector<double>& xs,
                               const std::vector<double>& ys,
                               const std::string& title,
                               const std::string& x_label,
                               const std::string& y_label);

// Histogram bars with a solid mean line and a shaded 95% CI band.
std::string render_histogram_svg(const std::vector<HistogramBin>& bins,
                                 double mean, double ci_half_width,
                                 const std::string& title,
                                 const std::string& x_label);

}  // namespace hsim
