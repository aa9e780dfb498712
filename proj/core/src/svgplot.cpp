#include "headingsim/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "headingsim/errors.hpp"

namespace hsim {

namespace {

constexpr double kW = 800.0, kH = 500.0;
constexpr double kLeft = 64.0, kRight = 24.0, kTop = 40.0, kBottom = 48.0;
constexpr double kPlotW = kW - kLeft - kRight;
constexpr double kPlotH = kH - kTop - kBottom;

const char* kSeriesColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

std::string num(double v, const char* fmt = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string tick_label(double v) { return num(v, "%.4g"); }

struct Range {
  double lo = 0.0, hi = 1.0;

  void widen_if_flat() {
    if (hi <= lo) {
      hi = lo + 1.0;
      lo = lo - 1.0;
    }
  }
  double frac(double v) const { return (v - lo) / (hi - lo); }
};

Range span_of(const std::vector<double>& vs) {
  Range r;
  r.lo = *std::min_element(vs.begin(), vs.end());
  r.hi = *std::max_element(vs.begin(), vs.end());
  r.widen_if_flat();
  return r;
}

double px_x(const Range& r, double v) { return kLeft + r.frac(v) * kPlotW; }
double px_y(const Range& r, double v) {
  return kTop + (1.0 - r.frac(v)) * kPlotH;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

void open_svg(std::string& s, const std::string& title) {
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kW, "%.0f") +
       "\" height=\"" + num(kH, "%.0f") + "\" viewBox=\"0 0 " +
       num(kW, "%.0f") + " " + num(kH, "%.0f") + "\">\n";
  s += "<rect width=\"" + num(kW, "%.0f") + "\" height=\"" + num(kH, "%.0f") +
       "\" fill=\"white\"/>\n";
  s += "<text x=\"" + num(kW / 2.0) +
       "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"16\">" +
       escape_xml(title) + "</text>\n";
}

void axes_and_ticks(std::string& s, const Range& rx, const Range& ry,
                    const std::string& x_label, const std::string& y_label) {
  s += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" +
       num(kPlotW) + "\" height=\"" + num(kPlotH) +
       "\" fill=\"none\" stroke=\"#333\"/>\n";
  const int kTicks = 5;
  for (int i = 0; i < kTicks; ++i) {
    const double f = static_cast<double>(i) / (kTicks - 1);
    const double xv = rx.lo + f * (rx.hi - rx.lo);
    const double yv = ry.lo + f * (ry.hi - ry.lo);
    const double xp = kLeft + f * kPlotW;
    const double yp = kTop + (1.0 - f) * kPlotH;
    s += "<line x1=\"" + num(xp) + "\" y1=\"" + num(kTop + kPlotH) +
         "\" x2=\"" + num(xp) + "\" y2=\"" + num(kTop + kPlotH + 5.0) +
         "\" stroke=\"#333\"/>\n";
    s += "<text x=\"" + num(xp) + "\" y=\"" + num(kTop + kPlotH + 20.0) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"11\">" +
         tick_label(xv) + "</text>\n";
    s += "<line x1=\"" + num(kLeft - 5.0) + "\" y1=\"" + num(yp) +
         "\" x2=\"" + num(kLeft) + "\" y2=\"" + num(yp) +
         "\" stroke=\"#333\"/>\n";
    s += "<text x=\"" + num(kLeft - 9.0) + "\" y=\"" + num(yp + 4.0) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" "
         "font-size=\"11\">" +
         tick_label(yv) + "</text>\n";
  }
  s += "<text x=\"" + num(kLeft + kPlotW / 2.0) + "\" y=\"" +
       num(kH - 8.0) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"13\">" +
       escape_xml(x_label) + "</text>\n";
  s += "<text x=\"16\" y=\"" + num(kTop + kPlotH / 2.0) +
       "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"13\" transform=\"rotate(-90 16 " +
       num(kTop + kPlotH / 2.0) + ")\">" +
       escape_xml(y_label) + "</text>\n";
}

}  // namespace

std::string render_series_svg(const std::vector<Series>& series,
                              const std::string& title,
                              const std::string& x_label,
                              const std::string& y_label) {
  if (series.empty()) throw DomainError("render_series_svg: no series");
  std::size_t max_n = 0;
  Range ry;
  bool first = true;
  for (const Series& sr : series) {
    if (sr.values.empty()) throw DomainError("render_series_svg: empty series");
    max_n = std::max(max_n, sr.values.size());
    const Range r = span_of(sr.values);
    if (first) {
      ry = r;
      first = false;
    } else {
      ry.lo = std::min(ry.lo, r.lo);
      ry.hi = std::max(ry.hi, r.hi);
    }
  }
  ry.widen_if_flat();
  Range rx{0.0, static_cast<double>(max_n > 1 ? max_n - 1 : 1)};

  std::string s;
  open_svg(s, title);
  axes_and_ticks(s, rx, ry, x_label, y_label);
  for (std::size_t si = 0; si < series.size(); ++si) {
    const char* color = kSeriesColors[si % 4];
    s += "<polyline fill=\"none\" stroke=\"";
    s += color;
    s += "\" stroke-width=\"1.5\" points=\"";
    const auto& vs = series[si].values;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      if (i) s += ' ';
      s += num(px_x(rx, static_cast<double>(i))) + ',' + num(px_y(ry, vs[i]));
    }
    s += "\"/>\n";
    if (!series[si].label.empty()) {
      const double ly = kTop + 16.0 + 16.0 * static_cast<double>(si);
      s += "<line x1=\"" + num(kLeft + kPlotW - 150.0) + "\" y1=\"" +
           num(ly - 4.0) + "\" x2=\"" + num(kLeft + kPlotW - 126.0) +
           "\" y2=\"" + num(ly - 4.0) + "\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
      s += "<text x=\"" + num(kLeft + kPlotW - 120.0) + "\" y=\"" + num(ly) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape_xml(series[si].label) + "</text>\n";
    }
  }
  s += "</svg>\n";
  return s;
}

std::string render_scatter_svg(const std::vector<double>& xs,
                               const std::vector<double>& ys,
                               const std::string& title,
                               const std::string& x_label,
                               const std::string& y_label) {
  if (xs.empty() || xs.size() != ys.size()) {
    throw DomainError("render_scatter_svg: empty or mismatched inputs");
  }
  Range rx = span_of(xs);
  Range ry = span_of(ys);
  // Shared square range keeps the ideal line at 45 degrees.
  Range r{std::min(rx.lo, ry.lo), std::max(rx.hi, ry.hi)};
  r.widen_if_flat();

  std::string s;
  open_svg(s, title);
  axes_and_ticks(s, r, r, x_label, y_label);
  s += "<line x1=\"" + num(px_x(r, r.lo)) + "\" y1=\"" + num(px_y(r, r.lo)) +
       "\" x2=\"" + num(px_x(r, r.hi)) + "\" y2=\"" + num(px_y(r, r.hi)) +
       "\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    s += "<circle cx=\"" + num(px_x(r, xs[i])) + "\" cy=\"" +
         num(px_y(r, ys[i])) +
         "\" r=\"2.5\" fill=\"#1f77b4\" fill-opacity=\"0.6\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

std::string render_histogram_svg(const std::vector<HistogramBin>& bins,
                                 double mean, double ci_half_width,
                                 const std::string& title,
                                 const std::string& x_label) {
  if (bins.empty()) throw DomainError("render_histogram_svg: no bins");
  long long max_count = 0;
  for (const HistogramBin& b : bins) max_count = std::max(max_count, b.count);
  Range rx{bins.front().lo, bins.back().hi};
  rx.widen_if_flat();
  Range ry{0.0, static_cast<double>(max_count > 0 ? max_count : 1)};

  std::string s;
  open_svg(s, title);
  axes_and_ticks(s, rx, ry, x_label, "count");
  if (ci_half_width > 0.0) {
    const double x1 = px_x(rx, std::max(rx.lo, mean - ci_half_width));
    const double x2 = px_x(rx, std::min(rx.hi, mean + ci_half_width));
    s += "<rect x=\"" + num(x1) + "\" y=\"" + num(kTop) + "\" width=\"" +
         num(x2 - x1) + "\" height=\"" + num(kPlotH) +
         "\" fill=\"#d62728\" fill-opacity=\"0.15\"/>\n";
  }
  for (const HistogramBin& b : bins) {
    if (b.count == 0) continue;
    const double x1 = px_x(rx, b.lo);
    const double x2 = px_x(rx, b.hi);
    const double y = px_y(ry, static_cast<double>(b.count));
    s += "<rect x=\"" + num(x1) + "\" y=\"" + num(y) + "\" width=\"" +
         num(x2 - x1) + "\" height=\"" + num(kTop + kPlotH - y) +
         "\" fill=\"#1f77b4\" stroke=\"white\" stroke-width=\"0.5\"/>\n";
  }
  if (mean >= rx.lo && mean <= rx.hi) {
    s += "<line x1=\"" + num(px_x(rx, mean)) + "\" y1=\"" + num(kTop) +
         "\" x2=\"" + num(px_x(rx, mean)) + "\" y2=\"" + num(kTop + kPlotH) +
         "\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace hsim
