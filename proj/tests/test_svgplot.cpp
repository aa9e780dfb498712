#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "headingsim/errors.hpp"
#include "headingsim/metrics.hpp"
#include "headingsim/svgplot.hpp"

using namespace hsim;

namespace {

int count_of(const std::string& hay, const std::string& needle) {
  int n = 0;
  std::size_t pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

}  // namespace

TEST_CASE("series plot structure") {
  const std::vector<Series> series{{"train", {1.0, 0.5, 0.25, 0.125}},
                                   {"val", {1.1, 0.6, 0.3, 0.2}}};
  const std::string svg = render_series_svg(series, "loss", "epoch", "mse");
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(count_of(svg, "<polyline") == 2);
  CHECK(svg.find("loss") != std::string::npos);
  CHECK(svg.find("epoch") != std::string::npos);
  CHECK(svg.find("train") != std::string::npos);
  CHECK(svg.find("val") != std::string::npos);

  // Pure function of the inputs.
  CHECK(render_series_svg(series, "loss", "epoch", "mse") == svg);
  CHECK(render_series_svg(series, "other", "epoch", "mse") != svg);
}

TEST_CASE("scatter plot carries every point and the ideal line") {
  std::vector<double> xs, ys;
  for (int i = 0; i < 25; ++i) {
    xs.push_back(0.1 * i - 1.0);
    ys.push_back(0.1 * i - 1.0);
  }
  const std::string svg = render_scatter_svg(xs, ys, "pred", "true", "model");
  CHECK(count_of(svg, "<circle") == 25);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(render_scatter_svg(xs, ys, "pred", "true", "model") == svg);
}

TEST_CASE("histogram renders bars, mean and band") {
  const auto bins = bin_histogram({0.1, 0.2, 0.25, 0.7, 1.4}, 0.25);
  const std::string svg =
      render_histogram_svg(bins, 0.53, 0.12, "spread", "deg");
  CHECK(count_of(svg, "<rect") >= static_cast<int>(bins.size()));
  CHECK(svg.find("spread") != std::string::npos);
  CHECK(render_histogram_svg(bins, 0.53, 0.12, "spread", "deg") == svg);
}

TEST_CASE("markup escapes reserved characters") {
  const std::vector<Series> series{{"a<b>&c", {1.0, 2.0}}};
  const std::string svg = render_series_svg(series, "t<&>", "x", "y");
  CHECK(svg.find("a<b>&c") == std::string::npos);
  CHECK(svg.find("&lt;") != std::string::npos);
  CHECK(svg.find("&amp;") != std::string::npos);
}

TEST_CASE("empty inputs are rejected") {
  CHECK_THROWS_AS(render_series_svg({}, "t", "x", "y"), DomainError);
  CHECK_THROWS_AS(render_series_svg({{"a", {}}}, "t", "x", "y"), DomainError);
  CHECK_THROWS_AS(render_scatter_svg({}, {}, "t", "x", "y"), DomainError);
  CHECK_THROWS_AS(render_scatter_svg({1.0}, {1.0, 2.0}, "t", "x", "y"),
                  DomainError);
  CHECK_THROWS_AS(render_histogram_svg({}, 0.0, 0.0, "t", "x"), DomainError);
}
