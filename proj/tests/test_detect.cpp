#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "headingsim/detect.hpp"
#include "headingsim/errors.hpp"
#include "headingsim/rng.hpp"

using namespace hsim;

namespace {

constexpr double kFrame = 640.0;

// Independent AP oracle: enumerate every confidence cutoff (each prefix of
// the confidence-sorted list), redo the greedy matching from scratch on
// that subset, and accumulate the raw (R_k - R_{k-1}) * P_k sum. For
// scenes with distinct confidences this is the definition the production
// code must reproduce exactly.
double ap_cutoff_oracle(const std::vector<std::vector<Detection>>& dets,
                        const std::vector<std::vector<BBox>>& gts,
                        double thresh) {
  struct Ref {
    std::size_t frame, idx;
    double conf;
    std::size_t order;
  };
  std::vector<Ref> refs;
  std::size_t order = 0;
  for (std::size_t f = 0; f < dets.size(); ++f) {
    for (std::size_t i = 0; i < dets[f].size(); ++i) {
      refs.push_back({f, i, dets[f][i].confidence, order++});
    }
  }
  std::size_t total_gts = 0;
  for (const auto& g : gts) total_gts += g.size();
  if (total_gts == 0) return refs.empty() ? 1.0 : 0.0;
  if (refs.empty()) return 0.0;

  std::sort(refs.begin(), refs.end(), [](const Ref& a, const Ref& b) {
    if (a.conf != b.conf) return a.conf > b.conf;
    return a.order < b.order;
  });

  auto match_count = [&](std::size_t prefix) {
    std::vector<std::vector<bool>> used(gts.size());
    for (std::size_t f = 0; f < gts.size(); ++f) {
      used[f].assign(gts[f].size(), false);
    }
    std::size_t tp = 0;
    for (std::size_t k = 0; k < prefix; ++k) {
      const Ref& r = refs[k];
      double best = -1.0;
      std::size_t best_g = 0;
      bool found = false;
      for (std::size_t g = 0; g < gts[r.frame].size(); ++g) {
        if (used[r.frame][g]) continue;
        const double v = iou(dets[r.frame][r.idx].bbox, gts[r.frame][g]);
        if (v >= thresh && v > best) {
          best = v;
          best_g = g;
          found = true;
        }
      }
      if (found) {
        used[r.frame][best_g] = true;
        ++tp;
      }
    }
    return tp;
  };

  double ap = 0.0, prev_recall = 0.0;
  for (std::size_t k = 1; k <= refs.size(); ++k) {
    const std::size_t tp = match_count(k);
    const double recall =
        static_cast<double>(tp) / static_cast<double>(total_gts);
    const double precision = static_cast<double>(tp) / static_cast<double>(k);
    ap += (recall - prev_recall) * precision;
    prev_recall = recall;
  }
  return ap;
}

BBox rand_box(RngStream& rng) {
  const double x1 = rng.next_uniform(0.0, kFrame - 80.0);
  const double y1 = rng.next_uniform(0.0, kFrame - 80.0);
  BBox b;
  b.x1 = x1;
  b.y1 = y1;
  b.x2 = x1 + rng.next_uniform(10.0, 80.0);
  b.y2 = y1 + rng.next_uniform(10.0, 80.0);
  return b;
}

}  // namespace

TEST_CASE("iou worked values") {
  BBox a{0, 0, 10, 10};
  CHECK(iou(a, a) == 1.0);
  CHECK(iou(a, BBox{20, 20, 30, 30}) == 0.0);
  CHECK(iou(a, BBox{10, 0, 20, 10}) == 0.0);  // touching edges only
  // Overlap 50 of union 150.
  CHECK(iou(a, BBox{5, 0, 15, 10}) == 1.0 / 3.0);
}

TEST_CASE("iou symmetry and range") {
  RngStream rng(11);
  for (int i = 0; i < 500; ++i) {
    const BBox a = rand_box(rng);
    const BBox b = rand_box(rng);
    const double v = iou(a, b);
    CHECK(v == iou(b, a));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("average precision worked values") {
  const BBox g{100, 100, 200, 200};

  SUBCASE("single perfect detection") {
    std::vector<std::vector<Detection>> dets{{{g, 0.9}}};
    std::vector<std::vector<BBox>> gts{{g}};
    CHECK(average_precision(dets, gts, 0.5) == 1.0);
  }
  SUBCASE("false positive ranked above the hit") {
    std::vector<std::vector<Detection>> dets{
        {{BBox{400, 400, 500, 500}, 0.9}, {g, 0.8}}};
    std::vector<std::vector<BBox>> gts{{g}};
    CHECK(average_precision(dets, gts, 0.5) == 0.5);
  }
  SUBCASE("empty scene scores one, spurious-only scores zero") {
    std::vector<std::vector<Detection>> none{{}};
    std::vector<std::vector<BBox>> no_gts{{}};
    CHECK(average_precision(none, no_gts, 0.5) == 1.0);
    std::vector<std::vector<Detection>> only_fp{{{g, 0.9}}};
    CHECK(average_precision(only_fp, no_gts, 0.5) == 0.0);
    std::vector<std::vector<BBox>> gts{{g}};
    CHECK(average_precision(none, gts, 0.5) == 0.0);
  }
  SUBCASE("iou exactly at the threshold counts") {
    BBox gt{0, 0, 10, 10};
    BBox det{0, 5, 10, 15};  // overlap 50, union 150
    std::vector<std::vector<Detection>> dets{{{det, 0.9}}};
    std::vector<std::vector<BBox>> gts{{gt}};
    CHECK(average_precision(dets, gts, 1.0 / 3.0) == 1.0);
    CHECK(average_precision(dets, gts, 0.34) == 0.0);
  }
  SUBCASE("confidence ties break toward the better overlap") {
    // The weak-overlap detection comes first in input order; with the tie
    // broken by IoU the exact hit is processed first and AP stays 1.
    std::vector<std::vector<Detection>> dets{
        {{BBox{0, 105, 100, 205}, 0.5}, {g, 0.5}}};
    std::vector<std::vector<BBox>> gts{{g}};
    CHECK(average_precision(dets, gts, 0.5) == 1.0);
  }
  SUBCASE("matches stay within their own frame") {
    std::vector<std::vector<Detection>> dets{{}, {{g, 0.9}}};
    std::vector<std::vector<BBox>> gts{{g}, {}};
    CHECK(average_precision(dets, gts, 0.5) == 0.0);
  }
}

TEST_CASE("average precision equals the cutoff enumeration oracle") {
  RngStream rng(12345);
  for (int scene = 0; scene < 60; ++scene) {
    const std::size_t frames = 1 + rng.next_below(4);
    std::vector<std::vector<BBox>> gts(frames);
    std::vector<std::vector<Detection>> dets(frames);
    for (std::size_t f = 0; f < frames; ++f) {
      const std::size_t n_gt = rng.next_below(4);
      for (std::size_t g = 0; g < n_gt; ++g) {
        const BBox gt = rand_box(rng);
        gts[f].push_back(gt);
        if (rng.next_unit() < 0.8) {
          BBox d = gt;
          const double dx = rng.next_uniform(-15.0, 15.0);
          const double dy = rng.next_uniform(-15.0, 15.0);
          d.x1 += dx;
          d.x2 += dx;
          d.y1 += dy;
          d.y2 += dy;
          dets[f].push_back({d, rng.next_unit()});
        }
      }
      const std::size_t n_fp = rng.next_below(3);
      for (std::size_t i = 0; i < n_fp; ++i) {
        dets[f].push_back({rand_box(rng), rng.next_unit()});
      }
    }
    const double got = average_precision(dets, gts, 0.5);
    const double want = ap_cutoff_oracle(dets, gts, 0.5);
    CHECK(got == want);
  }
}

TEST_CASE("average precision ignores monotone confidence rescaling") {
  RngStream rng(777);
  for (int scene = 0; scene < 20; ++scene) {
    std::vector<std::vector<BBox>> gts(3);
    std::vector<std::vector<Detection>> dets(3);
    for (std::size_t f = 0; f < 3; ++f) {
      for (int g = 0; g < 3; ++g) {
        const BBox gt = rand_box(rng);
        gts[f].push_back(gt);
        BBox d = gt;
        d.x1 += rng.next_uniform(-20.0, 20.0);
        d.y2 += rng.next_uniform(-20.0, 20.0);
        if (d.x1 >= d.x2 || d.y1 >= d.y2) d = gt;
        dets[f].push_back({d, rng.next_unit()});
      }
    }
    auto rescaled = dets;
    for (auto& frame : rescaled) {
      for (auto& d : frame) {
        d.confidence = 0.05 + 0.9 * d.confidence * d.confidence;
      }
    }
    CHECK(average_precision(dets, gts, 0.5) ==
          average_precision(rescaled, gts, 0.5));
  }
}

TEST_CASE("noiseless detector is the identity") {
  DetectorNoise noise;  // all zeros, conf range [1, 1]
  std::vector<BBox> boxes{{100, 120, 300, 260}, {10, 10, 40, 70}};
  RngStream rng(1);
  const auto dets = simulate_detections(boxes, noise, kFrame, kFrame, rng);
  REQUIRE(dets.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(dets[i].bbox.x1 == boxes[i].x1);
    CHECK(dets[i].bbox.y1 == boxes[i].y1);
    CHECK(dets[i].bbox.x2 == boxes[i].x2);
    CHECK(dets[i].bbox.y2 == boxes[i].y2);
    CHECK(dets[i].confidence == 1.0);
  }
}

TEST_CASE("certain miss yields nothing") {
  DetectorNoise noise;
  noise.miss_prob = 1.0;
  std::vector<BBox> boxes{{100, 120, 300, 260}};
  RngStream rng(2);
  CHECK(simulate_detections(boxes, noise, kFrame, kFrame, rng).empty());
}

TEST_CASE("corner jitter has the folded-normal mean") {
  // |N(0, sigma)| has mean sigma * sqrt(2 / pi); Monte Carlo against the
  // closed form with a box far from the frame edges.
  DetectorNoise noise;
  noise.corner_sigma = 2.0;
  noise.conf_lo = 0.5;
  noise.conf_hi = 1.0;
  const BBox box{200, 200, 400, 400};
  RngStream rng(42);
  double sum = 0.0;
  long long n = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const auto dets = simulate_detections({box}, noise, kFrame, kFrame, rng);
    REQUIRE(dets.size() == 1);
    sum += std::abs(dets[0].bbox.x1 - box.x1) +
           std::abs(dets[0].bbox.y1 - box.y1) +
           std::abs(dets[0].bbox.x2 - box.x2) +
           std::abs(dets[0].bbox.y2 - box.y2);
    n += 4;
    CHECK(dets[0].confidence >= 0.5);
    CHECK(dets[0].confidence <= 1.0);
  }
  const double pi = std::acos(-1.0);
  const double expect = 2.0 * std::sqrt(2.0 / pi);
  CHECK(sum / static_cast<double>(n) ==
        doctest::Approx(expect).epsilon(0.05));
}

TEST_CASE("spurious detections arrive at the configured rate") {
  DetectorNoise noise;
  noise.miss_prob = 1.0;  // isolate the false positives
  noise.false_positive_rate = 1.5;
  noise.conf_lo = 0.3;
  noise.conf_hi = 0.9;
  const BBox box{100, 100, 200, 200};
  RngStream rng(7);
  long long total = 0;
  for (int trial = 0; trial < 5000; ++trial) {
    const auto dets = simulate_detections({box}, noise, kFrame, kFrame, rng);
    total += static_cast<long long>(dets.size());
    for (const auto& d : dets) {
      CHECK(d.bbox.valid_in(kFrame, kFrame));
      CHECK(d.confidence >= 0.3);
      CHECK(d.confidence <= 0.9);
    }
  }
  CHECK(static_cast<double>(total) / 5000.0 ==
        doctest::Approx(1.5).epsilon(0.05));
}

TEST_CASE("heavy jitter never emits an invalid box") {
  DetectorNoise noise;
  noise.corner_sigma = 80.0;
  std::vector<BBox> boxes{{5, 5, 30, 30}, {610, 600, 635, 639}};
  RngStream rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    for (const auto& d : simulate_detections(boxes, noise, kFrame, kFrame, rng)) {
      CHECK(d.bbox.valid_in(kFrame, kFrame));
    }
  }
}

TEST_CASE("detector draws are reproducible") {
  DetectorNoise noise;
  noise.corner_sigma = 3.0;
  noise.miss_prob = 0.2;
  noise.false_positive_rate = 0.7;
  noise.conf_lo = 0.2;
  noise.conf_hi = 0.95;
  std::vector<BBox> boxes{{100, 100, 200, 200}, {300, 250, 420, 330}};
  RngStream a(5), b(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto da = simulate_detections(boxes, noise, kFrame, kFrame, a);
    const auto db = simulate_detections(boxes, noise, kFrame, kFrame, b);
    REQUIRE(da.size() == db.size());
    for (std::size_t i = 0; i < da.size(); ++i) {
      CHECK(da[i].bbox.x1 == db[i].bbox.x1);
      CHECK(da[i].bbox.y2 == db[i].bbox.y2);
      CHECK(da[i].confidence == db[i].confidence);
    }
  }
}

TEST_CASE("misses degrade average precision") {
  const double thresh = 0.5;
  DetectorNoise clean;
  clean.corner_sigma = 1.0;
  clean.conf_lo = 0.5;
  clean.conf_hi = 1.0;
  DetectorNoise lossy = clean;
  lossy.miss_prob = 0.5;

  double sum_clean = 0.0, sum_lossy = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::vector<BBox>> gts(5);
    RngStream scene_rng(1000 + trial);
    for (auto& frame : gts) {
      frame.push_back(rand_box(scene_rng));
      frame.push_back(rand_box(scene_rng));
    }
    std::vector<std::vector<Detection>> d_clean, d_lossy;
    RngStream rng_clean(2000 + trial), rng_lossy(2000 + trial);
    for (const auto& frame : gts) {
      d_clean.push_back(
          simulate_detections(frame, clean, kFrame, kFrame, rng_clean));
      d_lossy.push_back(
          simulate_detections(frame, lossy, kFrame, kFrame, rng_lossy));
    }
    sum_clean += average_precision(d_clean, gts, thresh);
    sum_lossy += average_precision(d_lossy, gts, thresh);
  }
  CHECK(sum_clean / 100.0 >= sum_lossy / 100.0);
  CHECK(sum_clean / 100.0 > 0.9);
}

TEST_CASE("noise parameter validation") {
  std::vector<BBox> boxes{{100, 100, 200, 200}};
  RngStream rng(1);
  DetectorNoise bad;
  bad.miss_prob = 1.5;
  CHECK_THROWS_AS(simulate_detections(boxes, bad, kFrame, kFrame, rng),
                  DomainError);
  bad = DetectorNoise{};
  bad.conf_lo = 0.9;
  bad.conf_hi = 0.1;
  CHECK_THROWS_AS(simulate_detections(boxes, bad, kFrame, kFrame, rng),
                  DomainError);
  bad = DetectorNoise{};
  bad.corner_sigma = -1.0;
  CHECK_THROWS_AS(simulate_detections(boxes, bad, kFrame, kFrame, rng),
                  DomainError);
}
