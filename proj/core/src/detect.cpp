#include "headingsim/detect.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "headingsim/errors.hpp"

namespace hsim {

namespace {

// Clips one box to the frame; returns false when nothing usable is left.
bool clip_box(BBox& b, double frame_w, double frame_h) {
  if (b.x1 > b.x2) std::swap(b.x1, b.x2);
  if (b.y1 > b.y2) std::swap(b.y1, b.y2);
  b.x1 = std::clamp(b.x1, 0.0, frame_w);
  b.x2 = std::clamp(b.x2, 0.0, frame_w);
  b.y1 = std::clamp(b.y1, 0.0, frame_h);
  b.y2 = std::clamp(b.y2, 0.0, frame_h);
  return b.x1 < b.x2 && b.y1 < b.y2;
}

}  // namespace

std::vector<Detection> simulate_detections(const std::vector<BBox>& true_boxes,
                                           const DetectorNoise& noise,
                                           double frame_w, double frame_h,
                                           RngStream& rng) {
  if (noise.miss_prob < 0.0 || noise.miss_prob > 1.0) {
    throw DomainError("simulate_detections: miss_prob outside [0, 1]");
  }
  if (noise.corner_sigma < 0.0 || noise.false_positive_rate < 0.0) {
    throw DomainError("simulate_detections: negative noise parameter");
  }
  if (noise.conf_lo > noise.conf_hi || noise.conf_lo < 0.0 ||
      noise.conf_hi > 1.0) {
    throw DomainError("simulate_detections: bad confidence range");
  }

  std::vector<Detection> out;
  out.reserve(true_boxes.size());
  for (const BBox& tb : true_boxes) {
    if (rng.next_unit() < noise.miss_prob) continue;
    BBox b = tb;
    if (noise.corner_sigma > 0.0) {
      b.x1 += rng.next_normal(0.0, noise.corner_sigma);
      b.y1 += rng.next_normal(0.0, noise.corner_sigma);
      b.x2 += rng.next_normal(0.0, noise.corner_sigma);
      b.y2 += rng.next_normal(0.0, noise.corner_sigma);
    }
    if (!clip_box(b, frame_w, frame_h)) continue;
    Detection d;
    d.bbox = b;
    d.confidence = rng.next_uniform(noise.conf_lo, noise.conf_hi);
    out.push_back(d);
  }

  const int spurious = rng.next_poisson(noise.false_positive_rate);
  for (int i = 0; i < spurious; ++i) {
    BBox b;
    b.x1 = rng.next_uniform(0.0, frame_w);
    b.x2 = rng.next_uniform(0.0, frame_w);
    b.y1 = rng.next_uniform(0.0, frame_h);
    b.y2 = rng.next_uniform(0.0, frame_h);
    double conf = rng.next_uniform(noise.conf_lo, noise.conf_hi);
    if (!clip_box(b, frame_w, frame_h)) continue;
    Detection d;
    d.bbox = b;
    d.confidence = conf;
    out.push_back(d);
  }
  return out;
}

double iou(const BBox& a, const BBox& b) {
  const double ix1 = std::max(a.x1, b.x1);
  const double iy1 = std::max(a.y1, b.y1);
  const double ix2 = std::min(a.x2, b.x2);
  const double iy2 = std::min(a.y2, b.y2);
  const double iw = ix2 - ix1;
  const double ih = iy2 - iy1;
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  const double inter = iw * ih;
  const double uni = a.area() + b.area() - inter;
  if (uni <= 0.0) return 0.0;
  return inter / uni;
}

double average_precision(const std::vector<std::vector<Detection>>& detections,
                         const std::vector<std::vector<BBox>>& ground_truths,
                         double iou_thresh) {
  if (detections.size() != ground_truths.size()) {
    throw DomainError("average_precision: frame count mismatch");
  }

  std::size_t total_gts = 0;
  for (const auto& g : ground_truths) total_gts += g.size();
  std::size_t total_dets = 0;
  for (const auto& d : detections) total_dets += d.size();

  if (total_gts == 0) return total_dets == 0 ? 1.0 : 0.0;
  if (total_dets == 0) return 0.0;

  struct Entry {
    std::size_t frame;
    std::size_t index_in_frame;
    double confidence;
    double best_iou;  // against all same-frame ground truths, for tie breaks
    std::size_t order;
  };
  std::vector<Entry> entries;
  entries.reserve(total_dets);
  std::size_t order = 0;
  for (std::size_t f = 0; f < detections.size(); ++f) {
    for (std::size_t i = 0; i < detections[f].size(); ++i) {
      Entry e;
      e.frame = f;
      e.index_in_frame = i;
      e.confidence = detections[f][i].confidence;
      e.best_iou = 0.0;
      for (const BBox& g : ground_truths[f]) {
        e.best_iou = std::max(e.best_iou, iou(detections[f][i].bbox, g));
      }
      e.order = order++;
      entries.push_back(e);
    }
  }

  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.best_iou != b.best_iou) return a.best_iou > b.best_iou;
    return a.order < b.order;
  });

  std::vector<std::vector<bool>> gt_used(ground_truths.size());
  for (std::size_t f = 0; f < ground_truths.size(); ++f) {
    gt_used[f].assign(ground_truths[f].size(), false);
  }

  double ap = 0.0;
  double prev_recall = 0.0;
  std::size_t tp = 0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Entry& e = entries[k];
    const BBox& db = detections[e.frame][e.index_in_frame].bbox;
    double best = -1.0;
    std::size_t best_gt = 0;
    bool found = false;
    for (std::size_t g = 0; g < ground_truths[e.frame].size(); ++g) {
      if (gt_used[e.frame][g]) continue;
      const double v = iou(db, ground_truths[e.frame][g]);
      if (v >= iou_thresh && v > best) {
        best = v;
        best_gt = g;
        found = true;
      }
    }
    if (found) {
      gt_used[e.frame][best_gt] = true;
      ++tp;
      const double recall = static_cast<double>(tp) / static_cast<double>(total_gts);
      const double precision = static_cast<double>(tp) / static_cast<double>(k + 1);
      ap += (recall - prev_recall) * precision;
      prev_recall = recall;
    }
  }
  return ap;
}

}  // namespace hsim
