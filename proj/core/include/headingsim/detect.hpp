#pragma once

#include <vector>

#include "headingsim/rng.hpp"

namespace hsim {

// Axis-aligned box in pixel coordinates, origin top-left, y down.
// Valid boxes satisfy 0 <= x1 < x2 <= frame width and likewise in y.
struct BBox {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  double width() const { return x2 - x1; }
  double height() const { return y2 - y1; }
  double area() const { return width() * height(); }
  bool valid_in(double frame_w, double frame_h) const {
    return x1 >= 0.0 && x1 < x2 && x2 <= frame_w && y1 >= 0.0 && y1 < y2 &&
           y2 <= frame_h;
  }
};

struct Detection {
  BBox bbox;
  double confidence = 1.0;  // in [0, 1]
};

// Noise model standing in for a real detector: Gaussian corner jitter,
// Bernoulli misses, Poisson-many spurious boxes, uniform confidences.
struct DetectorNoise {
  double corner_sigma = 0.0;        // px, applied per corner coordinate
  double miss_prob = 0.0;           // in [0, 1]
  double false_positive_rate = 0.0; // expected spurious boxes per frame
  double conf_lo = 1.0;             // confidence range [lo, hi]
  double conf_hi = 1.0;
};

// Simulates one frame of detections for the given true boxes.
//
// Each true box independently: dropped with miss_prob, otherwise every
// corner coordinate is perturbed by Normal(0, corner_sigma), corners are
// reordered if the perturbation swapped them, the box is clipped to the
// frame, and a confidence is drawn uniformly from [conf_lo, conf_hi].
// Then Poisson(false_positive_rate) spurious boxes are placed uniformly in
// the frame. Boxes degenerate after clipping (zero width or height) are
// dropped. Output order: surviving true boxes in input order, then
// spurious boxes. Deterministic given the stream state.
std::vector<Detection> simulate_detections(const std::vector<BBox>& true_boxes,
                                           const DetectorNoise& noise,
                                           double frame_w, double frame_h,
                                           RngStream& rng);

// Intersection over union of two boxes; 0 when disjoint.
double iou(const BBox& a, const BBox& b);

// Average precision at a single IoU threshold over a set of frames
// (detections and ground truths aligned by vector index).
//
// All detections are pooled and processed in order of descending
// confidence; ties are broken by higher best IoU against the same-frame
// ground truths, then by input order. A detection is a true positive if
// some unmatched same-frame ground truth has IoU >= iou_thresh (it matches
// the one with highest IoU). AP is the raw sum of (R_n - R_{n-1}) * P_n
// over that processing order; no interpolation is applied.
//
// With no ground truths and no detections the result is 1; with no ground
// truths and some detections it is 0.
double average_precision(const std::vector<std::vector<Detection>>& detections,
                         const std::vector<std::vector<BBox>>& ground_truths,
                         double iou_thresh);

}  // namespace hsim
