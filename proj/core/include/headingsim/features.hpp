#pragma once

#include "headingsim/geom.hpp"

namespace hsim {

// Normalized bounding box descriptor, the network input.
struct FeatureVec {
  double cx = 0.0;      // box center x / frame width, in (0, 1)
  double cy = 0.0;      // box center y / frame height, in (0, 1)
  double area = 0.0;    // box area / frame area, in (0, 1]
  double aspect = 0.0;  // box height / box width, > 0

  double operator[](int i) const {
    return i == 0 ? cx : i == 1 ? cy : i == 2 ? area : aspect;
  }
};

inline constexpr int kFeatureDim = 4;

// cx = (x1 + x2) / (2 W), cy = (y1 + y2) / (2 H),
// area = (x2 - x1)(y2 - y1) / (W H), aspect = (y2 - y1) / (x2 - x1).
// Throws DomainError on a degenerate box (zero width or height).
FeatureVec extract_features(const BBox& box, const CameraModel& cam);

}  // namespace hsim
