#include "headingsim/features.hpp"

#include "headingsim/errors.hpp"

namespace hsim {

FeatureVec extract_features(const BBox& box, const CameraModel& cam) {
  const double w = box.x2 - box.x1;
  const double h = box.y2 - box.y1;
  if (w <= 0.0 || h <= 0.0) {
    throw DomainError("extract_features: degenerate box");
  }
  FeatureVec f;
  f.cx = (box.x1 + box.x2) / (2.0 * cam.width_px);
  f.cy = (box.y1 + box.y2) / (2.0 * cam.height_px);
  f.area = (w * h) / (cam.width_px * cam.height_px);
  f.aspect = h / w;
  return f;
}

}  // namespace hsim
