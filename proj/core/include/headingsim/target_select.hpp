#pragma once

#include <optional>

#include "headingsim/detect.hpp"
#include "headingsim/geom.hpp"

namespace hsim {

// Picks the detection to act on: largest box area among detections at or
// above conf_threshold. Ties go to the box center closest to the image
// center horizontally, then to input order. Returns nullopt when nothing
// clears the threshold.
std::optional<Detection> select_target(const std::vector<Detection>& dets,
                                       double conf_threshold,
                                       const CameraModel& cam);

}  // namespace hsim
