#pragma once

#include <optional>

#include "headingsim/detect.hpp"

namespace hsim {

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// World frame: x/y on the floor plane, z up, yaw measured counterclockwise
// from +x when viewed from above.
struct Pose {
  double x = 0.0;    // m
  double y = 0.0;    // m
  double z = 0.0;    // m, >= 0 (floor at z = 0)
  double yaw = 0.0;  // rad, stored wrapped to (-pi, pi]
};

// Pinhole camera rigidly mounted on the UAV: optical axis along the UAV
// yaw, tilted down by pitch. Image origin top-left, u right, v down.
struct CameraModel {
  double focal_px = 320.0;  // 90 degree horizontal FOV at 640 px
  double cx = 320.0;
  double cy = 320.0;
  double width_px = 640.0;
  double height_px = 640.0;
  double pitch = 0.0;  // rad, positive tilts the view down
};

// Target footprint, a yaw-oriented box resting on the floor: length along
// the vehicle yaw axis, width across it, height up from pose z.
struct UgvShape {
  double length = 0.99;  // m
  double width = 0.67;   // m
  double height = 0.39;  // m
};

struct PixelPoint {
  double u = 0.0;
  double v = 0.0;
};

// Wraps an angle to (-pi, pi]. Throws DomainError on non-finite input.
double wrap_angle(double theta);

// Absolute bearing from `from` to `to` in the world frame, atan2 of the
// position difference. Throws DomainError when the ground positions
// coincide (bearing undefined).
double heading_true(const Pose& from, const Pose& to);

// Bearing of `target` relative to the observer's yaw, wrapped to (-pi, pi].
// Zero means dead ahead; positive means the target is to the left.
double relative_heading(const Pose& observer, const Pose& target);

// Projects a world point through the camera mounted on `uav`.
// Returns nullopt when the point is at or behind the image plane
// (depth <= depth_eps). A target left of the optical axis projects to
// u < cx; below it to v > cy.
std::optional<PixelPoint> project_point(const Pose& uav, const CameraModel& cam,
                                        double px, double py, double pz,
                                        double depth_eps = 1e-6);

// Projects the eight corners of the UGV body box and returns the
// axis-aligned hull of the in-front projections, clipped to the frame.
// Returns nullopt when fewer than four corners are in front of the camera
// or when the clipped box is degenerate (under one pixel in either
// dimension).
std::optional<BBox> project_ugv_bbox(const Pose& uav, const CameraModel& cam,
                                     const Pose& ugv, const UgvShape& shape,
                                     double depth_eps = 1e-6);

inline double deg_from_rad(double rad) { return rad * (180.0 / kPi); }
inline double rad_from_deg(double deg) { return deg * (kPi / 180.0); }

}  // namespace hsim
