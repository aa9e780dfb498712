#include "headingsim/geom.hpp"

#include <algorithm>
#include <cmath>

#include "headingsim/errors.hpp"

namespace hsim {

double wrap_angle(double theta) {
  if (!std::isfinite(theta)) throw DomainError("wrap_angle: non-finite angle");
  double w = std::remainder(theta, 2.0 * kPi);  // in [-pi, pi]
  if (w <= -kPi) w = kPi;
  return w;
}

double heading_true(const Pose& from, const Pose& to) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (dx == 0.0 && dy == 0.0) {
    throw DomainError("heading_true: coincident ground positions");
  }
  return wrap_angle(std::atan2(dy, dx));
}

double relative_heading(const Pose& observer, const Pose& target) {
  return wrap_angle(heading_true(observer, target) - observer.yaw);
}

namespace {

struct CameraBasis {
  // Unit vectors of the camera frame expressed in world coordinates.
  double fwd[3];    // optical axis
  double right[3];  // +u direction
  double down[3];   // +v direction
};

CameraBasis camera_basis(const Pose& uav, const CameraModel& cam) {
  const double cy_ = std::cos(uav.yaw), sy_ = std::sin(uav.yaw);
  const double cp = std::cos(cam.pitch), sp = std::sin(cam.pitch);
  CameraBasis b;
  b.fwd[0] = cy_ * cp;
  b.fwd[1] = sy_ * cp;
  b.fwd[2] = -sp;
  b.right[0] = sy_;
  b.right[1] = -cy_;
  b.right[2] = 0.0;
  // fwd x right; reduces to (0, 0, -1) for a level camera.
  b.down[0] = -sp * cy_;
  b.down[1] = -sp * sy_;
  b.down[2] = -cp;
  return b;
}

}  // namespace

std::optional<PixelPoint> project_point(const Pose& uav, const CameraModel& cam,
                                        double px, double py, double pz,
                                        double depth_eps) {
  const CameraBasis b = camera_basis(uav, cam);
  const double dx = px - uav.x, dy = py - uav.y, dz = pz - uav.z;
  const double depth = dx * b.fwd[0] + dy * b.fwd[1] + dz * b.fwd[2];
  if (depth <= depth_eps) return std::nullopt;
  const double lateral = dx * b.right[0] + dy * b.right[1] + dz * b.right[2];
  const double vertical = dx * b.down[0] + dy * b.down[1] + dz * b.down[2];
  PixelPoint p;
  p.u = cam.cx + cam.focal_px * lateral / depth;
  p.v = cam.cy + cam.focal_px * vertical / depth;
  return p;
}

std::optional<BBox> project_ugv_bbox(const Pose& uav, const CameraModel& cam,
                                     const Pose& ugv, const UgvShape& shape,
                                     double depth_eps) {
  const double cy_ = std::cos(ugv.yaw), sy_ = std::sin(ugv.yaw);
  const double hl = 0.5 * shape.length, hw = 0.5 * shape.width;

  double min_u = 0.0, max_u = 0.0, min_v = 0.0, max_v = 0.0;
  int in_front = 0;
  for (int corner = 0; corner < 8; ++corner) {
    const double sl = (corner & 1) ? hl : -hl;
    const double sw = (corner & 2) ? hw : -hw;
    const double cz = (corner & 4) ? shape.height : 0.0;
    const double wx = ugv.x + sl * cy_ - sw * sy_;
    const double wy = ugv.y + sl * sy_ + sw * cy_;
    const double wz = ugv.z + cz;
    auto p = project_point(uav, cam, wx, wy, wz, depth_eps);
    if (!p) continue;
    if (in_front == 0) {
      min_u = max_u = p->u;
      min_v = max_v = p->v;
    } else {
      min_u = std::min(min_u, p->u);
      max_u = std::max(max_u, p->u);
      min_v = std::min(min_v, p->v);
      max_v = std::max(max_v, p->v);
    }
    ++in_front;
  }
  if (in_front < 4) return std::nullopt;

  BBox box;
  box.x1 = std::clamp(min_u, 0.0, cam.width_px);
  box.x2 = std::clamp(max_u, 0.0, cam.width_px);
  box.y1 = std::clamp(min_v, 0.0, cam.height_px);
  box.y2 = std::clamp(max_v, 0.0, cam.height_px);
  if (box.width() < 1.0 || box.height() < 1.0) return std::nullopt;
  return box;
}

}  // namespace hsim
