#include "headingsim/data.hpp"

#include <cmath>

#include "headingsim/errors.hpp"
#include "headingsim/target_select.hpp"
#include "headingsim/textio.hpp"

namespace hsim {

const char* to_string(TrajectoryKind k) {
  switch (k) {
    case TrajectoryKind::kLine: return "line";
    case TrajectoryKind::kArc: return "arc";
    case TrajectoryKind::kLissajous: return "lissajous";
    case TrajectoryKind::kRandomWalk: return "random_walk";
  }
  return "line";
}

TrajectoryKind trajectory_kind_from_string(const std::string& s) {
  if (s == "line") return TrajectoryKind::kLine;
  if (s == "arc") return TrajectoryKind::kArc;
  if (s == "lissajous") return TrajectoryKind::kLissajous;
  if (s == "random_walk") return TrajectoryKind::kRandomWalk;
  throw ConfigError("unknown trajectory kind '" + s + "'");
}

const char* to_string(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
  }
  return "train";
}

Split split_from_string(const std::string& s) {
  if (s == "train") return Split::kTrain;
  if (s == "val") return Split::kVal;
  if (s == "test") return Split::kTest;
  throw FormatError("unknown split '" + s + "'");
}

WorldConfig default_world() {
  WorldConfig w;
  w.uav = Pose{0.0, 0.0, 1.5, 0.0};

  // Near-radial receding line: bearing stays within ~1.5 degrees of dead
  // ahead while distance sweeps 2.2 m to 6.7 m with a head-on target yaw,
  // the geometry a converged pursuit loop operates in.
  TrajectoryConfig line;
  line.kind = TrajectoryKind::kLine;
  line.duration_steps = 2000;
  line.start_x = 2.2;
  line.start_y = -0.05;
  line.vel_x = 0.045;
  line.vel_y = 0.0008;

  // Off-axis sweep with tangential target yaw.
  TrajectoryConfig arc;
  arc.kind = TrajectoryKind::kArc;
  arc.duration_steps = 2000;
  arc.center_x = 4.5;
  arc.center_y = 0.0;
  arc.radius = 2.2;
  arc.angular_rate = 0.045;
  arc.start_angle = kPi;

  // Broad figure sweep across the wedge.
  TrajectoryConfig liss;
  liss.kind = TrajectoryKind::kLissajous;
  liss.duration_steps = 2400;
  liss.center_x = 5.2;
  liss.center_y = 0.0;
  liss.amp_x = 2.6;
  liss.amp_y = 2.0;
  liss.freq_x = 0.11;
  liss.freq_y = 0.17;

  // Short diffusions at stepped ranges. Their per-step headings are
  // isotropic, so near-center bearings get sampled at every distance under
  // every viewing obliquity, which the three smooth paths cannot provide.
  w.trajectories = {line, arc, liss};
  for (double x : {2.5, 3.5, 4.5, 5.5}) {
    TrajectoryConfig walk;
    walk.kind = TrajectoryKind::kRandomWalk;
    walk.duration_steps = 1200;
    walk.start_x = x;
    walk.start_y = 0.0;
    walk.step_std = 0.015;
    w.trajectories.push_back(walk);
  }
  return w;
}

SplitCounts expected_split_counts(long long n) {
  SplitCounts c;
  c.val = n / 10;
  c.test = n / 10;
  c.train = n - c.val - c.test;
  return c;
}

std::vector<Split> split_assign(long long n, std::uint64_t seed) {
  if (n < 0) throw DomainError("split_assign: negative count");
  const SplitCounts c = expected_split_counts(n);
  std::vector<long long> order(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  RngStream rng(seed);
  rng.shuffle(order);

  std::vector<Split> out(static_cast<std::size_t>(n), Split::kTrain);
  long long pos = 0;
  for (long long i = 0; i < c.train; ++i, ++pos) {
    out[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] =
        Split::kTrain;
  }
  for (long long i = 0; i < c.val; ++i, ++pos) {
    out[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] =
        Split::kVal;
  }
  for (long long i = 0; i < c.test; ++i, ++pos) {
    out[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] =
        Split::kTest;
  }
  return out;
}

std::vector<Pose> gen_trajectory(const TrajectoryConfig& t,
                                 const ArenaBounds& arena, RngStream& rng) {
  if (t.duration_steps < 1) {
    throw ConfigError("trajectory duration_steps must be >= 1");
  }
  if (t.dt <= 0.0) throw ConfigError("trajectory dt must be > 0");

  const std::size_t n = static_cast<std::size_t>(t.duration_steps);
  std::vector<double> xs(n), ys(n);
  switch (t.kind) {
    case TrajectoryKind::kLine:
      for (std::size_t k = 0; k < n; ++k) {
        const double tk = static_cast<double>(k) * t.dt;
        xs[k] = t.start_x + t.vel_x * tk;
        ys[k] = t.start_y + t.vel_y * tk;
      }
      break;
    case TrajectoryKind::kArc:
      for (std::size_t k = 0; k < n; ++k) {
        const double tk = static_cast<double>(k) * t.dt;
        const double a = t.start_angle + t.angular_rate * tk;
        xs[k] = t.center_x + t.radius * std::cos(a);
        ys[k] = t.center_y + t.radius * std::sin(a);
      }
      break;
    case TrajectoryKind::kLissajous:
      for (std::size_t k = 0; k < n; ++k) {
        const double tk = static_cast<double>(k) * t.dt;
        xs[k] = t.center_x + t.amp_x * std::sin(t.freq_x * tk + t.phase_x);
        ys[k] = t.center_y + t.amp_y * std::sin(t.freq_y * tk);
      }
      break;
    case TrajectoryKind::kRandomWalk:
      xs[0] = t.start_x;
      ys[0] = t.start_y;
      for (std::size_t k = 1; k < n; ++k) {
        xs[k] = xs[k - 1] + rng.next_normal(0.0, t.step_std);
        ys[k] = ys[k - 1] + rng.next_normal(0.0, t.step_std);
      }
      break;
  }

  std::vector<Pose> poses(n);
  double yaw = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (!arena.contains(xs[k], ys[k])) {
      throw GenerationError("trajectory (" + std::string(to_string(t.kind)) +
                            ") exits arena at step " + std::to_string(k) +
                            " (x=" + fmt_double(xs[k]) +
                            ", y=" + fmt_double(ys[k]) + ")");
    }
    if (k + 1 < n) {
      const double dx = xs[k + 1] - xs[k];
      const double dy = ys[k + 1] - ys[k];
      if (dx != 0.0 || dy != 0.0) yaw = wrap_angle(std::atan2(dy, dx));
    }
    poses[k] = Pose{xs[k], ys[k], 0.0, yaw};
  }
  return poses;
}

std::string canonical_config_string(const WorldConfig& w,
                                    long long target_count,
                                    std::uint64_t seed) {
  std::string s;
  s += "camera " + fmt_double(w.camera.focal_px) + ' ' + fmt_double(w.camera.cx) +
       ' ' + fmt_double(w.camera.cy) + ' ' + fmt_double(w.camera.width_px) +
       ' ' + fmt_double(w.camera.height_px) + ' ' + fmt_double(w.camera.pitch) +
       '\n';
  s += "uav " + fmt_double(w.uav.x) + ' ' + fmt_double(w.uav.y) + ' ' +
       fmt_double(w.uav.z) + ' ' + fmt_double(w.uav.yaw) + '\n';
  s += "shape " + fmt_double(w.shape.length) + ' ' + fmt_double(w.shape.width) +
       ' ' + fmt_double(w.shape.height) + '\n';
  s += "arena " + fmt_double(w.arena.x_min) + ' ' + fmt_double(w.arena.x_max) +
       ' ' + fmt_double(w.arena.y_min) + ' ' + fmt_double(w.arena.y_max) + '\n';
  s += "noise " + fmt_double(w.noise.corner_sigma) + ' ' +
       fmt_double(w.noise.miss_prob) + ' ' +
       fmt_double(w.noise.false_positive_rate) + ' ' +
       fmt_double(w.noise.conf_lo) + ' ' + fmt_double(w.noise.conf_hi) + '\n';
  s += "thresholds " + fmt_double(w.conf_threshold) + ' ' +
       fmt_double(w.static_threshold_m) + '\n';
  s += std::string("mirror_augment ") + (w.mirror_augment ? "1" : "0") + '\n';
  for (const TrajectoryConfig& t : w.trajectories) {
    s += std::string("trajectory ") + to_string(t.kind) + ' ' +
         std::to_string(t.duration_steps) + ' ' + fmt_double(t.dt) + ' ' +
         fmt_double(t.start_x) + ' ' + fmt_double(t.start_y) + ' ' +
         fmt_double(t.vel_x) + ' ' + fmt_double(t.vel_y) + ' ' +
         fmt_double(t.center_x) + ' ' + fmt_double(t.center_y) + ' ' +
         fmt_double(t.radius) + ' ' + fmt_double(t.angular_rate) + ' ' +
         fmt_double(t.start_angle) + ' ' + fmt_double(t.amp_x) + ' ' +
         fmt_double(t.amp_y) + ' ' + fmt_double(t.freq_x) + ' ' +
         fmt_double(t.freq_y) + ' ' + fmt_double(t.phase_x) + ' ' +
         fmt_double(t.step_std) + '\n';
  }
  s += "count " + std::to_string(target_count) + '\n';
  s += "seed " + std::to_string(seed) + '\n';
  return s;
}

std::uint64_t config_fingerprint(const WorldConfig& w, long long target_count,
                                 std::uint64_t seed) {
  return fnv1a64(canonical_config_string(w, target_count, seed));
}

std::vector<const Sample*> Dataset::split_view(Split s) const {
  std::vector<const Sample*> out;
  for (const Sample& smp : samples) {
    if (smp.split == s) out.push_back(&smp);
  }
  return out;
}

namespace {

// Reflection of the scene across the vertical plane through the observer
// along its yaw axis. The observer is on the plane, so the relative
// bearing exactly negates.
Pose mirror_pose_about(const Pose& observer, const Pose& p) {
  const double c = std::cos(observer.yaw), s = std::sin(observer.yaw);
  const double dx = p.x - observer.x, dy = p.y - observer.y;
  // Components along (c, s) and across (-s, c); negate the across part.
  const double along = dx * c + dy * s;
  const double across = -dx * s + dy * c;
  Pose out;
  out.x = observer.x + along * c + across * s;
  out.y = observer.y + along * s - across * c;
  out.z = p.z;
  out.yaw = wrap_angle(2.0 * observer.yaw - p.yaw);
  return out;
}

}  // namespace

Dataset build_dataset(const WorldConfig& world, long long target_count,
                      std::uint64_t seed, GenStats* stats) {
  if (target_count < 1) throw ConfigError("build_dataset: target_count < 1");
  if (world.trajectories.empty()) {
    throw ConfigError("build_dataset: no trajectories configured");
  }

  Dataset ds;
  ds.frame_w = world.camera.width_px;
  ds.frame_h = world.camera.height_px;
  ds.fingerprint = config_fingerprint(world, target_count, seed);

  GenStats local;
  GenStats& st = stats ? *stats : local;
  st = GenStats{};

  long long global_step = 0;
  long long next_index = 0;
  bool done = false;

  for (std::size_t ti = 0; ti < world.trajectories.size() && !done; ++ti) {
    RngStream traj_rng(derive_seed(seed, "dataset", ti));
    const std::vector<Pose> poses =
        gen_trajectory(world.trajectories[ti], world.arena, traj_rng);
    for (std::size_t k = 0; k < poses.size() && !done; ++k, ++global_step) {
      ++st.stepped;
      if (k > 0) {
        const double dx = poses[k].x - poses[k - 1].x;
        const double dy = poses[k].y - poses[k - 1].y;
        if (std::sqrt(dx * dx + dy * dy) < world.static_threshold_m) {
          ++st.dropped_static;
          continue;
        }
      }
      const auto true_box = project_ugv_bbox(world.uav, world.camera, poses[k],
                                             world.shape);
      if (!true_box) {
        ++st.dropped_projection;
        continue;
      }
      RngStream det_rng(derive_seed(seed, "detect",
                                    static_cast<std::uint64_t>(global_step)));
      const auto dets =
          simulate_detections({*true_box}, world.noise, world.camera.width_px,
                              world.camera.height_px, det_rng);
      const auto sel = select_target(dets, world.conf_threshold, world.camera);
      if (!sel) {
        ++st.dropped_detection;
        continue;
      }

      Sample s;
      s.frame_index = next_index++;
      s.uav = world.uav;
      s.ugv = poses[k];
      s.bbox = sel->bbox;
      s.feat = extract_features(s.bbox, world.camera);
      s.theta = relative_heading(world.uav, poses[k]);
      ds.samples.push_back(s);
      ++st.kept;
      if (st.kept == target_count) done = true;

      if (!done && world.mirror_augment) {
        Sample m;
        m.frame_index = next_index++;
        m.uav = world.uav;
        m.ugv = mirror_pose_about(world.uav, poses[k]);
        m.bbox = BBox{world.camera.width_px - s.bbox.x2, s.bbox.y1,
                      world.camera.width_px - s.bbox.x1, s.bbox.y2};
        m.feat = extract_features(m.bbox, world.camera);
        m.theta = relative_heading(m.uav, m.ugv);
        ds.samples.push_back(m);
        ++st.kept;
        if (st.kept == target_count) done = true;
      }
    }
  }

  if (st.kept < target_count) {
    throw GenerationError(
        "trajectories yielded " + std::to_string(st.kept) + " of " +
        std::to_string(target_count) + " requested samples (" +
        std::to_string(st.stepped) + " stepped, " +
        std::to_string(st.dropped_projection) + " out of view, " +
        std::to_string(st.dropped_detection) + " undetected, " +
        std::to_string(st.dropped_static) + " static)");
  }

  const std::vector<Split> splits =
      split_assign(st.kept, derive_seed(seed, "split"));
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    ds.samples[i].split = splits[i];
  }
  return ds;
}

}  // namespace hsim
