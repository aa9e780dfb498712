#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "headingsim/features.hpp"
#include "headingsim/geom.hpp"

namespace hsim {

enum class TrajectoryKind { kLine, kArc, kLissajous, kRandomWalk };

const char* to_string(TrajectoryKind k);
TrajectoryKind trajectory_kind_from_string(const std::string& s);

// Ground vehicle path on the floor plane (z = 0), sampled every dt
// seconds for duration_steps steps. Yaw faces the direction of motion.
// Only the fields of the active kind are read.
struct TrajectoryConfig {
  TrajectoryKind kind = TrajectoryKind::kLine;
  int duration_steps = 1;
  double dt = 0.05;  // s

  // line: start + velocity * t
  double start_x = 0.0, start_y = 0.0;  // m
  double vel_x = 0.0, vel_y = 0.0;      // m/s

  // arc: circle about (center_x, center_y) from start_angle at angular_rate
  double center_x = 0.0, center_y = 0.0;  // m
  double radius = 1.0;                    // m
  double angular_rate = 0.5;              // rad/s
  double start_angle = 0.0;               // rad

  // lissajous: center + (amp_x sin(freq_x t + phase_x), amp_y sin(freq_y t))
  double amp_x = 1.0, amp_y = 1.0;    // m
  double freq_x = 0.5, freq_y = 1.0;  // rad/s
  double phase_x = 0.5 * kPi;         // rad

  // random_walk: start + cumulative per-axis Normal(0, step_std) steps
  double step_std = 0.05;  // m
};

struct ArenaBounds {
  double x_min = -1.0, x_max = 10.0;  // m
  double y_min = -6.0, y_max = 6.0;   // m

  bool contains(double x, double y) const {
    return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
  }
};

// Full scene description: stationary observer, camera, target shape and
// motion, detector noise, pipeline thresholds.
struct WorldConfig {
  CameraModel camera;
  Pose uav;  // stationary during generation
  UgvShape shape;
  ArenaBounds arena;
  std::vector<TrajectoryConfig> trajectories;
  DetectorNoise noise;
  double conf_threshold = 0.25;     // detections below are ignored
  double static_threshold_m = 0.001;  // frames moving less are dropped
  bool mirror_augment = false;        // also emit the mirrored scene per frame
};

// Built-in scene: level camera 1.5 m up at the origin looking along +x,
// seven trajectories (a near-radial line, an arc, a lissajous figure and
// four range-stepped random walks) inside the camera wedge, noiseless
// detector. Tuned to yield well over 9000 frames and to cover the
// bearing, distance and target-yaw envelope the closed loop operates in.
WorldConfig default_world();

enum class Split { kTrain, kVal, kTest };

const char* to_string(Split s);
Split split_from_string(const std::string& s);

struct Sample {
  long long frame_index = 0;  // unique, strictly increasing in a dataset
  Pose uav;
  Pose ugv;
  BBox bbox;       // detector output box used for the features
  FeatureVec feat; // always extract_features(bbox, camera)
  double theta = 0.0;  // rad, always relative_heading(uav, ugv)
  Split split = Split::kTrain;
};

struct Dataset {
  std::vector<Sample> samples;
  double frame_w = 640.0;
  double frame_h = 640.0;
  std::uint64_t fingerprint = 0;  // hash of (world config, count, seed)

  std::vector<const Sample*> split_view(Split s) const;
};

struct SplitCounts {
  long long train = 0, val = 0, test = 0;
};

// floor(n/10) val, floor(n/10) test, remainder train.
SplitCounts expected_split_counts(long long n);

// Seeded random split assignment honoring expected_split_counts exactly.
std::vector<Split> split_assign(long long n, std::uint64_t seed);

// Samples the path of one trajectory. Throws GenerationError naming the
// step when the path leaves the arena. The rng stream is consumed only by
// the random walk kind.
std::vector<Pose> gen_trajectory(const TrajectoryConfig& t,
                                 const ArenaBounds& arena, RngStream& rng);

struct GenStats {
  long long stepped = 0;            // trajectory frames visited
  long long dropped_static = 0;     // moved less than the static threshold
  long long dropped_projection = 0; // target not usable in frame
  long long dropped_detection = 0;  // detector produced no usable target
  long long kept = 0;
};

// Steps every trajectory in order, runs the projection + detection + feature
// pipeline per frame, keeps usable frames until target_count samples exist,
// then assigns splits. Pure function of (world, target_count, seed).
// Throws GenerationError when the trajectories cannot supply target_count
// samples. Detector noise per frame uses a substream derived from the frame
// index, so frame generation is partitionable without changing output.
Dataset build_dataset(const WorldConfig& world, long long target_count,
                      std::uint64_t seed, GenStats* stats = nullptr);

// Stable text rendering of the generation inputs; its hash is the dataset
// fingerprint. Equal configs, counts and seeds give equal fingerprints.
std::string canonical_config_string(const WorldConfig& world,
                                    long long target_count,
                                    std::uint64_t seed);
std::uint64_t config_fingerprint(const WorldConfig& world,
                                 long long target_count, std::uint64_t seed);

// Versioned line-delimited text format, full double precision.
// save -> load -> save is byte identical. The loader re-derives features
// and headings from the stored poses and boxes and rejects any mismatch,
// malformed line, invariant violation, or split census off by more than
// one sample from the 80/10/10 floor rule.
std::string serialize_dataset(const Dataset& ds);
Dataset deserialize_dataset(const std::string& text);
void save_dataset(const std::string& path, const Dataset& ds);
Dataset load_dataset(const std::string& path);

}  // namespace hsim
