#pragma once

#include <optional>
#include <string>
#include <vector>

#include "headingsim/data.hpp"
#include "headingsim/net.hpp"
#include "headingsim/target_select.hpp"

namespace hsim {

// Heading source for the control loop: either a trained network applied to
// the bounding box features, or the analytic pose oracle used as a test
// stand-in (the loop substitutes the true relative bearing for its output).
class Predictor {
 public:
  static Predictor from_network(MlpParams p);
  static Predictor oracle();

  bool is_oracle() const { return !net_.has_value(); }

  // Network output; throws DomainError on the oracle variant.
  double predict(const FeatureVec& z) const;

 private:
  std::optional<MlpParams> net_;
};

struct ControlConfig {
  double gain = 0.5;             // unitless, must lie in (0, 2) for stability
  double max_yaw_rate = 2.0;     // rad/s
  double dt = 0.05;              // s
  double success_band_deg = 1.0; // alignment counts when |error| is below this
  double majority_fraction = 0.5;
};

struct FrameRecord {
  long long frame = 0;
  Pose uav;  // at perception time, before this frame's yaw command
  Pose ugv;
  std::optional<BBox> bbox;       // selected detection, absent on a miss
  std::optional<double> theta_hat;  // rad, absent when nothing was selected
  double error_deg = 0.0;  // signed true bearing at perception time
};

struct StepResult {
  FrameRecord record;
  Pose uav_after;  // pose after applying the yaw command (or holding)
};

// One control frame: project the target, run the detector oracle, select,
// extract features, predict, and turn toward the prediction with the
// rate-limited proportional law
//   yaw <- wrap(yaw + clamp(gain * theta_hat, +-max_yaw_rate * dt)).
// With no selected target the yaw holds. Pure function of its arguments
// and the rng stream state, which is what makes traces replayable.
StepResult step_frame(const WorldConfig& world, const ControlConfig& control,
                      const Predictor& predictor, const Pose& uav,
                      const Pose& ugv, long long frame, RngStream& det_rng);

struct EpisodeConfig {
  WorldConfig world;  // trajectories[0] drives the target, uav is the start pose
  ControlConfig control;
  int frames = 400;
};

struct EpisodeResult {
  bool success = false;
  bool acquired = false;     // at least one frame selected a target
  long long lock_frame = -1; // first frame inside the success band, -1 if none
  long long frames = 0;
  double in_band_fraction = 0.0;       // of frames from lock_frame on
  double mean_abs_error_deg = 0.0;     // over frames from lock_frame on;
  double max_abs_error_deg = 0.0;      //   over all frames when never locked
  std::uint64_t seed = 0;
  std::vector<FrameRecord> trace;
};

// Runs one closed-loop episode. The target follows world.trajectories[0]
// for exactly `frames` steps (its configured duration is overridden), the
// observer starts at world.uav and only its yaw is actuated. Detector
// noise at frame k draws from a substream derived from (seed, k).
// Success requires acquisition, a lock-on frame, and an in-band fraction
// after it above majority_fraction.
EpisodeResult run_episode(const EpisodeConfig& cfg, const Predictor& predictor,
                          std::uint64_t seed);

struct CampaignConfig {
  EpisodeConfig episode;
  int n_episodes = 100;
  // When set, each episode spawns a stationary target at a seeded random
  // bearing and distance instead of using the configured trajectory.
  bool randomize_spawn = true;
  double spawn_bearing_rad = 0.6108652381980153;  // 35 degrees
  double spawn_dist_min = 2.0;  // m
  double spawn_dist_max = 6.0;  // m
};

struct CampaignResult {
  long long n_episodes = 0;
  long long successes = 0;
  double success_rate = 0.0;
  // Pooled over post-lock frames of all episodes; NaN when nothing locked.
  double mean_abs_error_deg = 0.0;
  double max_abs_error_deg = 0.0;
  std::vector<EpisodeResult> episodes;
};

CampaignResult run_campaign(const CampaignConfig& cfg,
                            const Predictor& predictor, std::uint64_t seed);

// Versioned line-delimited episode trace, full double precision,
// save -> load -> save byte identical.
std::string serialize_trace(const EpisodeResult& ep);
EpisodeResult deserialize_trace(const std::string& text);
void save_trace(const std::string& path, const EpisodeResult& ep);
EpisodeResult load_trace(const std::string& path);

}  // namespace hsim
