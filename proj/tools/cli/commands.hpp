#pragma once

#include <cstdint>
#include <string>

namespace hsim::cli {

// Option structs are filled by the argument parser in main.cpp; each
// run_* returns a process exit code (0 on success, exceptions handled by
// the caller).

struct GenOpts {
  std::string out;
  std::string world_json;  // empty: built-in world
  long long count = 9000;
  std::uint64_t seed = 1;
  bool mirror = false;
  std::string manifest;  // empty: <out>.manifest.json
};
int run_gen(const GenOpts& o);

struct TrainOpts {
  std::string data;
  std::string out;
  std::string history;  // optional per-epoch loss csv
  int epochs = 100;
  double lr = 0.001;
  int batch = 32;
  std::uint64_t seed = 0;
  std::string manifest;
};
int run_train(const TrainOpts& o);

struct EvalOpts {
  std::string data;
  std::string weights;  // exclusive with oracle
  bool oracle = false;
  std::string split = "test";
  std::string preds;  // optional per-sample prediction csv
  std::string manifest;
};
int run_eval(const EvalOpts& o);

struct SweepOpts {
  std::string data;
  std::string out;
  std::string hist;  // optional histogram csv
  int seeds = 20;
  std::uint64_t master_seed = 7;
  int epochs = 100;
  double lr = 0.001;
  int batch = 32;
  double bin_width = 0.1;  // deg
  std::string split = "test";
  std::string manifest;
};
int run_sweep(const SweepOpts& o);

struct SimOpts {
  std::string world_json;  // empty: built-in world
  std::string weights;     // exclusive with oracle
  bool oracle = false;
  int episodes = 100;
  int frames = 400;
  std::uint64_t seed = 1;

  double gain = 0.5;
  double max_yaw_rate = 2.0;
  double dt = 0.05;
  double band_deg = 1.0;
  double majority = 0.5;

  bool fixed_spawn = false;
  double spawn_bearing_deg = 35.0;
  double spawn_dist_min = 2.0;
  double spawn_dist_max = 6.0;

  // Detector noise overrides; applied only when the flag was passed.
  double corner_sigma = 0.0;
  bool corner_sigma_set = false;
  double miss_prob = 0.0;
  bool miss_prob_set = false;
  double fp_rate = 0.0;
  bool fp_rate_set = false;
  double conf_lo = 1.0;
  bool conf_lo_set = false;
  double conf_hi = 1.0;
  bool conf_hi_set = false;

  std::string out;        // optional campaign csv
  std::string trace_dir;  // with save_traces > 0
  int save_traces = 0;
  std::string manifest;
};
int run_sim(const SimOpts& o);

struct PlotOpts {
  std::string in;
  std::string out;
  std::string title;  // empty: derived from the input kind
  double bin_width = 0.1;
  std::string manifest;
};
int run_plot(const PlotOpts& o);

}  // namespace hsim::cli
