#include <cstdio>
#include <filesystem>
#include <vector>

#include "commands.hpp"
#include "headingsim/errors.hpp"
#include "headingsim/net.hpp"
#include "headingsim/simloop.hpp"
#include "headingsim/textio.hpp"
#include "jsonconf.hpp"

namespace hsim::cli {

int run_sim(const SimOpts& o) {
  if (o.oracle == !o.weights.empty()) {
    throw ConfigError("sim needs exactly one of --weights and --oracle");
  }
  const Predictor predictor =
      o.oracle ? Predictor::oracle()
               : Predictor::from_network(load_weights(o.weights).params);

  CampaignConfig cfg;
  cfg.episode.world = o.world_json.empty() ? default_world()
                                           : world_from_json_file(o.world_json);
  if (o.corner_sigma_set) cfg.episode.world.noise.corner_sigma = o.corner_sigma;
  if (o.miss_prob_set) cfg.episode.world.noise.miss_prob = o.miss_prob;
  if (o.fp_rate_set) cfg.episode.world.noise.false_positive_rate = o.fp_rate;
  if (o.conf_lo_set) cfg.episode.world.noise.conf_lo = o.conf_lo;
  if (o.conf_hi_set) cfg.episode.world.noise.conf_hi = o.conf_hi;

  cfg.episode.frames = o.frames;
  cfg.episode.control.gain = o.gain;
  cfg.episode.control.max_yaw_rate = o.max_yaw_rate;
  cfg.episode.control.dt = o.dt;
  cfg.episode.control.success_band_deg = o.band_deg;
  cfg.episode.control.majority_fraction = o.majority;

  cfg.n_episodes = o.episodes;
  cfg.randomize_spawn = !o.fixed_spawn;
  cfg.spawn_bearing_rad = rad_from_deg(o.spawn_bearing_deg);
  cfg.spawn_dist_min = o.spawn_dist_min;
  cfg.spawn_dist_max = o.spawn_dist_max;

  const CampaignResult r = run_campaign(cfg, predictor, o.seed);

  std::printf("episodes %lld\n", r.n_episodes);
  std::printf("success_rate %s\n", fmt_double(r.success_rate).c_str());
  std::printf("post_lock_mean_abs_err_deg %s\n",
              fmt_double(r.mean_abs_error_deg).c_str());
  std::printf("post_lock_max_abs_err_deg %s\n",
              fmt_double(r.max_abs_error_deg).c_str());

  std::vector<std::string> outputs;
  if (!o.out.empty()) {
    std::string csv =
        "episode,seed,success,acquired,lock_frame,in_band_fraction,"
        "mean_abs_err_deg,max_abs_err_deg\n";
    for (std::size_t e = 0; e < r.episodes.size(); ++e) {
      const EpisodeResult& ep = r.episodes[e];
      csv += std::to_string(e) + ',' + std::to_string(ep.seed) + ',' +
             (ep.success ? "1" : "0") + ',' + (ep.acquired ? "1" : "0") + ',' +
             std::to_string(ep.lock_frame) + ',' +
             fmt_double(ep.in_band_fraction) + ',' +
             fmt_double(ep.mean_abs_error_deg) + ',' +
             fmt_double(ep.max_abs_error_deg) + '\n';
    }
    write_text_file(o.out, csv);
    outputs.push_back(o.out);
    std::printf("wrote %s\n", o.out.c_str());
  }

  if (o.save_traces > 0) {
    if (o.trace_dir.empty()) {
      throw ConfigError("sim: --save-traces needs --trace-dir");
    }
    std::error_code ec;
    std::filesystem::create_directories(o.trace_dir, ec);
    if (ec) {
      throw IoError("cannot create trace dir '" + o.trace_dir +
                    "': " + ec.message());
    }
    const int n = std::min<int>(o.save_traces,
                                static_cast<int>(r.episodes.size()));
    for (int e = 0; e < n; ++e) {
      char name[32];
      std::snprintf(name, sizeof name, "trace_%03d.txt", e);
      const std::string path =
          (std::filesystem::path(o.trace_dir) / name).string();
      save_trace(path, r.episodes[static_cast<std::size_t>(e)]);
      outputs.push_back(path);
    }
  }

  if (!outputs.empty()) {
    nlohmann::json params;
    params["predictor"] = o.oracle ? "oracle" : o.weights;
    params["world"] = o.world_json.empty() ? "builtin" : o.world_json;
    params["episodes"] = o.episodes;
    params["frames"] = o.frames;
    params["seed"] = o.seed;
    params["gain"] = o.gain;
    params["max_yaw_rate"] = o.max_yaw_rate;
    params["dt"] = o.dt;
    params["success_band_deg"] = o.band_deg;
    params["majority_fraction"] = o.majority;
    params["randomize_spawn"] = !o.fixed_spawn;
    params["spawn_bearing_deg"] = o.spawn_bearing_deg;
    params["spawn_dist_min"] = o.spawn_dist_min;
    params["spawn_dist_max"] = o.spawn_dist_max;
    params["noise"] = {{"corner_sigma", cfg.episode.world.noise.corner_sigma},
                       {"miss_prob", cfg.episode.world.noise.miss_prob},
                       {"false_positive_rate",
                        cfg.episode.world.noise.false_positive_rate},
                       {"conf_lo", cfg.episode.world.noise.conf_lo},
                       {"conf_hi", cfg.episode.world.noise.conf_hi}};
    std::vector<std::string> inputs;
    if (!o.oracle) inputs.push_back(o.weights);
    write_manifest(manifest_path_for(outputs.front(), o.manifest), "sim",
                   params, inputs, outputs,
                   {{"trace", "headingsim.trace.v1"}});
  }
  return 0;
}

}  // namespace hsim::cli
