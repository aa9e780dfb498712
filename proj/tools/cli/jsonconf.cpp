#include "jsonconf.hpp"

#include <initializer_list>

#include "headingsim/errors.hpp"
#include "headingsim/rng.hpp"
#include "headingsim/textio.hpp"

namespace hsim::cli {

using nlohmann::json;

namespace {

void expect_keys(const json& obj, const char* ctx,
                 std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      throw ConfigError(std::string("world config: unknown key '") +
                        item.key() + "' in " + ctx);
    }
  }
}

double num(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ConfigError(std::string("world config: '") + key +
                      "' must be a number");
  }
  return v.get<double>();
}

int integer(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    throw ConfigError(std::string("world config: '") + key +
                      "' must be an integer");
  }
  return v.get<int>();
}

bool boolean(const json& obj, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) {
    throw ConfigError(std::string("world config: '") + key +
                      "' must be a boolean");
  }
  return v.get<bool>();
}

TrajectoryConfig trajectory_from_json(const json& j) {
  if (!j.is_object()) {
    throw ConfigError("world config: trajectory entries must be objects");
  }
  expect_keys(j, "trajectory",
              {"kind", "duration_steps", "dt", "start_x", "start_y", "vel_x",
               "vel_y", "center_x", "center_y", "radius", "angular_rate",
               "start_angle", "amp_x", "amp_y", "freq_x", "freq_y", "phase_x",
               "step_std"});
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw ConfigError("world config: trajectory needs a string 'kind'");
  }
  TrajectoryConfig t;
  t.kind = trajectory_kind_from_string(j.at("kind").get<std::string>());
  t.duration_steps = integer(j, "duration_steps", t.duration_steps);
  t.dt = num(j, "dt", t.dt);
  t.start_x = num(j, "start_x", t.start_x);
  t.start_y = num(j, "start_y", t.start_y);
  t.vel_x = num(j, "vel_x", t.vel_x);
  t.vel_y = num(j, "vel_y", t.vel_y);
  t.center_x = num(j, "center_x", t.center_x);
  t.center_y = num(j, "center_y", t.center_y);
  t.radius = num(j, "radius", t.radius);
  t.angular_rate = num(j, "angular_rate", t.angular_rate);
  t.start_angle = num(j, "start_angle", t.start_angle);
  t.amp_x = num(j, "amp_x", t.amp_x);
  t.amp_y = num(j, "amp_y", t.amp_y);
  t.freq_x = num(j, "freq_x", t.freq_x);
  t.freq_y = num(j, "freq_y", t.freq_y);
  t.phase_x = num(j, "phase_x", t.phase_x);
  t.step_std = num(j, "step_std", t.step_std);
  return t;
}

}  // namespace

WorldConfig world_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("world config: root must be an object");
  expect_keys(j, "the root object",
              {"camera", "uav", "shape", "arena", "noise", "conf_threshold",
               "static_threshold_m", "mirror_augment", "trajectories"});

  WorldConfig w = default_world();

  if (j.contains("camera")) {
    const json& c = j.at("camera");
    expect_keys(c, "camera",
                {"focal_px", "cx", "cy", "width_px", "height_px", "pitch_rad"});
    w.camera.focal_px = num(c, "focal_px", w.camera.focal_px);
    w.camera.cx = num(c, "cx", w.camera.cx);
    w.camera.cy = num(c, "cy", w.camera.cy);
    w.camera.width_px = num(c, "width_px", w.camera.width_px);
    w.camera.height_px = num(c, "height_px", w.camera.height_px);
    w.camera.pitch = num(c, "pitch_rad", w.camera.pitch);
  }
  if (j.contains("uav")) {
    const json& u = j.at("uav");
    expect_keys(u, "uav", {"x", "y", "z", "yaw"});
    w.uav.x = num(u, "x", w.uav.x);
    w.uav.y = num(u, "y", w.uav.y);
    w.uav.z = num(u, "z", w.uav.z);
    w.uav.yaw = num(u, "yaw", w.uav.yaw);
  }
  if (j.contains("shape")) {
    const json& s = j.at("shape");
    expect_keys(s, "shape", {"length", "width", "height"});
    w.shape.length = num(s, "length", w.shape.length);
    w.shape.width = num(s, "width", w.shape.width);
    w.shape.height = num(s, "height", w.shape.height);
  }
  if (j.contains("arena")) {
    const json& a = j.at("arena");
    expect_keys(a, "arena", {"x_min", "x_max", "y_min", "y_max"});
    w.arena.x_min = num(a, "x_min", w.arena.x_min);
    w.arena.x_max = num(a, "x_max", w.arena.x_max);
    w.arena.y_min = num(a, "y_min", w.arena.y_min);
    w.arena.y_max = num(a, "y_max", w.arena.y_max);
  }
  if (j.contains("noise")) {
    const json& n = j.at("noise");
    expect_keys(n, "noise",
                {"corner_sigma", "miss_prob", "false_positive_rate", "conf_lo",
                 "conf_hi"});
    w.noise.corner_sigma = num(n, "corner_sigma", w.noise.corner_sigma);
    w.noise.miss_prob = num(n, "miss_prob", w.noise.miss_prob);
    w.noise.false_positive_rate =
        num(n, "false_positive_rate", w.noise.false_positive_rate);
    w.noise.conf_lo = num(n, "conf_lo", w.noise.conf_lo);
    w.noise.conf_hi = num(n, "conf_hi", w.noise.conf_hi);
  }
  w.conf_threshold = num(j, "conf_threshold", w.conf_threshold);
  w.static_threshold_m = num(j, "static_threshold_m", w.static_threshold_m);
  w.mirror_augment = boolean(j, "mirror_augment", w.mirror_augment);

  if (j.contains("trajectories")) {
    const json& list = j.at("trajectories");
    if (!list.is_array() || list.empty()) {
      throw ConfigError("world config: 'trajectories' must be a non-empty array");
    }
    w.trajectories.clear();
    for (const json& entry : list) {
      w.trajectories.push_back(trajectory_from_json(entry));
    }
  }
  return w;
}

WorldConfig world_from_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError("world config '" + path + "': " + e.what());
  }
  return world_from_json(j);
}

void write_manifest(
    const std::string& path, const std::string& command,
    const json& parameters, const std::vector<std::string>& input_paths,
    const std::vector<std::string>& output_paths,
    const std::vector<std::pair<std::string, std::string>>& formats) {
  auto file_entry = [](const std::string& p) {
    json e;
    e["path"] = p;
    e["fnv1a64"] = to_hex16(fnv1a64(read_text_file(p)));
    return e;
  };
  json m;
  m["command"] = command;
  m["parameters"] = parameters;
  m["inputs"] = json::array();
  for (const auto& p : input_paths) m["inputs"].push_back(file_entry(p));
  m["outputs"] = json::array();
  for (const auto& p : output_paths) m["outputs"].push_back(file_entry(p));
  m["formats"] = json::object();
  for (const auto& [k, v] : formats) m["formats"][k] = v;
  write_text_file(path, m.dump(2) + "\n");
}

std::string manifest_path_for(const std::string& out_path,
                              const std::string& override_path) {
  return override_path.empty() ? out_path + ".manifest.json" : override_path;
}

}  // namespace hsim::cli
