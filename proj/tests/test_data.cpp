#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "headingsim/data.hpp"
#include "headingsim/errors.hpp"
#include "headingsim/rng.hpp"

using namespace hsim;

namespace {

// Single line trajectory crossing the camera wedge at 3 m, fast enough to
// clear the static filter on every frame.
WorldConfig tiny_world(int steps = 300) {
  WorldConfig w;
  w.uav = Pose{0.0, 0.0, 1.5, 0.0};
  TrajectoryConfig line;
  line.kind = TrajectoryKind::kLine;
  line.duration_steps = steps;
  line.dt = 0.05;
  line.start_x = 3.0;
  line.start_y = -0.8;
  line.vel_x = 0.02;
  line.vel_y = 0.12;
  w.trajectories = {line};
  return w;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) nl = text.size();
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    out += l;
    out += '\n';
  }
  return out;
}

// Replaces field `idx` (space separated) of one line.
std::string patch_field(const std::string& line, std::size_t idx,
                        const std::string& value) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t sp = line.find(' ', start);
    if (sp == std::string::npos) sp = line.size();
    fields.push_back(line.substr(start, sp - start));
    start = sp + 1;
  }
  fields.at(idx) = value;
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ' ';
    out += fields[i];
  }
  return out;
}

}  // namespace

TEST_CASE("line trajectory faces its motion") {
  ArenaBounds arena;
  RngStream rng(1);
  TrajectoryConfig t;
  t.kind = TrajectoryKind::kLine;
  t.duration_steps = 50;
  t.start_x = 1.0;
  t.start_y = 0.0;
  t.vel_x = 0.3;
  t.vel_y = 0.3;
  const auto poses = gen_trajectory(t, arena, rng);
  REQUIRE(poses.size() == 50);
  for (const auto& p : poses) {
    CHECK(p.yaw == doctest::Approx(kPi / 4.0).epsilon(1e-12));
    CHECK(p.z == 0.0);
  }
  CHECK(poses[0].x == 1.0);
  CHECK(poses[49].y == doctest::Approx(0.3 * 49 * 0.05).epsilon(1e-12));
}

TEST_CASE("a motionless line keeps a zero yaw") {
  ArenaBounds arena;
  RngStream rng(1);
  TrajectoryConfig t;
  t.kind = TrajectoryKind::kLine;
  t.duration_steps = 10;
  t.start_x = 2.0;
  t.start_y = 1.0;
  const auto poses = gen_trajectory(t, arena, rng);
  for (const auto& p : poses) {
    CHECK(p.x == 2.0);
    CHECK(p.y == 1.0);
    CHECK(p.yaw == 0.0);
  }
}

TEST_CASE("arc closes after one revolution and tracks the tangent") {
  ArenaBounds arena;
  arena.x_min = -10.0;
  RngStream rng(1);
  TrajectoryConfig t;
  t.kind = TrajectoryKind::kArc;
  t.duration_steps = 401;
  t.dt = 0.05;
  t.center_x = 3.0;
  t.center_y = 0.0;
  t.radius = 2.0;
  // 400 steps of dt cover exactly one turn.
  t.angular_rate = 2.0 * kPi / (400.0 * 0.05);
  const auto poses = gen_trajectory(t, arena, rng);
  REQUIRE(poses.size() == 401);
  CHECK(poses.back().x == doctest::Approx(poses.front().x).epsilon(1e-9));
  CHECK(poses.back().y == doctest::Approx(poses.front().y).epsilon(1e-9));

  // Counterclockwise motion: heading is the circle angle plus ninety
  // degrees, up to the discretization of one step.
  for (std::size_t k = 0; k + 1 < poses.size(); k += 37) {
    const double angle = t.start_angle + t.angular_rate * (k * t.dt);
    const double want = wrap_angle(angle + 0.5 * kPi);
    const double got = poses[k].yaw;
    CHECK(std::abs(wrap_angle(got - want)) < 0.2);
  }
}

TEST_CASE("random walk mean squared displacement matches theory") {
  ArenaBounds arena;
  arena.x_min = arena.y_min = -50.0;
  arena.x_max = arena.y_max = 50.0;
  TrajectoryConfig t;
  t.kind = TrajectoryKind::kRandomWalk;
  t.duration_steps = 200;
  t.step_std = 0.05;
  double sum_sq = 0.0;
  const int walks = 800;
  for (int i = 0; i < walks; ++i) {
    RngStream rng(derive_seed(900, "walk", static_cast<std::uint64_t>(i)));
    const auto poses = gen_trajectory(t, arena, rng);
    const double dx = poses.back().x - poses.front().x;
    const double dy = poses.back().y - poses.front().y;
    sum_sq += dx * dx + dy * dy;
  }
  // 199 independent Normal(0, std) increments per axis.
  const double expect = 2.0 * 199.0 * 0.05 * 0.05;
  CHECK(sum_sq / walks == doctest::Approx(expect).epsilon(0.10));
}

TEST_CASE("leaving the arena reports the exact step") {
  ArenaBounds arena;  // x_max 10
  RngStream rng(1);
  TrajectoryConfig t;
  t.kind = TrajectoryKind::kLine;
  t.duration_steps = 20;
  t.dt = 1.0;
  t.vel_x = 1.0;
  try {
    gen_trajectory(t, arena, rng);
    FAIL("expected GenerationError");
  } catch (const GenerationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line") != std::string::npos);
    CHECK(msg.find("step 11") != std::string::npos);
  }
}

TEST_CASE("split counts follow the floor rule") {
  auto c = expected_split_counts(10);
  CHECK(c.train == 8);
  CHECK(c.val == 1);
  CHECK(c.test == 1);
  c = expected_split_counts(9000);
  CHECK(c.train == 7200);
  CHECK(c.val == 900);
  CHECK(c.test == 900);
  c = expected_split_counts(11);
  CHECK(c.train == 9);
  CHECK(c.val == 1);
  CHECK(c.test == 1);
  c = expected_split_counts(5);
  CHECK(c.train == 5);
  CHECK(c.val == 0);
  CHECK(c.test == 0);
}

TEST_CASE("split assignment is exact and seeded") {
  const auto a = split_assign(100, 7);
  const auto b = split_assign(100, 7);
  CHECK(a == b);
  long long train = 0, val = 0, test = 0;
  for (Split s : a) {
    if (s == Split::kTrain) ++train;
    if (s == Split::kVal) ++val;
    if (s == Split::kTest) ++test;
  }
  CHECK(train == 80);
  CHECK(val == 10);
  CHECK(test == 10);
  CHECK(split_assign(100, 8) != a);
}

TEST_CASE("noiseless generation keeps every stepped frame") {
  GenStats stats;
  const Dataset ds = build_dataset(tiny_world(), 250, 42, &stats);
  REQUIRE(ds.samples.size() == 250);
  CHECK(stats.kept == 250);
  CHECK(stats.dropped_detection == 0);
  CHECK(stats.dropped_projection == 0);
  CHECK(stats.dropped_static == 0);

  const CameraModel cam;
  long long prev = -1;
  for (const Sample& s : ds.samples) {
    CHECK(s.frame_index > prev);
    prev = s.frame_index;
    const FeatureVec f = extract_features(s.bbox, cam);
    CHECK(f.cx == s.feat.cx);
    CHECK(f.area == s.feat.area);
    CHECK(relative_heading(s.uav, s.ugv) == s.theta);
    CHECK(s.bbox.valid_in(640.0, 640.0));
  }
}

TEST_CASE("misses cost frames at the configured rate") {
  WorldConfig w = tiny_world(2000);
  w.trajectories[0].vel_y = 0.04;
  w.noise.miss_prob = 0.5;
  GenStats stats;
  const Dataset ds = build_dataset(w, 800, 11, &stats);
  CHECK(ds.samples.size() == 800);
  CHECK(stats.kept + stats.dropped_static + stats.dropped_projection +
            stats.dropped_detection ==
        stats.stepped);
  const double miss_frac = static_cast<double>(stats.dropped_detection) /
                           static_cast<double>(stats.stepped);
  CHECK(miss_frac > 0.4);
  CHECK(miss_frac < 0.6);
}

TEST_CASE("insufficient trajectories fail with accounting") {
  try {
    build_dataset(tiny_world(50), 500, 1);
    FAIL("expected GenerationError");
  } catch (const GenerationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("50 of 500") != std::string::npos);
    CHECK(msg.find("stepped") != std::string::npos);
  }
}

TEST_CASE("mirror augmentation emits exact reflections") {
  WorldConfig w = tiny_world();
  w.mirror_augment = true;
  const Dataset ds = build_dataset(w, 200, 5);
  REQUIRE(ds.samples.size() == 200);
  for (std::size_t i = 0; i + 1 < ds.samples.size(); i += 2) {
    const Sample& s = ds.samples[i];
    const Sample& m = ds.samples[i + 1];
    CHECK(m.frame_index == s.frame_index + 1);
    CHECK(m.theta == -s.theta);
    CHECK(m.ugv.y == -s.ugv.y);
    CHECK(m.ugv.x == s.ugv.x);
    CHECK(m.feat.cx == doctest::Approx(1.0 - s.feat.cx).epsilon(1e-12));
    CHECK(m.feat.cy == s.feat.cy);
    CHECK(m.feat.area == doctest::Approx(s.feat.area).epsilon(1e-12));
  }
}

TEST_CASE("generation is a pure function of config and seed") {
  WorldConfig w = tiny_world();
  w.noise.corner_sigma = 1.5;
  w.noise.conf_lo = 0.5;
  w.noise.conf_hi = 1.0;
  const Dataset a = build_dataset(w, 150, 9);
  const Dataset b = build_dataset(w, 150, 9);
  CHECK(serialize_dataset(a) == serialize_dataset(b));

  const Dataset c = build_dataset(w, 150, 10);
  CHECK(c.fingerprint != a.fingerprint);
  CHECK(serialize_dataset(c) != serialize_dataset(a));
}

TEST_CASE("fingerprint tracks every config field") {
  const WorldConfig w = tiny_world();
  const auto base = config_fingerprint(w, 100, 1);
  CHECK(config_fingerprint(w, 100, 1) == base);
  CHECK(config_fingerprint(w, 101, 1) != base);
  CHECK(config_fingerprint(w, 100, 2) != base);
  WorldConfig w2 = w;
  w2.conf_threshold = 0.3;
  CHECK(config_fingerprint(w2, 100, 1) != base);
  w2 = w;
  w2.trajectories[0].dt = 0.1;
  CHECK(config_fingerprint(w2, 100, 1) != base);
  w2 = w;
  w2.mirror_augment = true;
  CHECK(config_fingerprint(w2, 100, 1) != base);
}

TEST_CASE("dataset text round trip is byte identical") {
  WorldConfig w = tiny_world();
  w.noise.corner_sigma = 1.0;
  w.noise.conf_lo = 0.4;
  w.noise.conf_hi = 0.9;
  const Dataset ds = build_dataset(w, 100, 3);
  const std::string text = serialize_dataset(ds);
  const Dataset back = deserialize_dataset(text);
  CHECK(back.samples.size() == ds.samples.size());
  CHECK(back.fingerprint == ds.fingerprint);
  CHECK(serialize_dataset(back) == text);
  for (std::size_t i = 0; i < ds.samples.size(); i += 17) {
    CHECK(back.samples[i].theta == ds.samples[i].theta);
    CHECK(back.samples[i].bbox.x1 == ds.samples[i].bbox.x1);
    CHECK(back.samples[i].split == ds.samples[i].split);
  }
}

TEST_CASE("the loader rejects tampered records") {
  const Dataset ds = build_dataset(tiny_world(), 100, 3);
  const std::string good = serialize_dataset(ds);
  auto lines = split_lines(good);
  REQUIRE(lines.size() == 101);

  SUBCASE("theta inconsistent with the poses") {
    lines[1] = patch_field(lines[1], 17, "0.123456");
    try {
      deserialize_dataset(join_lines(lines));
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("line 2") != std::string::npos);
      CHECK(msg.find("theta") != std::string::npos);
    }
  }
  SUBCASE("features inconsistent with the box") {
    lines[5] = patch_field(lines[5], 13, "0.5");
    try {
      deserialize_dataset(join_lines(lines));
      FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("line 6") != std::string::npos);
    }
  }
  SUBCASE("frame order violation") {
    std::swap(lines[1], lines[2]);
    CHECK_THROWS_AS(deserialize_dataset(join_lines(lines)), ValidationError);
  }
  SUBCASE("wrong field count") {
    lines[3] = lines[3].substr(0, lines[3].rfind(' '));
    CHECK_THROWS_AS(deserialize_dataset(join_lines(lines)), FormatError);
  }
  SUBCASE("unparseable number") {
    lines[4] = patch_field(lines[4], 1, "abc");
    CHECK_THROWS_AS(deserialize_dataset(join_lines(lines)), FormatError);
  }
  SUBCASE("header count mismatch") {
    lines.pop_back();
    CHECK_THROWS_AS(deserialize_dataset(join_lines(lines)), FormatError);
  }
}

TEST_CASE("the loader polices the split census") {
  const Dataset ds = build_dataset(tiny_world(), 100, 3);
  auto lines = split_lines(serialize_dataset(ds));

  SUBCASE("one off is tolerated") {
    // Move one val sample to train: census 81/9/10.
    for (auto& l : lines) {
      if (l.size() > 4 && l.compare(l.size() - 4, 4, " val") == 0) {
        l = l.substr(0, l.size() - 4) + " train";
        break;
      }
    }
    const Dataset back = deserialize_dataset(join_lines(lines));
    CHECK(back.samples.size() == 100);
  }
  SUBCASE("a skewed census is rejected") {
    // Move ten train samples to val: census 70/20/10.
    int moved = 0;
    for (auto& l : lines) {
      if (moved < 10 && l.size() > 6 &&
          l.compare(l.size() - 6, 6, " train") == 0) {
        l = l.substr(0, l.size() - 6) + " val";
        ++moved;
      }
    }
    REQUIRE(moved == 10);
    CHECK_THROWS_AS(deserialize_dataset(join_lines(lines)), ValidationError);
  }
}

TEST_CASE("the built-in world supplies the reference dataset") {
  GenStats stats;
  const Dataset ds = build_dataset(default_world(), 9000, 20240501, &stats);
  REQUIRE(ds.samples.size() == 9000);
  long long train = 0, val = 0, test = 0;
  for (const Sample& s : ds.samples) {
    if (s.split == Split::kTrain) ++train;
    if (s.split == Split::kVal) ++val;
    if (s.split == Split::kTest) ++test;
  }
  CHECK(train == 7200);
  CHECK(val == 900);
  CHECK(test == 900);
  CHECK(stats.stepped <= 11200);
  // Plenty of headroom has to remain for bigger requests.
  CHECK(static_cast<double>(stats.kept) / static_cast<double>(stats.stepped) >
        0.85);
}
