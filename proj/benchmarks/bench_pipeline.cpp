// Microbenchmarks for the per-frame pipeline stages and the assembled
// closed-loop step. Build with -DHEADINGSIM_BUILD_BENCHMARKS=ON.
#include <benchmark/benchmark.h>

#include "headingsim/data.hpp"
#include "headingsim/detect.hpp"
#include "headingsim/features.hpp"
#include "headingsim/geom.hpp"
#include "headingsim/net.hpp"
#include "headingsim/rng.hpp"
#include "headingsim/simloop.hpp"

namespace {

using namespace hsim;

Pose bench_uav() { return Pose{0.0, 0.0, 1.5, 0.0}; }
Pose bench_ugv() { return Pose{3.0, 0.4, 0.0, 0.3}; }

void BM_ProjectUgvBbox(benchmark::State& state) {
  const CameraModel cam;
  const UgvShape shape;
  const Pose uav = bench_uav(), ugv = bench_ugv();
  for (auto _ : state) {
    auto box = project_ugv_bbox(uav, cam, ugv, shape);
    benchmark::DoNotOptimize(box);
  }
}
BENCHMARK(BM_ProjectUgvBbox);

void BM_SimulateDetections(benchmark::State& state) {
  const CameraModel cam;
  DetectorNoise noise;
  noise.corner_sigma = 2.0;
  noise.miss_prob = 0.05;
  noise.false_positive_rate = 0.5;
  noise.conf_lo = 0.5;
  noise.conf_hi = 1.0;
  const std::vector<BBox> truths{{200.0, 250.0, 280.0, 320.0}};
  RngStream rng(derive_seed(5, "bench-detect"));
  for (auto _ : state) {
    auto dets = simulate_detections(truths, noise, cam.width_px, cam.height_px,
                                    rng);
    benchmark::DoNotOptimize(dets);
  }
}
BENCHMARK(BM_SimulateDetections);

void BM_ExtractFeatures(benchmark::State& state) {
  const CameraModel cam;
  const BBox box{200.0, 250.0, 280.0, 320.0};
  for (auto _ : state) {
    FeatureVec f = extract_features(box, cam);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_ExtractFeatures);

void BM_Forward(benchmark::State& state) {
  const MlpParams p = init_params(1);
  const FeatureVec z{0.4, 0.6, 0.02, 1.1};
  for (auto _ : state) {
    double out = forward(p, z);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_Forward);

void BM_FullStep(benchmark::State& state) {
  WorldConfig w = default_world();
  w.noise.corner_sigma = 2.0;
  w.noise.miss_prob = 0.05;
  const ControlConfig control;
  const Predictor pred = Predictor::from_network(init_params(1));
  // Fixed observer pose: the target stays in view, so every iteration runs
  // the whole project, detect, select, extract, forward, steer path.
  const Pose uav = bench_uav();
  const Pose ugv = bench_ugv();
  RngStream rng(derive_seed(5, "bench-step"));
  long long frame = 0;
  for (auto _ : state) {
    StepResult s = step_frame(w, control, pred, uav, ugv, frame++, rng);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_FullStep);

}  // namespace

BENCHMARK_MAIN();
