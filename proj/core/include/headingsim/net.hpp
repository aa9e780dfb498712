#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "headingsim/data.hpp"
#include "headingsim/features.hpp"

namespace hsim {

// Fully connected 4-64-32-1 regressor, ReLU hidden activations, linear
// output. Parameters live in one flat vector with a fixed layout so that
// gradients, optimizer state and serialization all share indexing.
inline constexpr int kNetInput = 4;
inline constexpr int kNetHidden1 = 64;
inline constexpr int kNetHidden2 = 32;

inline constexpr int kOffW1 = 0;                              // 64 x 4 row-major
inline constexpr int kOffB1 = kOffW1 + kNetHidden1 * kNetInput;
inline constexpr int kOffW2 = kOffB1 + kNetHidden1;           // 32 x 64 row-major
inline constexpr int kOffB2 = kOffW2 + kNetHidden2 * kNetHidden1;
inline constexpr int kOffW3 = kOffB2 + kNetHidden2;           // 1 x 32
inline constexpr int kOffB3 = kOffW3 + kNetHidden2;
inline constexpr int kNetParamCount = kOffB3 + 1;

struct MlpParams {
  std::vector<double> v;  // size kNetParamCount

  static MlpParams zeros();
};

// He initialization: weights ~ Normal(0, sqrt(2 / fan_in)) drawn in layout
// order (W1, W2, W3), biases zero. Same seed, same parameters.
MlpParams init_params(std::uint64_t seed);

// Network output in radians for one feature vector.
double forward(const MlpParams& p, const FeatureVec& z);

struct TrainingBatch {
  std::vector<FeatureVec> inputs;
  std::vector<double> targets;  // radians
};

// Mean squared error over the batch, radians^2.
double loss_mse(const MlpParams& p, const TrainingBatch& batch);

// Analytic gradient of loss_mse with respect to every parameter, same
// layout as MlpParams. The ReLU subgradient at exactly zero is taken as 0.
std::vector<double> backward(const MlpParams& p, const TrainingBatch& batch);

struct AdamState {
  std::vector<double> m;  // first moment
  std::vector<double> v;  // second moment
  long step = 0;

  static AdamState zeros();
};

// One bias-corrected Adam update in place.
void adam_step(MlpParams& p, AdamState& s, const std::vector<double>& grad,
               double lr, double beta1 = 0.9, double beta2 = 0.999,
               double eps = 1e-8);

// Central-difference verification of backward. Returns the maximum over
// parameters of |analytic - numeric| / max(1e-12, |analytic| + |numeric|).
double grad_check(const MlpParams& p, const TrainingBatch& batch,
                  double step = 1e-5);

struct TrainConfig {
  int epochs = 100;
  double lr = 0.001;
  int batch_size = 32;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  std::uint64_t seed = 0;  // master; init and shuffle use derived substreams
};

struct TrainHistory {
  std::vector<double> train_loss;  // radians^2, one entry per epoch
  std::vector<double> val_loss;    // radians^2; NaN when the val split is empty
};

struct TrainResult {
  MlpParams params;
  TrainHistory history;
};

// Minibatch MSE training with Adam on the train split, evaluated on the
// val split after every epoch. Deterministic for a fixed config: the same
// dataset and config give bitwise identical parameters and history.
TrainResult train(const Dataset& dataset, const TrainConfig& cfg);

// --- weights file -----------------------------------------------------------

struct WeightsMeta {
  std::string init_scheme = "he";
  TrainConfig config;
  double final_train_loss = 0.0;  // radians^2
  double final_val_loss = 0.0;    // radians^2
};

struct LoadedWeights {
  MlpParams params;
  WeightsMeta meta;
};

// Self-describing text format, version tagged, full double precision.
// save -> load -> save is byte identical.
std::string serialize_weights(const MlpParams& p, const WeightsMeta& meta);
LoadedWeights deserialize_weights(const std::string& text);
void save_weights(const std::string& path, const MlpParams& p,
                  const WeightsMeta& meta);
LoadedWeights load_weights(const std::string& path);

}  // namespace hsim
