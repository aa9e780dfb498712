#include "headingsim/net.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "headingsim/errors.hpp"
#include "headingsim/rng.hpp"

namespace hsim {

MlpParams MlpParams::zeros() {
  MlpParams p;
  p.v.assign(kNetParamCount, 0.0);
  return p;
}

AdamState AdamState::zeros() {
  AdamState s;
  s.m.assign(kNetParamCount, 0.0);
  s.v.assign(kNetParamCount, 0.0);
  s.step = 0;
  return s;
}

MlpParams init_params(std::uint64_t seed) {
  MlpParams p = MlpParams::zeros();
  RngStream rng(derive_seed(seed, "init"));
  const double std1 = std::sqrt(2.0 / kNetInput);
  const double std2 = std::sqrt(2.0 / kNetHidden1);
  const double std3 = std::sqrt(2.0 / kNetHidden2);
  for (int i = 0; i < kNetHidden1 * kNetInput; ++i) {
    p.v[kOffW1 + i] = rng.next_normal(0.0, std1);
  }
  for (int i = 0; i < kNetHidden2 * kNetHidden1; ++i) {
    p.v[kOffW2 + i] = rng.next_normal(0.0, std2);
  }
  for (int i = 0; i < kNetHidden2; ++i) {
    p.v[kOffW3 + i] = rng.next_normal(0.0, std3);
  }
  return p;
}

namespace {

void check_params(const MlpParams& p) {
  if (p.v.size() != static_cast<std::size_t>(kNetParamCount)) {
    throw DomainError("mlp parameter vector has wrong size");
  }
}

void check_batch(const TrainingBatch& batch) {
  if (batch.inputs.empty()) throw DomainError("empty batch");
  if (batch.inputs.size() != batch.targets.size()) {
    throw DomainError("batch inputs and targets differ in length");
  }
}

// Forward pass keeping hidden activations for the backward pass.
double forward_acts(const double* v, const FeatureVec& z, double* h1,
                    double* h2) {
  for (int i = 0; i < kNetHidden1; ++i) {
    const double* w = v + kOffW1 + i * kNetInput;
    double a = v[kOffB1 + i];
    a += w[0] * z.cx + w[1] * z.cy + w[2] * z.area + w[3] * z.aspect;
    h1[i] = a > 0.0 ? a : 0.0;
  }
  for (int i = 0; i < kNetHidden2; ++i) {
    const double* w = v + kOffW2 + i * kNetHidden1;
    double a = v[kOffB2 + i];
    for (int j = 0; j < kNetHidden1; ++j) a += w[j] * h1[j];
    h2[i] = a > 0.0 ? a : 0.0;
  }
  double out = v[kOffB3];
  for (int j = 0; j < kNetHidden2; ++j) out += v[kOffW3 + j] * h2[j];
  return out;
}

}  // namespace

double forward(const MlpParams& p, const FeatureVec& z) {
  check_params(p);
  double h1[kNetHidden1];
  double h2[kNetHidden2];
  return forward_acts(p.v.data(), z, h1, h2);
}

double loss_mse(const MlpParams& p, const TrainingBatch& batch) {
  check_params(p);
  check_batch(batch);
  double h1[kNetHidden1];
  double h2[kNetHidden2];
  double sum = 0.0;
  for (std::size_t n = 0; n < batch.inputs.size(); ++n) {
    const double r = forward_acts(p.v.data(), batch.inputs[n], h1, h2) -
                     batch.targets[n];
    sum += r * r;
  }
  return sum / static_cast<double>(batch.inputs.size());
}

std::vector<double> backward(const MlpParams& p, const TrainingBatch& batch) {
  check_params(p);
  check_batch(batch);
  std::vector<double> grad(kNetParamCount, 0.0);
  const double* v = p.v.data();
  double* g = grad.data();
  double h1[kNetHidden1];
  double h2[kNetHidden2];
  double d1[kNetHidden1];
  double d2[kNetHidden2];
  const double inv_n = 1.0 / static_cast<double>(batch.inputs.size());

  for (std::size_t n = 0; n < batch.inputs.size(); ++n) {
    const FeatureVec& z = batch.inputs[n];
    const double out = forward_acts(v, z, h1, h2);
    // d(mean residual^2)/d(out)
    const double dout = 2.0 * (out - batch.targets[n]) * inv_n;

    g[kOffB3] += dout;
    for (int j = 0; j < kNetHidden2; ++j) {
      g[kOffW3 + j] += dout * h2[j];
      // ReLU derivative: h2[j] > 0 iff the pre-activation was > 0.
      d2[j] = h2[j] > 0.0 ? dout * v[kOffW3 + j] : 0.0;
    }
    for (int j = 0; j < kNetHidden1; ++j) d1[j] = 0.0;
    for (int i = 0; i < kNetHidden2; ++i) {
      if (d2[i] == 0.0) continue;
      g[kOffB2 + i] += d2[i];
      double* gw = g + kOffW2 + i * kNetHidden1;
      const double* w = v + kOffW2 + i * kNetHidden1;
      for (int j = 0; j < kNetHidden1; ++j) {
        gw[j] += d2[i] * h1[j];
        d1[j] += d2[i] * w[j];
      }
    }
    for (int i = 0; i < kNetHidden1; ++i) {
      if (h1[i] <= 0.0 || d1[i] == 0.0) continue;
      g[kOffB1 + i] += d1[i];
      double* gw = g + kOffW1 + i * kNetInput;
      gw[0] += d1[i] * z.cx;
      gw[1] += d1[i] * z.cy;
      gw[2] += d1[i] * z.area;
      gw[3] += d1[i] * z.aspect;
    }
  }
  return grad;
}

void adam_step(MlpParams& p, AdamState& s, const std::vector<double>& grad,
               double lr, double beta1, double beta2, double eps) {
  check_params(p);
  if (grad.size() != p.v.size() || s.m.size() != p.v.size() ||
      s.v.size() != p.v.size()) {
    throw DomainError("adam_step: mismatched state sizes");
  }
  s.step += 1;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(s.step));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(s.step));
  for (std::size_t i = 0; i < p.v.size(); ++i) {
    s.m[i] = beta1 * s.m[i] + (1.0 - beta1) * grad[i];
    s.v[i] = beta2 * s.v[i] + (1.0 - beta2) * grad[i] * grad[i];
    const double mhat = s.m[i] / bc1;
    const double vhat = s.v[i] / bc2;
    p.v[i] -= lr * mhat / (std::sqrt(vhat) + eps);
  }
}

double grad_check(const MlpParams& p, const TrainingBatch& batch, double step) {
  check_params(p);
  check_batch(batch);
  const std::vector<double> analytic = backward(p, batch);
  MlpParams work = p;
  double worst = 0.0;
  for (int i = 0; i < kNetParamCount; ++i) {
    const double saved = work.v[i];
    work.v[i] = saved + step;
    const double lp = loss_mse(work, batch);
    work.v[i] = saved - step;
    const double lm = loss_mse(work, batch);
    work.v[i] = saved;
    const double numeric = (lp - lm) / (2.0 * step);
    const double denom =
        std::max(1e-12, std::abs(analytic[i]) + std::abs(numeric));
    const double rel = std::abs(analytic[i] - numeric) / denom;
    if (rel > worst) worst = rel;
  }
  return worst;
}

TrainResult train(const Dataset& dataset, const TrainConfig& cfg) {
  if (cfg.epochs < 1 || cfg.batch_size < 1 || cfg.lr <= 0.0) {
    throw ConfigError("train: epochs and batch_size must be >= 1, lr > 0");
  }

  TrainingBatch train_set;
  TrainingBatch val_set;
  for (const Sample& s : dataset.samples) {
    if (s.split == Split::kTrain) {
      train_set.inputs.push_back(s.feat);
      train_set.targets.push_back(s.theta);
    } else if (s.split == Split::kVal) {
      val_set.inputs.push_back(s.feat);
      val_set.targets.push_back(s.theta);
    }
  }
  if (train_set.inputs.empty()) {
    throw ValidationError("train: dataset has no train split");
  }

  TrainResult result;
  result.params = init_params(cfg.seed);
  AdamState adam = AdamState::zeros();
  RngStream shuffle_rng(derive_seed(cfg.seed, "shuffle"));

  std::vector<std::size_t> order(train_set.inputs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  TrainingBatch batch;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    for (std::size_t begin = 0; begin < order.size();
         begin += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t end = std::min(
          order.size(), begin + static_cast<std::size_t>(cfg.batch_size));
      batch.inputs.clear();
      batch.targets.clear();
      for (std::size_t k = begin; k < end; ++k) {
        batch.inputs.push_back(train_set.inputs[order[k]]);
        batch.targets.push_back(train_set.targets[order[k]]);
      }
      const std::vector<double> grad = backward(result.params, batch);
      adam_step(result.params, adam, grad, cfg.lr, cfg.beta1, cfg.beta2,
                cfg.eps);
    }
    result.history.train_loss.push_back(loss_mse(result.params, train_set));
    result.history.val_loss.push_back(
        val_set.inputs.empty()
            ? std::numeric_limits<double>::quiet_NaN()
            : loss_mse(result.params, val_set));
  }
  return result;
}

}  // namespace hsim
