#include "headingsim/metrics.hpp"

#include <cmath>

#include "headingsim/errors.hpp"

namespace hsim {

RegMetrics regression_metrics(const std::vector<double>& predictions,
                              const std::vector<double>& truths) {
  if (predictions.empty()) throw DomainError("regression_metrics: empty input");
  if (predictions.size() != truths.size()) {
    throw DomainError("regression_metrics: length mismatch");
  }
  RegMetrics m;
  m.n = static_cast<long long>(predictions.size());
  double sum_sq = 0.0, sum_abs = 0.0, max_abs = 0.0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    const double r = deg_from_rad(wrap_angle(predictions[i] - truths[i]));
    const double a = std::abs(r);
    sum_sq += r * r;
    sum_abs += a;
    if (a > max_abs) max_abs = a;
  }
  const double n = static_cast<double>(m.n);
  m.mse = sum_sq / n;
  m.mae = sum_abs / n;
  m.rmse = std::sqrt(m.mse);
  m.max_ae = max_abs;
  return m;
}

RegMetrics evaluate_on_split(const MlpParams& p, const Dataset& ds,
                             Split split) {
  std::vector<double> preds, truths;
  for (const Sample& s : ds.samples) {
    if (s.split != split) continue;
    preds.push_back(forward(p, s.feat));
    truths.push_back(s.theta);
  }
  if (preds.empty()) {
    throw ValidationError(std::string("evaluate_on_split: no '") +
                          to_string(split) + "' samples in dataset");
  }
  return regression_metrics(preds, truths);
}

void summarize_runs(SweepSummary& s) {
  const std::size_t n = s.runs.size();
  if (n == 0) throw DomainError("summarize_runs: no runs");
  double sum_max = 0.0, sum_mae = 0.0;
  long long below = 0;
  for (const SeedRun& r : s.runs) {
    sum_max += r.test.max_ae;
    sum_mae += r.test.mae;
    if (r.test.max_ae < 1.0) ++below;
  }
  const double dn = static_cast<double>(n);
  s.mean_max_ae = sum_max / dn;
  s.mean_mae = sum_mae / dn;
  s.frac_below_1deg = static_cast<double>(below) / dn;

  if (n >= 2) {
    double ss_max = 0.0, ss_mae = 0.0;
    for (const SeedRun& r : s.runs) {
      const double dmax = r.test.max_ae - s.mean_max_ae;
      const double dmae = r.test.mae - s.mean_mae;
      ss_max += dmax * dmax;
      ss_mae += dmae * dmae;
    }
    s.std_max_ae = std::sqrt(ss_max / (dn - 1.0));
    s.std_mae = std::sqrt(ss_mae / (dn - 1.0));
  } else {
    s.std_max_ae = 0.0;
    s.std_mae = 0.0;
  }
  s.ci95_max_ae = 1.96 * s.std_max_ae / std::sqrt(dn);
}

SweepSummary seed_sweep(const Dataset& ds, const TrainConfig& base,
                        const std::vector<std::uint64_t>& seeds,
                        Split eval_split) {
  if (seeds.empty()) throw ConfigError("seed_sweep: empty seed list");
  SweepSummary out;
  out.runs.reserve(seeds.size());
  for (std::uint64_t seed : seeds) {
    TrainConfig cfg = base;
    cfg.seed = seed;
    const TrainResult tr = train(ds, cfg);
    SeedRun run;
    run.seed = seed;
    run.test = evaluate_on_split(tr.params, ds, eval_split);
    run.final_train_loss = tr.history.train_loss.back();
    run.final_val_loss = tr.history.val_loss.back();
    out.runs.push_back(run);
  }
  summarize_runs(out);
  return out;
}

std::vector<std::uint64_t> sweep_seeds(std::uint64_t master, int n) {
  if (n < 1) throw ConfigError("sweep_seeds: n < 1");
  std::vector<std::uint64_t> seeds;
  seeds.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    seeds.push_back(derive_seed(master, "sweep", static_cast<std::uint64_t>(i)));
  }
  return seeds;
}

std::vector<HistogramBin> bin_histogram(const std::vector<double>& values,
                                        double bin_width) {
  if (bin_width <= 0.0) throw DomainError("bin_histogram: bin_width <= 0");
  if (values.empty()) return {};
  double max_v = 0.0;
  for (double v : values) {
    if (v < 0.0) throw DomainError("bin_histogram: negative value");
    if (v > max_v) max_v = v;
  }
  const std::size_t nbins =
      static_cast<std::size_t>(std::floor(max_v / bin_width)) + 1;
  std::vector<HistogramBin> bins(nbins);
  for (std::size_t b = 0; b < nbins; ++b) {
    bins[b].lo = static_cast<double>(b) * bin_width;
    bins[b].hi = static_cast<double>(b + 1) * bin_width;
  }
  for (double v : values) {
    std::size_t b = static_cast<std::size_t>(std::floor(v / bin_width));
    if (b >= nbins) b = nbins - 1;
    ++bins[b].count;
  }
  return bins;
}

}  // namespace hsim
