#pragma once

#include <cstdint>
#include <vector>

#include "headingsim/data.hpp"
#include "headingsim/net.hpp"

namespace hsim {

// Angular regression errors in degrees. Residuals are wrapped to
// (-pi, pi] before aggregation, so predictions on opposite sides of the
// +-180 degree seam score by their true angular distance.
struct RegMetrics {
  double mse = 0.0;     // deg^2
  double mae = 0.0;     // deg
  double rmse = 0.0;    // deg, always sqrt(mse) from the same accumulator
  double max_ae = 0.0;  // deg
  long long n = 0;
};

// Throws DomainError on empty or mismatched inputs. Angles in radians.
RegMetrics regression_metrics(const std::vector<double>& predictions,
                              const std::vector<double>& truths);

// Evaluates a parameter set on one split of a dataset.
RegMetrics evaluate_on_split(const MlpParams& p, const Dataset& ds, Split split);

struct SeedRun {
  std::uint64_t seed = 0;
  RegMetrics test;                  // metrics on the evaluation split
  double final_train_loss = 0.0;    // radians^2
  double final_val_loss = 0.0;      // radians^2
};

struct SweepSummary {
  std::vector<SeedRun> runs;
  double mean_max_ae = 0.0;     // deg
  double std_max_ae = 0.0;      // deg, sample standard deviation
  double ci95_max_ae = 0.0;     // deg, 1.96 * std / sqrt(n)
  double frac_below_1deg = 0.0; // fraction of runs with max_ae < 1 degree
  double mean_mae = 0.0;        // deg
  double std_mae = 0.0;         // deg
};

// Recomputes the aggregate fields of a summary from its runs. Used both to
// build summaries and to verify persisted ones.
void summarize_runs(SweepSummary& s);

// Trains one model per seed on the dataset (config identical apart from
// the seed) and evaluates each on eval_split. Iteration order is the seed
// list order and the reduction is order-fixed, so results are
// deterministic.
SweepSummary seed_sweep(const Dataset& ds, const TrainConfig& base,
                        const std::vector<std::uint64_t>& seeds,
                        Split eval_split = Split::kTest);

// Derived seed list for a sweep: n seeds from a master seed.
std::vector<std::uint64_t> sweep_seeds(std::uint64_t master, int n);

struct HistogramBin {
  double lo = 0.0;  // deg, inclusive
  double hi = 0.0;  // deg, exclusive
  long long count = 0;
};

// Fixed-width bins from 0 covering every value; empty leading bins kept,
// trailing bins trimmed to the last occupied one.
std::vector<HistogramBin> bin_histogram(const std::vector<double>& values,
                                        double bin_width);

}  // namespace hsim
