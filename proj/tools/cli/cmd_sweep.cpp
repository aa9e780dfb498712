#include <cstdio>
#include <vector>

#include "commands.hpp"
#include "headingsim/data.hpp"
#include "headingsim/metrics.hpp"
#include "headingsim/textio.hpp"
#include "jsonconf.hpp"

namespace hsim::cli {

int run_sweep(const SweepOpts& o) {
  const Dataset ds = load_dataset(o.data);

  TrainConfig base;
  base.epochs = o.epochs;
  base.lr = o.lr;
  base.batch_size = o.batch;

  const auto seeds = sweep_seeds(o.master_seed, o.seeds);
  const SweepSummary s = seed_sweep(ds, base, seeds, split_from_string(o.split));

  std::string csv =
      "seed,test_mae_deg,test_mse_deg2,test_rmse_deg,test_max_ae_deg,"
      "final_train_loss_rad2,final_val_loss_rad2\n";
  for (const SeedRun& r : s.runs) {
    csv += std::to_string(r.seed) + ',' + fmt_double(r.test.mae) + ',' +
           fmt_double(r.test.mse) + ',' + fmt_double(r.test.rmse) + ',' +
           fmt_double(r.test.max_ae) + ',' + fmt_double(r.final_train_loss) +
           ',' + fmt_double(r.final_val_loss) + '\n';
  }
  write_text_file(o.out, csv);
  std::vector<std::string> outputs{o.out};

  if (!o.hist.empty()) {
    std::vector<double> max_aes;
    for (const SeedRun& r : s.runs) max_aes.push_back(r.test.max_ae);
    std::string hist = "bin_lo_deg,bin_hi_deg,count\n";
    for (const HistogramBin& b : bin_histogram(max_aes, o.bin_width)) {
      hist += fmt_double(b.lo) + ',' + fmt_double(b.hi) + ',' +
              std::to_string(b.count) + '\n';
    }
    write_text_file(o.hist, hist);
    outputs.push_back(o.hist);
  }

  std::printf("seeds %d\n", o.seeds);
  std::printf("mean_max_ae_deg %s\n", fmt_double(s.mean_max_ae).c_str());
  std::printf("std_max_ae_deg %s\n", fmt_double(s.std_max_ae).c_str());
  std::printf("ci95_max_ae_deg %s\n", fmt_double(s.ci95_max_ae).c_str());
  std::printf("frac_below_1deg %s\n", fmt_double(s.frac_below_1deg).c_str());
  std::printf("mean_mae_deg %s\n", fmt_double(s.mean_mae).c_str());
  std::printf("std_mae_deg %s\n", fmt_double(s.std_mae).c_str());
  std::printf("wrote %s\n", o.out.c_str());

  nlohmann::json params;
  params["seeds"] = o.seeds;
  params["master_seed"] = o.master_seed;
  params["epochs"] = o.epochs;
  params["lr"] = o.lr;
  params["batch"] = o.batch;
  params["split"] = o.split;
  params["bin_width_deg"] = o.bin_width;
  write_manifest(manifest_path_for(o.out, o.manifest), "sweep", params,
                 {o.data}, outputs, {{"dataset", "headingsim.dataset.v1"}});
  return 0;
}

}  // namespace hsim::cli
