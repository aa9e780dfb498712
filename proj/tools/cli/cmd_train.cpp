#include <cstdio>

#include "commands.hpp"
#include "headingsim/data.hpp"
#include "headingsim/net.hpp"
#include "headingsim/textio.hpp"
#include "jsonconf.hpp"

namespace hsim::cli {

int run_train(const TrainOpts& o) {
  const Dataset ds = load_dataset(o.data);

  TrainConfig cfg;
  cfg.epochs = o.epochs;
  cfg.lr = o.lr;
  cfg.batch_size = o.batch;
  cfg.seed = o.seed;
  const TrainResult r = train(ds, cfg);

  WeightsMeta meta;
  meta.config = cfg;
  meta.final_train_loss = r.history.train_loss.back();
  meta.final_val_loss = r.history.val_loss.back();
  save_weights(o.out, r.params, meta);

  std::vector<std::string> outputs{o.out};
  if (!o.history.empty()) {
    std::string csv = "epoch,train_loss_rad2,val_loss_rad2\n";
    for (std::size_t e = 0; e < r.history.train_loss.size(); ++e) {
      csv += std::to_string(e + 1) + ',' + fmt_double(r.history.train_loss[e]) +
             ',' + fmt_double(r.history.val_loss[e]) + '\n';
    }
    write_text_file(o.history, csv);
    outputs.push_back(o.history);
  }

  long long n_train = 0;
  for (const Sample& s : ds.samples) {
    if (s.split == Split::kTrain) ++n_train;
  }
  std::printf("trained %d epochs on %lld samples\n", o.epochs, n_train);
  std::printf("final_train_loss_rad2 %s\n",
              fmt_double(meta.final_train_loss).c_str());
  std::printf("final_val_loss_rad2 %s\n",
              fmt_double(meta.final_val_loss).c_str());
  std::printf("wrote %s\n", o.out.c_str());

  nlohmann::json params;
  params["epochs"] = o.epochs;
  params["lr"] = o.lr;
  params["batch"] = o.batch;
  params["seed"] = o.seed;
  write_manifest(manifest_path_for(o.out, o.manifest), "train", params,
                 {o.data}, outputs,
                 {{"dataset", "headingsim.dataset.v1"},
                  {"weights", "headingsim.weights.v1"}});
  return 0;
}

}  // namespace hsim::cli
