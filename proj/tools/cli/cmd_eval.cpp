#include <cstdio>
#include <vector>

#include "commands.hpp"
#include "headingsim/data.hpp"
#include "headingsim/errors.hpp"
#include "headingsim/metrics.hpp"
#include "headingsim/net.hpp"
#include "headingsim/textio.hpp"
#include "jsonconf.hpp"

namespace hsim::cli {

int run_eval(const EvalOpts& o) {
  if (o.oracle == !o.weights.empty()) {
    throw ConfigError("eval needs exactly one of --weights and --oracle");
  }
  const Dataset ds = load_dataset(o.data);
  const Split split = split_from_string(o.split);

  MlpParams params;
  if (!o.oracle) params = load_weights(o.weights).params;

  std::vector<double> preds, truths;
  std::vector<long long> frames;
  for (const Sample& s : ds.samples) {
    if (s.split != split) continue;
    truths.push_back(s.theta);
    preds.push_back(o.oracle ? s.theta : forward(params, s.feat));
    frames.push_back(s.frame_index);
  }
  if (preds.empty()) {
    throw ValidationError("eval: no '" + o.split + "' samples in " + o.data);
  }
  const RegMetrics m = regression_metrics(preds, truths);

  std::printf("split %s n %lld\n", o.split.c_str(), m.n);
  std::printf("mae_deg %.4f\n", m.mae);
  std::printf("mse_deg2 %.4f\n", m.mse);
  std::printf("rmse_deg %.4f\n", m.rmse);
  std::printf("max_ae_deg %.4f\n", m.max_ae);

  if (!o.preds.empty()) {
    std::string csv = "frame_index,truth_rad,pred_rad\n";
    for (std::size_t i = 0; i < preds.size(); ++i) {
      csv += std::to_string(frames[i]) + ',' + fmt_double(truths[i]) + ',' +
             fmt_double(preds[i]) + '\n';
    }
    write_text_file(o.preds, csv);

    nlohmann::json p;
    p["split"] = o.split;
    p["predictor"] = o.oracle ? "oracle" : o.weights;
    std::vector<std::string> inputs{o.data};
    if (!o.oracle) inputs.push_back(o.weights);
    write_manifest(manifest_path_for(o.preds, o.manifest), "eval", p, inputs,
                   {o.preds}, {{"dataset", "headingsim.dataset.v1"}});
  }
  return 0;
}

}  // namespace hsim::cli
