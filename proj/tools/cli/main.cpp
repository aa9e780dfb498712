#include <cstdio>
#include <exception>

#include <CLI11.hpp>

#include "commands.hpp"
#include "headingsim/errors.hpp"

namespace {

using namespace hsim::cli;

int dispatch(const CLI::App& app, const GenOpts& gen, const TrainOpts& train,
             const EvalOpts& eval, const SweepOpts& sweep, const SimOpts& sim,
             const PlotOpts& plot) {
  if (app.got_subcommand("gen")) return run_gen(gen);
  if (app.got_subcommand("train")) return run_train(train);
  if (app.got_subcommand("eval")) return run_eval(eval);
  if (app.got_subcommand("sweep")) return run_sweep(sweep);
  if (app.got_subcommand("sim")) return run_sim(sim);
  if (app.got_subcommand("plot")) return run_plot(plot);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Synthetic UAV-to-UGV bearing estimation: dataset generation, network "
      "training, evaluation, seed sweeps, closed loop simulation, plots."};
  app.require_subcommand(1);

  GenOpts gen;
  CLI::App* cgen = app.add_subcommand(
      "gen", "Generate a dataset of box features and bearing labels");
  cgen->add_option("--out", gen.out, "Output dataset path")->required();
  cgen->add_option("--world", gen.world_json,
                   "World config json (default: built-in world)");
  cgen->add_option("--count", gen.count, "Samples to generate");
  cgen->add_option("--seed", gen.seed, "Master seed");
  cgen->add_flag("--mirror", gen.mirror, "Add mirrored copies of kept samples");
  cgen->add_option("--manifest", gen.manifest,
                   "Manifest path (default: <out>.manifest.json)");

  TrainOpts train;
  CLI::App* ctrain =
      app.add_subcommand("train", "Train the bearing network on a dataset");
  ctrain->add_option("--data", train.data, "Dataset path")->required();
  ctrain->add_option("--out", train.out, "Output weights path")->required();
  ctrain->add_option("--history", train.history, "Per-epoch loss csv path");
  ctrain->add_option("--epochs", train.epochs, "Training epochs");
  ctrain->add_option("--lr", train.lr, "Learning rate");
  ctrain->add_option("--batch", train.batch, "Minibatch size");
  ctrain->add_option("--seed", train.seed, "Init and shuffle seed");
  ctrain->add_option("--manifest", train.manifest, "Manifest path");

  EvalOpts eval;
  CLI::App* ceval = app.add_subcommand(
      "eval", "Evaluate saved weights or the exact predictor on one split");
  ceval->add_option("--data", eval.data, "Dataset path")->required();
  ceval->add_option("--weights", eval.weights, "Weights path");
  ceval->add_flag("--oracle", eval.oracle,
                  "Use the exact bearing instead of weights");
  ceval->add_option("--split", eval.split, "train, val or test");
  ceval->add_option("--preds", eval.preds, "Per-sample prediction csv path");
  ceval->add_option("--manifest", eval.manifest, "Manifest path");

  SweepOpts sweep;
  CLI::App* csweep = app.add_subcommand(
      "sweep", "Train across many seeds and summarize the spread");
  csweep->add_option("--data", sweep.data, "Dataset path")->required();
  csweep->add_option("--out", sweep.out, "Per-seed results csv path")
      ->required();
  csweep->add_option("--hist", sweep.hist, "Histogram csv path");
  csweep->add_option("--seeds", sweep.seeds, "Number of seeds");
  csweep->add_option("--master-seed", sweep.master_seed,
                     "Master seed the per-run seeds derive from");
  csweep->add_option("--epochs", sweep.epochs, "Training epochs per run");
  csweep->add_option("--lr", sweep.lr, "Learning rate");
  csweep->add_option("--batch", sweep.batch, "Minibatch size");
  csweep->add_option("--bin-width", sweep.bin_width,
                     "Histogram bin width in degrees");
  csweep->add_option("--split", sweep.split, "Evaluation split");
  csweep->add_option("--manifest", sweep.manifest, "Manifest path");

  SimOpts sim;
  CLI::App* csim = app.add_subcommand(
      "sim", "Run closed loop yaw alignment episodes and report success");
  csim->add_option("--world", sim.world_json,
                   "World config json (default: built-in world)");
  csim->add_option("--weights", sim.weights, "Weights path");
  csim->add_flag("--oracle", sim.oracle,
                 "Steer from the exact bearing instead of weights");
  csim->add_option("--episodes", sim.episodes, "Episode count");
  csim->add_option("--frames", sim.frames, "Frames per episode");
  csim->add_option("--seed", sim.seed, "Campaign master seed");
  csim->add_option("--gain", sim.gain, "Proportional yaw gain");
  csim->add_option("--max-yaw-rate", sim.max_yaw_rate,
                   "Yaw rate limit in rad/s");
  csim->add_option("--dt", sim.dt, "Control period in seconds");
  csim->add_option("--band", sim.band_deg, "Alignment band in degrees");
  csim->add_option("--majority", sim.majority,
                   "In-band fraction required after lock");
  csim->add_flag("--fixed-spawn", sim.fixed_spawn,
                 "Place the target at the bearing bound instead of sampling");
  csim->add_option("--spawn-bearing-deg", sim.spawn_bearing_deg,
                   "Spawn bearing half-range in degrees");
  csim->add_option("--dist-min", sim.spawn_dist_min,
                   "Minimum spawn distance in meters");
  csim->add_option("--dist-max", sim.spawn_dist_max,
                   "Maximum spawn distance in meters");
  csim->add_option("--corner-sigma", sim.corner_sigma,
                   "Detector corner jitter in pixels");
  csim->add_option("--miss-prob", sim.miss_prob,
                   "Detector miss probability per frame");
  csim->add_option("--fp-rate", sim.fp_rate,
                   "Mean false positives per frame");
  csim->add_option("--conf-lo", sim.conf_lo, "Confidence range low end");
  csim->add_option("--conf-hi", sim.conf_hi, "Confidence range high end");
  csim->add_option("--out", sim.out, "Per-episode campaign csv path");
  csim->add_option("--trace-dir", sim.trace_dir,
                   "Directory for saved episode traces");
  csim->add_option("--save-traces", sim.save_traces,
                   "How many leading episodes to trace");
  csim->add_option("--manifest", sim.manifest, "Manifest path");

  PlotOpts plot;
  CLI::App* cplot = app.add_subcommand(
      "plot", "Render a csv or trace file as a standalone svg");
  cplot->add_option("--in", plot.in, "Input csv or trace path")->required();
  cplot->add_option("--out", plot.out, "Output svg path")->required();
  cplot->add_option("--title", plot.title, "Plot title override");
  cplot->add_option("--bin-width", plot.bin_width,
                    "Histogram bin width in degrees");
  cplot->add_option("--manifest", plot.manifest, "Manifest path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  sim.corner_sigma_set = csim->count("--corner-sigma") > 0;
  sim.miss_prob_set = csim->count("--miss-prob") > 0;
  sim.fp_rate_set = csim->count("--fp-rate") > 0;
  sim.conf_lo_set = csim->count("--conf-lo") > 0;
  sim.conf_hi_set = csim->count("--conf-hi") > 0;

  try {
    return dispatch(app, gen, train, eval, sweep, sim, plot);
  } catch (const hsim::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const hsim::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const hsim::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const hsim::GenerationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
