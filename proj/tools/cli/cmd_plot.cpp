#include <cmath>
#include <cstdio>
#include <vector>

#include "commands.hpp"
#include "csvio.hpp"
#include "headingsim/errors.hpp"
#include "headingsim/geom.hpp"
#include "headingsim/metrics.hpp"
#include "headingsim/simloop.hpp"
#include "headingsim/svgplot.hpp"
#include "headingsim/textio.hpp"
#include "jsonconf.hpp"

namespace hsim::cli {

namespace {

std::string plot_trace(const std::string& text, const std::string& title) {
  const EpisodeResult ep = deserialize_trace(text);
  Series err;
  err.label = "bearing error";
  for (const FrameRecord& r : ep.trace) err.values.push_back(r.error_deg);
  return render_series_svg(
      {err}, title.empty() ? "closed loop bearing error" : title, "frame",
      "error_deg");
}

std::string plot_sweep(const CsvTable& t, const std::string& title,
                       double bin_width) {
  const std::size_t col = t.column("test_max_ae_deg");
  std::vector<double> values;
  SweepSummary s;
  for (const auto& row : t.rows) {
    const double v = parse_double(row[col]);
    values.push_back(v);
    SeedRun r;
    r.test.max_ae = v;
    s.runs.push_back(r);
  }
  summarize_runs(s);
  return render_histogram_svg(
      bin_histogram(values, bin_width), s.mean_max_ae, s.ci95_max_ae,
      title.empty() ? "max abs error across seeds" : title, "max_ae_deg");
}

std::string plot_history(const CsvTable& t, const std::string& title) {
  const std::size_t ctrain = t.column("train_loss_rad2");
  const std::size_t cval = t.column("val_loss_rad2");
  Series train{"train", {}}, val{"val", {}};
  bool val_ok = true;
  for (const auto& row : t.rows) {
    train.values.push_back(parse_double(row[ctrain]));
    const double v = parse_double(row[cval]);
    if (!std::isfinite(v)) val_ok = false;
    val.values.push_back(v);
  }
  std::vector<Series> series{train};
  if (val_ok) series.push_back(val);
  return render_series_svg(series,
                           title.empty() ? "training loss" : title, "epoch",
                           "loss_rad2");
}

std::string plot_preds(const CsvTable& t, const std::string& title) {
  const std::size_t ct = t.column("truth_rad");
  const std::size_t cp = t.column("pred_rad");
  std::vector<double> xs, ys;
  for (const auto& row : t.rows) {
    xs.push_back(deg_from_rad(parse_double(row[ct])));
    ys.push_back(deg_from_rad(parse_double(row[cp])));
  }
  return render_scatter_svg(xs, ys,
                            title.empty() ? "predicted vs true bearing" : title,
                            "truth_deg", "pred_deg");
}

}  // namespace

int run_plot(const PlotOpts& o) {
  const std::string text = read_text_file(o.in);

  std::string svg;
  std::string kind;
  if (text.rfind("headingsim.trace.v1", 0) == 0) {
    kind = "trace";
    svg = plot_trace(text, o.title);
  } else {
    const CsvTable t = parse_csv(text);
    if (!t.header.empty() && t.header[0] == "seed") {
      kind = "sweep";
      svg = plot_sweep(t, o.title, o.bin_width);
    } else if (!t.header.empty() && t.header[0] == "epoch") {
      kind = "history";
      svg = plot_history(t, o.title);
    } else if (!t.header.empty() && t.header[0] == "frame_index") {
      kind = "predictions";
      svg = plot_preds(t, o.title);
    } else {
      throw FormatError("plot: unrecognized input format in " + o.in);
    }
  }

  write_text_file(o.out, svg);
  std::printf("plotted %s as %s\n", o.in.c_str(), kind.c_str());
  std::printf("wrote %s\n", o.out.c_str());

  nlohmann::json params;
  params["kind"] = kind;
  params["bin_width_deg"] = o.bin_width;
  write_manifest(manifest_path_for(o.out, o.manifest), "plot", params, {o.in},
                 {o.out}, {});
  return 0;
}

}  // namespace hsim::cli
