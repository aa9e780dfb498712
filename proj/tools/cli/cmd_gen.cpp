#include <cstdio>

#include "commands.hpp"
#include "headingsim/data.hpp"
#include "headingsim/textio.hpp"
#include "jsonconf.hpp"

namespace hsim::cli {

int run_gen(const GenOpts& o) {
  WorldConfig world =
      o.world_json.empty() ? default_world() : world_from_json_file(o.world_json);
  if (o.mirror) world.mirror_augment = true;

  GenStats stats;
  const Dataset ds = build_dataset(world, o.count, o.seed, &stats);
  save_dataset(o.out, ds);

  std::printf("wrote %s\n", o.out.c_str());
  std::printf("samples %lld\n", static_cast<long long>(ds.samples.size()));
  long long train = 0, val = 0, test = 0;
  for (const Sample& s : ds.samples) {
    if (s.split == Split::kTrain) ++train;
    if (s.split == Split::kVal) ++val;
    if (s.split == Split::kTest) ++test;
  }
  std::printf("split train %lld val %lld test %lld\n", train, val, test);
  std::printf(
      "stepped %lld dropped_static %lld dropped_projection %lld "
      "dropped_detection %lld\n",
      stats.stepped, stats.dropped_static, stats.dropped_projection,
      stats.dropped_detection);
  std::printf("fingerprint %s\n", to_hex16(ds.fingerprint).c_str());

  nlohmann::json params;
  params["world"] = o.world_json.empty() ? "builtin" : o.world_json;
  params["count"] = o.count;
  params["seed"] = o.seed;
  params["mirror_augment"] = world.mirror_augment;
  params["fingerprint"] = to_hex16(ds.fingerprint);
  write_manifest(manifest_path_for(o.out, o.manifest), "gen", params, {},
                 {o.out}, {{"dataset", "headingsim.dataset.v1"}});
  return 0;
}

}  // namespace hsim::cli
