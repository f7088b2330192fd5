#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sht/bench/config_json.hpp"
#include "sht/bench/runner.hpp"
#include "sht/bench/sequence.hpp"
#include "sht/bench/synth.hpp"

namespace fs = std::filesystem;
using namespace sht;

namespace {

TrackerConfig make_config(const std::string& file, const std::vector<std::string>& ablations,
                          const std::uint64_t* seed) {
  TrackerConfig cfg = file.empty() ? TrackerConfig{} : bench::load_config(file);
  for (const auto& a : ablations) {
    if (a == "nsgs") cfg.disable_global = true;
    else if (a == "nsm") cfg.disable_superpixel = true;
    else if (a == "nlrs") cfg.disable_refinement = true;
  }
  if (seed) cfg.seed = *seed;
  cfg.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Saliency guided hierarchical visual tracker"};
  app.require_subcommand(1);

  std::string seq_dir, config_file, out_dir, seq_list;
  std::vector<std::string> ablations;
  std::uint64_t seed = 0;
  bool annotate = false;
  unsigned threads = 0;
  bench::SynthOptions synth;
  std::string scenario_name = "smooth-motion";

  const auto ablation_check = CLI::IsMember({"nsgs", "nsm", "nlrs"});

  auto* track = app.add_subcommand("track", "Track one OTB-layout sequence");
  track->add_option("--seq", seq_dir, "Sequence directory (img/ and groundtruth_rect.txt)")->required();
  track->add_option("--config", config_file, "JSON tracker config");
  track->add_option("--out", out_dir, "Output directory")->required();
  auto* track_seed = track->add_option("--seed", seed, "Override the config seed");
  track->add_option("--ablate", ablations, "Disable a component (repeatable)")->check(ablation_check);
  track->add_flag("--annotate", annotate, "Write annotated PNG frames");

  auto* bench_cmd = app.add_subcommand("bench", "Track many sequences and aggregate metrics");
  bench_cmd->add_option("--seq-list", seq_list, "File listing sequence directories")->required();
  bench_cmd->add_option("--config", config_file, "JSON tracker config");
  bench_cmd->add_option("--out", out_dir, "Output directory")->required();
  auto* bench_seed = bench_cmd->add_option("--seed", seed, "Override the config seed");
  bench_cmd->add_option("--ablate", ablations, "Disable a component (repeatable)")->check(ablation_check);
  bench_cmd->add_flag("--annotate", annotate, "Write annotated PNG frames");
  bench_cmd->add_option("--threads", threads, "Worker count (default SHT_THREADS or all cores)");

  auto* synth_cmd = app.add_subcommand("synth", "Render a synthetic sequence");
  synth_cmd->add_option("--scenario", scenario_name, "smooth-motion, abrupt-jump, occlusion or color-constant-deformation")
      ->check(CLI::IsMember({"smooth-motion", "abrupt-jump", "occlusion", "color-constant-deformation"}));
  synth_cmd->add_option("--out", out_dir, "Output directory")->required();
  synth_cmd->add_option("--seed", synth.seed, "Random seed");
  synth_cmd->add_option("--frames", synth.frames, "Frame count")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--width", synth.width, "Frame width");
  synth_cmd->add_option("--height", synth.height, "Frame height");
  synth_cmd->add_option("--speed", synth.speed, "Max displacement per frame");

  CLI11_PARSE(app, argc, argv);

  try {
    if (track->parsed()) {
      const TrackerConfig cfg = make_config(config_file, ablations, track_seed->count() ? &seed : nullptr);
      const auto seq = bench::load_sequence(seq_dir);
      const auto run = bench::track_sequence(seq, cfg, out_dir, {annotate});
      std::cout << seq.name << ": " << run.records.size() << " frames, average overlap "
                << run.metrics.average_overlap << ", average center error " << run.metrics.average_center_error
                << "\n";
    } else if (bench_cmd->parsed()) {
      const TrackerConfig cfg = make_config(config_file, ablations, bench_seed->count() ? &seed : nullptr);
      const auto summary = bench::bench(bench::read_sequence_list(seq_list), cfg, out_dir, {annotate}, threads);
      for (const auto& run : summary.runs) {
        std::cout << run.name << ": average overlap " << run.metrics.average_overlap << ", average center error "
                  << run.metrics.average_center_error << "\n";
      }
      std::cout << "mean over " << summary.runs.size() << " sequences: average overlap " << summary.average_overlap
                << ", average center error " << summary.average_center_error << "\n";
    } else if (synth_cmd->parsed()) {
      synth.scenario = bench::parse_scenario(scenario_name);
      const auto seq = bench::synth_sequence(synth, out_dir);
      std::cout << "wrote " << seq.frames.size() << " frames to " << out_dir << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "sht: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
