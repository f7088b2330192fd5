#include "sht/bench/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "sht/bench/image_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace sht::bench {

namespace {

std::string frame_name(int frame) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d.png", frame);
  return buf;
}

json curve_json(const SuccessCurve& c) {
  return {{"thresholds", c.thresholds}, {"rates", c.rates}};
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

}  // namespace

TrackRun run_sequence(const SequenceSpec& seq, const TrackerConfig& config) {
  if (seq.frames.empty() || seq.groundtruth.empty()) {
    throw std::runtime_error(seq.name + ": needs at least one frame and one groundtruth box");
  }
  TrackRun run;
  run.name = seq.name;
  const RgbFrame first = read_frame(seq.frames.front());
  Tracker tracker(first, seq.groundtruth.front(), config);
  run.records.push_back({1, seq.groundtruth.front(), tracker.state().estimate, 1.0, std::string(to_string(SearchMode::init))});
  for (std::size_t i = 1; i < seq.frames.size(); ++i) {
    const StepResult r = tracker.step(read_frame(seq.frames[i]));
    run.records.push_back({static_cast<int>(i + 1), r.box, r.estimate, r.diagnostics.confidence,
                           std::string(to_string(r.diagnostics.mode))});
  }
  std::vector<Box> predicted;
  for (const auto& rec : run.records) predicted.push_back(rec.box);
  run.metrics = evaluate(predicted, seq.groundtruth);
  return run;
}

void write_results_csv(const fs::path& file, const std::vector<FrameRecord>& records) {
  std::string text = "frame,x,y,w,h,confidence,mode\n";
  for (const auto& r : records) {
    text += std::to_string(r.frame) + ',' + format_number(r.box.x) + ',' + format_number(r.box.y) + ',' +
            format_number(r.box.w) + ',' + format_number(r.box.h) + ',' + format_number(r.confidence) + ',' +
            r.mode + '\n';
  }
  write_text(file, text);
}

void write_metrics_json(const fs::path& file, const TrackRun& run) {
  json modes = json::object();
  for (const auto& r : run.records) modes[r.mode] = modes.value(r.mode, 0) + 1;
  const json doc = {{"sequence", run.name},
                    {"frames", run.records.size()},
                    {"scored_frames", run.metrics.overlaps.size()},
                    {"average_overlap", run.metrics.average_overlap},
                    {"average_center_error", run.metrics.average_center_error},
                    {"success_curve", curve_json(run.metrics.success)},
                    {"modes", modes}};
  write_text(file, doc.dump(2) + "\n");
}

TrackRun track_sequence(const SequenceSpec& seq, const TrackerConfig& config, const fs::path& out,
                        const TrackOptions& options) {
  fs::create_directories(out);
  TrackRun run = run_sequence(seq, config);
  write_results_csv(out / "results.csv", run.records);
  write_metrics_json(out / "metrics.json", run);
  if (options.annotate) {
    fs::create_directories(out / "frames");
    for (std::size_t i = 0; i < run.records.size(); ++i) {
      std::vector<Overlay> overlays;
      if (i < seq.groundtruth.size()) overlays.push_back({state_from_box(seq.groundtruth[i]), 0, 255, 0});
      overlays.push_back({run.records[i].state, 255, 0, 0});
      write_annotated(out / "frames" / frame_name(run.records[i].frame), read_frame(seq.frames[i]), overlays);
    }
  }
  return run;
}

std::vector<fs::path> read_sequence_list(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open sequence list " + file.string());
  std::vector<fs::path> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    fs::path p = line.substr(b, e - b + 1);
    if (p.is_relative()) p = file.parent_path() / p;
    out.push_back(p);
  }
  if (out.empty()) throw std::runtime_error("sequence list " + file.string() + " names no sequences");
  return out;
}

unsigned default_threads() {
  if (const char* env = std::getenv("SHT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

BenchSummary bench(const std::vector<fs::path>& sequences, const TrackerConfig& config, const fs::path& out,
                   const TrackOptions& options, unsigned threads) {
  if (sequences.empty()) throw std::runtime_error("bench: no sequences");
  std::vector<SequenceSpec> specs;
  std::set<std::string> names;
  for (const auto& dir : sequences) {
    specs.push_back(load_sequence(dir));
    if (!names.insert(specs.back().name).second) {
      throw std::runtime_error("bench: duplicate sequence name '" + specs.back().name + "'");
    }
  }

  BenchSummary summary;
  summary.runs.resize(specs.size());
  std::vector<std::string> errors(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        summary.runs[i] = track_sequence(specs[i], config, out / specs[i].name, options);
      } catch (const std::exception& e) {
        errors[i] = specs[i].name + ": " + e.what();
      }
    }
  };
  const unsigned n_workers =
      std::min<unsigned>(threads ? threads : default_threads(), static_cast<unsigned>(specs.size()));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n_workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error("bench: " + e);
  }

  const double n = static_cast<double>(summary.runs.size());
  summary.success.thresholds = summary.runs.front().metrics.success.thresholds;
  json per_seq = json::array();
  for (const auto& run : summary.runs) {
    summary.average_overlap += run.metrics.average_overlap / n;
    summary.average_center_error += run.metrics.average_center_error / n;
    for (int k = 0; k < kSuccessThresholds; ++k) summary.success.rates[k] += run.metrics.success.rates[k] / n;
    per_seq.push_back({{"sequence", run.name},
                       {"average_overlap", run.metrics.average_overlap},
                       {"average_center_error", run.metrics.average_center_error},
                       {"success_curve", curve_json(run.metrics.success)}});
  }
  const json doc = {{"sequences", per_seq},
                    {"average_overlap", summary.average_overlap},
                    {"average_center_error", summary.average_center_error},
                    {"success_curve", curve_json(summary.success)}};
  fs::create_directories(out);
  write_text(out / "metrics.json", doc.dump(2) + "\n");
  return summary;
}

}  // namespace sht::bench
