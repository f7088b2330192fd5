#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sht/bench/metrics.hpp"
#include "sht/bench/sequence.hpp"
#include "sht/config.hpp"
#include "sht/tracker.hpp"

namespace sht::bench {

struct FrameRecord {
  int frame = 0;  ///< 1-based
  Box box;
  AffineState state;
  double confidence = 0.0;
  std::string mode;
};

struct TrackRun {
  std::string name;
  std::vector<FrameRecord> records;
  MetricsReport metrics;
};

struct TrackOptions {
  bool annotate = false;  ///< also write `frames/NNNN.png` with estimate (red) and groundtruth (green)
};

/// Tracks every frame of `seq` starting from its first groundtruth box.
TrackRun run_sequence(const SequenceSpec& seq, const TrackerConfig& config);

/// run_sequence plus `results.csv`, `metrics.json` and optional annotated frames under `out`.
TrackRun track_sequence(const SequenceSpec& seq, const TrackerConfig& config, const std::filesystem::path& out,
                        const TrackOptions& options = {});

void write_results_csv(const std::filesystem::path& file, const std::vector<FrameRecord>& records);
void write_metrics_json(const std::filesystem::path& file, const TrackRun& run);

/// Sequence directories listed one per line; blank lines and `#` comments are
/// skipped, relative paths resolve against the list file's directory.
std::vector<std::filesystem::path> read_sequence_list(const std::filesystem::path& file);

struct BenchSummary {
  std::vector<TrackRun> runs;
  double average_overlap = 0.0;       ///< mean over sequences
  double average_center_error = 0.0;  ///< mean over sequences
  SuccessCurve success;               ///< per-threshold mean over sequences
};

/// Runs every sequence into `out/<name>/` on up to `threads` workers (0 means
/// SHT_THREADS or the hardware concurrency) and writes `out/metrics.json`.
BenchSummary bench(const std::vector<std::filesystem::path>& sequences, const TrackerConfig& config,
                   const std::filesystem::path& out, const TrackOptions& options = {}, unsigned threads = 0);

/// Worker cap from SHT_THREADS, falling back to the hardware concurrency.
unsigned default_threads();

}  // namespace sht::bench
