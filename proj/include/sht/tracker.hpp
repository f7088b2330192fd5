#pragma once

#include <string_view>
#include <vector>

#include "sht/affine.hpp"
#include "sht/appearance.hpp"
#include "sht/config.hpp"
#include "sht/image.hpp"
#include "sht/saliency.hpp"
#include "sht/superpixel.hpp"

namespace sht {

/// Which integration case produced a frame's estimate.
enum class SearchMode {
  init,            ///< first frame, estimate is the given box
  global_only,     ///< best global candidate above tau_c_bar, local search skipped
  global_local,    ///< local search sampled at the best global candidate
  local,           ///< local search at the last estimate (low confidence or global disabled)
  local_fallback,  ///< local search at the last estimate because no salient region survived
};

std::string_view to_string(SearchMode mode);

/// Integration case for a frame given the best global confidence. Equality
/// with tau_c_bar selects global_local, equality with tau_c selects local.
SearchMode integration_case(bool global_enabled, bool have_candidates, double best_confidence,
                            const TrackerConfig& config);

struct StepDiagnostics {
  SearchMode mode = SearchMode::init;
  double global_confidence = 0.0;  ///< best candidate confidence, 0 without candidates
  int regions = 0;
  double confidence = 0.0;         ///< appearance confidence of the final estimate
  bool weights_updated = false;
  bool template_updated = false;
  bool dictionary_absorbed = false;
  int refine_iterations = 0;
  std::vector<double> alpha;       ///< refinement coefficients when refinement ran
  AffineState top_candidate;       ///< highest joint-likelihood particle (MAP choice)
};

struct StepResult {
  AffineState estimate;
  Box box;
  StepDiagnostics diagnostics;
};

struct TrackerState {
  AffineState estimate;
  saliency::SaliencyWeights weights = saliency::SaliencyWeights::Zero();
  appearance::PcaDictionary dictionary{Eigen::VectorXd::Zero(appearance::kPatchDim)};
  superpixel::HistTemplate hist_template;
  saliency::Point last_center;  ///< previous target center in 200x200 map coordinates
  int frame_index = 0;
};

/// Saliency guided hierarchical tracker for a single target. Instances own
/// all per-sequence state; step() calls must be sequential.
class Tracker {
 public:
  /// Validates the config; throws std::invalid_argument when the box is not
  /// inside the frame.
  Tracker(const RgbFrame& first_frame, const Box& initial_box, TrackerConfig config);

  StepResult step(const RgbFrame& frame);

  const TrackerState& state() const { return state_; }
  const TrackerConfig& config() const { return config_; }

  /// Normalized 32x32 appearance vector for a state.
  static Eigen::VectorXd appearance_vector(const ScalarMap& gray, const AffineState& s);

 private:
  superpixel::HsvHistogram color_histogram(const RgbFrame& frame, const AffineState& s) const;

  TrackerConfig config_;
  TrackerState state_;
};

}  // namespace sht
