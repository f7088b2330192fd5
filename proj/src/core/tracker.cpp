#include "sht/tracker.hpp"

#include <algorithm>
#include <stdexcept>

#include "sht/particle_filter.hpp"
#include "sht/refinement.hpp"

namespace sht {

std::string_view to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::init: return "init";
    case SearchMode::global_only: return "global-only";
    case SearchMode::global_local: return "global-local";
    case SearchMode::local: return "local";
    case SearchMode::local_fallback: return "local-fallback";
  }
  return "unknown";
}

SearchMode integration_case(bool global_enabled, bool have_candidates, double best_confidence,
                            const TrackerConfig& config) {
  if (!global_enabled) return SearchMode::local;
  if (!have_candidates) return SearchMode::local_fallback;
  if (best_confidence > config.tau_c_bar) return SearchMode::global_only;
  if (best_confidence > config.tau_c) return SearchMode::global_local;
  return SearchMode::local;
}

Eigen::VectorXd Tracker::appearance_vector(const ScalarMap& gray, const AffineState& s) {
  return appearance::normalize_patch(features::affine_crop(gray, s, appearance::kPatchSide));
}

superpixel::HsvHistogram Tracker::color_histogram(const RgbFrame& frame, const AffineState& s) const {
  const RgbFrame patch = features::affine_crop(frame, s, config_.color_patch_side);
  const auto seg = superpixel::slic(patch, {config_.n_superpixels, config_.compactness, config_.slic_iterations});
  return superpixel::histogram(seg, config_.k_o);
}

Tracker::Tracker(const RgbFrame& first_frame, const Box& initial_box, TrackerConfig config)
    : config_(std::move(config)) {
  config_.validate();
  const Box& b = initial_box;
  if (!(b.w > 0.0 && b.h > 0.0 && b.x >= 0.0 && b.y >= 0.0 && b.x + b.w <= first_frame.width() &&
        b.y + b.h <= first_frame.height())) {
    throw std::invalid_argument("Tracker: initial box must lie inside the first frame");
  }
  state_.estimate = state_from_box(b);

  const auto stack = features::build_feature_stack(first_frame, config_.skin);
  state_.weights = saliency::update_weights(
      stack, saliency::groundtruth_map(b, first_frame.width(), first_frame.height()), config_.lambda_s);

  const ScalarMap gray = features::intensity(first_frame);
  state_.dictionary = appearance::PcaDictionary(
      appearance_vector(gray, state_.estimate), 1.0, {config_.lambda, config_.basis_lambda},
      {config_.update_batch, config_.forgetting, config_.max_basis});

  state_.hist_template = {color_histogram(first_frame, state_.estimate), config_.gamma};
  state_.last_center =
      saliency::to_map_coords(b.center_x(), b.center_y(), first_frame.width(), first_frame.height());
  state_.frame_index = 1;
}

StepResult Tracker::step(const RgbFrame& frame) {
  const TrackerConfig& cfg = config_;
  const int fw = frame.width();
  const int fh = frame.height();
  const ScalarMap gray = features::intensity(frame);
  const AffineState last = state_.estimate;

  StepResult result;
  StepDiagnostics& diag = result.diagnostics;

  // Global search.
  features::FeatureStack stack;
  AffineState best_global;
  bool have_global = false;
  if (!cfg.disable_global) {
    stack = features::build_feature_stack(frame, cfg.skin);
    const ScalarMap raw = saliency::combine(stack, state_.weights);
    // The penalty measures distances between pixel indices, half a pixel off the continuous center.
    const saliency::Point pc{state_.last_center.x - 0.5, state_.last_center.y - 0.5};
    const ScalarMap penalized = saliency::center_penalty(raw, pc, cfg.delta_s, cfg.penalty_form);
    const auto regions = saliency::connected_regions(saliency::binarize(penalized, cfg.delta_b), cfg.sigma_s);
    diag.regions = static_cast<int>(regions.size());
    // Region centers are pixel indices; the candidate sits on the pixel's middle.
    std::vector<saliency::Point> centers;
    for (const auto& r : regions) centers.push_back({r.center.x + 0.5, r.center.y + 0.5});
    for (const AffineState& cand : saliency::generate_candidates(centers, last, fw, fh)) {
      const double conf = appearance::evaluate(appearance_vector(gray, cand), state_.dictionary, cfg.delta_c).confidence;
      if (!have_global || conf > diag.global_confidence) {
        diag.global_confidence = conf;
        best_global = cand;
        have_global = true;
      }
    }
  }

  AffineState estimate;
  AffineState sample_center = last;
  diag.mode = integration_case(!cfg.disable_global, have_global, diag.global_confidence, cfg);
  if (diag.mode == SearchMode::global_local) {
    sample_center.tx = best_global.tx;
    sample_center.ty = best_global.ty;
  }

  if (diag.mode == SearchMode::global_only) {
    estimate = best_global;
    diag.top_candidate = best_global;
  } else {
    // Local search: appearance confidences for every particle.
    const auto states = pf::propagate(sample_center, cfg.motion, cfg.n_particles, cfg.seed,
                                      static_cast<std::uint64_t>(state_.frame_index));
    std::vector<Eigen::VectorXd> vectors(states.size());
    std::vector<double> confidence(states.size());
    std::vector<double> recon(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
      vectors[i] = appearance_vector(gray, states[i]);
      const auto ev = appearance::evaluate(vectors[i], state_.dictionary, cfg.delta_c);
      confidence[i] = ev.confidence;
      recon[i] = ev.reconstruction_error;
    }
    const auto shortlist = pf::top_k_indices(confidence, cfg.n_superpixel_candidates);

    std::vector<double> fused(shortlist.size());
    std::vector<superpixel::HsvHistogram> hists;
    if (cfg.disable_superpixel) {
      for (std::size_t j = 0; j < shortlist.size(); ++j) fused[j] = confidence[shortlist[j]];
    } else {
      std::vector<refine::ErrorPair> errors;
      hists.reserve(shortlist.size());
      for (int idx : shortlist) {
        hists.push_back(color_histogram(frame, states[idx]));
        const double lh = superpixel::similarity(hists.back(), state_.hist_template.hist);
        errors.push_back({recon[idx], superpixel::hist_error(lh, cfg.k_h)});
      }
      fused = refine::joint_likelihood(errors, cfg.mu1, cfg.mu2);
    }

    const auto finalists = pf::top_k_indices(fused, cfg.n_refine_candidates);
    const int best = shortlist[finalists[0]];
    diag.top_candidate = states[best];
    if (cfg.disable_refinement) {
      estimate = states[best];
    } else {
      Eigen::MatrixXd columns(appearance::kPatchDim, static_cast<Eigen::Index>(finalists.size()));
      std::vector<AffineState> cand_states;
      std::vector<double> cand_conf;
      for (std::size_t j = 0; j < finalists.size(); ++j) {
        const int idx = shortlist[finalists[j]];
        columns.col(static_cast<Eigen::Index>(j)) = vectors[idx] - state_.dictionary.mean();
        cand_states.push_back(states[idx]);
        cand_conf.push_back(fused[finalists[j]]);
      }
      const auto cand = refine::CandidateMatrix::build(std::move(columns), std::move(cand_states), cand_conf);
      const auto sol = refine::refine(cand, state_.dictionary.basis(),
                                      {cfg.kappa, cfg.refine_max_iter, cfg.refine_tol});
      estimate = refine::combine_states(cand.states, sol.alpha);
      diag.refine_iterations = sol.iterations;
      diag.alpha.assign(sol.alpha.data(), sol.alpha.data() + sol.alpha.size());
    }

    if (!cfg.disable_superpixel) {
      state_.hist_template = superpixel::update_template(state_.hist_template, hists[finalists[0]]);
      diag.template_updated = true;
    }
  }

  // Keep the target center on the frame so later searches can recover.
  estimate.tx = std::clamp(estimate.tx, 0.0, static_cast<double>(fw));
  estimate.ty = std::clamp(estimate.ty, 0.0, static_cast<double>(fh));

  const Eigen::VectorXd y = appearance_vector(gray, estimate);
  diag.confidence = appearance::evaluate(y, state_.dictionary, cfg.delta_c).confidence;
  diag.dictionary_absorbed = state_.dictionary.add_observation(y);

  const Box box = box_from_state(estimate);
  if (!cfg.disable_global && diag.global_confidence > cfg.tau_cw) {
    state_.weights = saliency::update_weights(stack, saliency::groundtruth_map(box, fw, fh), cfg.lambda_s);
    diag.weights_updated = true;
  }

  state_.estimate = estimate;
  state_.last_center = saliency::to_map_coords(estimate.tx, estimate.ty, fw, fh);
  ++state_.frame_index;

  result.estimate = estimate;
  result.box = box;
  return result;
}

}  // namespace sht
