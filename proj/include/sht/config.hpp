#pragma once

#include <cstdint>

#include "sht/appearance.hpp"
#include "sht/features.hpp"
#include "sht/particle_filter.hpp"
#include "sht/saliency.hpp"

namespace sht {

/// Every tunable of the tracker. Defaults are the values used by the CLI when
/// no config file overrides them.
struct TrackerConfig {
  // particle counts
  int n_particles = 600;
  int n_superpixel_candidates = 70;  ///< N_s
  int n_refine_candidates = 5;       ///< N_l, 1..10

  // global search
  double lambda_s = 0.05;
  double delta_s = 2.0;
  saliency::PenaltyForm penalty_form = saliency::PenaltyForm::exponential;
  double delta_b = 0.7;
  int sigma_s = 40;
  features::SkinModel skin;

  // integration thresholds
  double tau_c = 0.2;
  double tau_c_bar = 0.6;
  double tau_cw = 0.4;

  // appearance model
  double lambda = 0.01;
  double basis_lambda = 0.0;
  double delta_c = 0.1;
  int update_batch = 5;
  double forgetting = 0.95;
  int max_basis = 16;

  // superpixel matching
  int n_superpixels = 50;  ///< N_h
  double compactness = 10.0;
  int slic_iterations = 10;
  int color_patch_side = 64;
  double k_o = 10.0;
  double k_h = 0.5;
  double gamma = 0.95;
  double mu1 = 0.5;
  double mu2 = 0.5;

  // refinement
  double kappa = 0.005;
  int refine_max_iter = 10;
  double refine_tol = 1e-6;

  pf::MotionCovariance motion;
  std::uint64_t seed = 0;

  // ablations
  bool disable_global = false;      ///< NSGS
  bool disable_superpixel = false;  ///< NSM
  bool disable_refinement = false;  ///< NLRS

  /// Throws std::invalid_argument naming the first violated constraint.
  void validate() const;
};

}  // namespace sht
