#include "sht/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sht/refinement.hpp"

namespace sht {

namespace {
void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("TrackerConfig: " + what);
}
}  // namespace

void TrackerConfig::validate() const {
  require(n_particles >= 1, "n_particles must be >= 1");
  require(n_superpixel_candidates >= 1 && n_superpixel_candidates <= n_particles,
          "n_superpixel_candidates must be in [1, n_particles]");
  require(n_refine_candidates >= 1 && n_refine_candidates <= refine::kMaxCandidates &&
              n_refine_candidates <= n_superpixel_candidates,
          "n_refine_candidates must be in [1, min(10, n_superpixel_candidates)]");
  require(lambda_s > 0.0, "lambda_s must be positive");
  require(delta_s > 0.0, "delta_s must be positive");
  require(delta_b > 0.0 && delta_b < 1.0, "delta_b must be in (0,1)");
  require(sigma_s >= 1, "sigma_s must be >= 1");
  require(skin.std_r > 0.0 && skin.std_g > 0.0, "skin standard deviations must be positive");
  require(tau_c < tau_cw && tau_cw < tau_c_bar, "thresholds must satisfy tau_c < tau_cw < tau_c_bar");
  require(tau_c >= 0.2 && tau_c <= 0.45, "tau_c must be in [0.2, 0.45]");
  require(tau_c_bar >= 0.4 && tau_c_bar <= 0.8, "tau_c_bar must be in [0.4, 0.8]");
  require(lambda > 0.0, "lambda must be positive");
  require(basis_lambda >= 0.0, "basis_lambda must be >= 0");
  require(delta_c >= 0.0, "delta_c must be >= 0");
  require(update_batch >= 1, "update_batch must be >= 1");
  require(forgetting > 0.0 && forgetting <= 1.0, "forgetting must be in (0,1]");
  require(max_basis >= 1, "max_basis must be >= 1");
  require(n_superpixels >= 1 && n_superpixels <= color_patch_side * color_patch_side,
          "n_superpixels must be in [1, color_patch_side^2]");
  require(compactness > 0.0, "compactness must be positive");
  require(slic_iterations >= 1, "slic_iterations must be >= 1");
  require(color_patch_side >= 1, "color_patch_side must be >= 1");
  require(k_o > 0.0, "k_o must be positive");
  require(k_h > 0.0, "k_h must be positive");
  require(gamma >= 0.0 && gamma <= 1.0, "gamma must be in [0,1]");
  require(mu1 >= 0.0 && mu2 >= 0.0 && std::abs(mu1 + mu2 - 1.0) <= 1e-9, "mu1 + mu2 must equal 1");
  require(kappa > 0.0, "kappa must be positive");
  require(refine_max_iter >= 1, "refine_max_iter must be >= 1");
  require(refine_tol >= 0.0, "refine_tol must be >= 0");
  for (double s : motion.sigma) require(s >= 0.0 && std::isfinite(s), "motion sigmas must be finite and >= 0");
}

}  // namespace sht
