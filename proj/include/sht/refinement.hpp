#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sht/affine.hpp"

namespace sht::refine {

inline constexpr int kMaxCandidates = 10;

struct ErrorPair {
  double appearance = 0.0;  ///< subspace reconstruction error
  double histogram = 0.0;   ///< 1 / (k_h + L_h)
};

/// Joint observation likelihood against the ideal (component-wise minimum)
/// point, each component scaled by its max-min range. A component whose
/// range is zero contributes 0.
std::vector<double> joint_likelihood(std::span<const ErrorPair> errors, double mu1, double mu2);

/// Candidate patches as columns (normalized patch minus dictionary mean), the
/// states they came from, and initial coefficients summing to 1.
struct CandidateMatrix {
  Eigen::MatrixXd columns;
  std::vector<AffineState> states;
  Eigen::VectorXd alpha0;

  /// Normalizes `confidences` to sum 1. Throws on shape mismatch, more than
  /// kMaxCandidates columns or non-positive confidence mass.
  static CandidateMatrix build(Eigen::MatrixXd columns, std::vector<AffineState> states,
                               std::span<const double> confidences);
};

/// Operators fixed for one frame:
///   beta  = f_beta * y_hat
///   alpha = f_alpha * y_hat + g_alpha
struct Operators {
  Eigen::MatrixXd f_beta;
  Eigen::MatrixXd f_alpha;
  Eigen::VectorXd g_alpha;
  /// Set when M^T M was singular and got a 1e-8 diagonal perturbation.
  bool regularized = false;
};

Operators precompute_operators(const Eigen::MatrixXd& candidates, const Eigen::MatrixXd& basis, double kappa);

struct RefineOptions {
  double kappa = 0.005;
  int max_iter = 10;
  double tol = 1e-6;
};

struct RefineSolution {
  Eigen::VectorXd alpha;  ///< clipped and renormalized
  Eigen::VectorXd beta;
  int iterations = 0;
  /// Objective after every half-step (beta update, then alpha update).
  std::vector<double> objective_trace;
  /// alpha^(1..n) and beta^(1..n) before clipping.
  std::vector<Eigen::VectorXd> alpha_history;
  std::vector<Eigen::VectorXd> beta_history;
  double pre_clip_objective = 0.0;
  double post_clip_objective = 0.0;
  bool regularized = false;
  bool fell_back = false;  ///< clipping left nothing; one-hot on the top candidate
};

/// ||M alpha - D beta||^2 + kappa ||beta||^2.
double objective(const Eigen::MatrixXd& candidates, const Eigen::MatrixXd& basis, const Eigen::VectorXd& alpha,
                 const Eigen::VectorXd& beta, double kappa);

/// Alternating minimization over beta (ridge) and alpha (sum-to-one
/// constrained least squares) from alpha0.
RefineSolution refine(const Eigen::MatrixXd& candidates, const Eigen::MatrixXd& basis, const Eigen::VectorXd& alpha0,
                      const RefineOptions& options = {});

inline RefineSolution refine(const CandidateMatrix& cand, const Eigen::MatrixXd& basis,
                             const RefineOptions& options = {}) {
  return refine(cand.columns, basis, cand.alpha0, options);
}

/// Component-wise convex combination of the states.
AffineState combine_states(std::span<const AffineState> states, const Eigen::VectorXd& alpha);

}  // namespace sht::refine
