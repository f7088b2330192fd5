#include "sht/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sht::refine {

namespace {
constexpr double kSingularRcond = 1e-12;
constexpr double kDiagonalPerturbation = 1e-8;
}  // namespace

std::vector<double> joint_likelihood(std::span<const ErrorPair> errors, double mu1, double mu2) {
  if (errors.empty()) throw std::invalid_argument("joint_likelihood: no candidates");
  if (!(mu1 >= 0.0 && mu2 >= 0.0) || std::abs(mu1 + mu2 - 1.0) > 1e-9) {
    throw std::invalid_argument("joint_likelihood: mu1, mu2 must be >= 0 and sum to 1");
  }
  double min1 = errors[0].appearance, max1 = min1, min2 = errors[0].histogram, max2 = min2;
  for (const ErrorPair& e : errors) {
    min1 = std::min(min1, e.appearance);
    max1 = std::max(max1, e.appearance);
    min2 = std::min(min2, e.histogram);
    max2 = std::max(max2, e.histogram);
  }
  const double range1 = max1 - min1;
  const double range2 = max2 - min2;
  std::vector<double> out;
  out.reserve(errors.size());
  for (const ErrorPair& e : errors) {
    const double t1 = range1 > 0.0 ? (e.appearance - min1) / range1 : 0.0;
    const double t2 = range2 > 0.0 ? (e.histogram - min2) / range2 : 0.0;
    out.push_back(std::exp(-mu1 * t1 - mu2 * t2));
  }
  return out;
}

CandidateMatrix CandidateMatrix::build(Eigen::MatrixXd columns, std::vector<AffineState> states,
                                       std::span<const double> confidences) {
  const auto n = columns.cols();
  if (n < 1 || n > kMaxCandidates) throw std::invalid_argument("CandidateMatrix: need 1..10 candidates");
  if (static_cast<std::size_t>(n) != states.size() || static_cast<std::size_t>(n) != confidences.size()) {
    throw std::invalid_argument("CandidateMatrix: columns, states and confidences differ in count");
  }
  CandidateMatrix c;
  c.alpha0.resize(n);
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(confidences[i] >= 0.0)) throw std::invalid_argument("CandidateMatrix: negative confidence");
    c.alpha0[i] = confidences[i];
    total += confidences[i];
  }
  if (!(total > 0.0)) throw std::invalid_argument("CandidateMatrix: confidences sum to zero");
  c.alpha0 /= total;
  c.columns = std::move(columns);
  c.states = std::move(states);
  return c;
}

Operators precompute_operators(const Eigen::MatrixXd& candidates, const Eigen::MatrixXd& basis, double kappa) {
  if (!(kappa > 0.0)) throw std::invalid_argument("precompute_operators: kappa must be positive");
  if (candidates.rows() != basis.rows()) throw std::invalid_argument("precompute_operators: dimension mismatch");
  Operators ops;

  Eigen::MatrixXd dtd = basis.transpose() * basis;
  dtd.diagonal().array() += kappa;
  ops.f_beta = dtd.ldlt().solve(basis.transpose());

  const Eigen::Index n = candidates.cols();
  Eigen::MatrixXd gram = candidates.transpose() * candidates;
  Eigen::LLT<Eigen::MatrixXd> llt(gram);
  if (llt.info() != Eigen::Success || !(llt.rcond() >= kSingularRcond)) {
    gram.diagonal().array() += kDiagonalPerturbation;
    llt.compute(gram);
    ops.regularized = true;
    if (llt.info() != Eigen::Success) throw std::runtime_error("precompute_operators: candidate Gram matrix is singular");
  }
  const Eigen::MatrixXd gram_inv = llt.solve(Eigen::MatrixXd::Identity(n, n));
  const Eigen::VectorXd gl = gram_inv * Eigen::VectorXd::Ones(n);  // (M^T M)^-1 l
  const double s = gl.sum();                                      // l^T (M^T M)^-1 l
  const Eigen::MatrixXd projector = gram_inv - gl * gl.transpose() / s;
  ops.f_alpha = projector * candidates.transpose();
  ops.g_alpha = gl / s;
  return ops;
}

double objective(const Eigen::MatrixXd& candidates, const Eigen::MatrixXd& basis, const Eigen::VectorXd& alpha,
                 const Eigen::VectorXd& beta, double kappa) {
  return (candidates * alpha - basis * beta).squaredNorm() + kappa * beta.squaredNorm();
}

RefineSolution refine(const Eigen::MatrixXd& candidates, const Eigen::MatrixXd& basis, const Eigen::VectorXd& alpha0,
                      const RefineOptions& options) {
  if (options.max_iter < 1) throw std::invalid_argument("refine: max_iter must be >= 1");
  if (alpha0.size() != candidates.cols()) throw std::invalid_argument("refine: alpha0 length mismatch");
  const Operators ops = precompute_operators(candidates, basis, options.kappa);

  RefineSolution sol;
  sol.regularized = ops.regularized;
  Eigen::VectorXd alpha = alpha0;
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(basis.cols());
  for (int it = 0; it < options.max_iter; ++it) {
    beta = ops.f_beta * (candidates * alpha);
    sol.objective_trace.push_back(objective(candidates, basis, alpha, beta, options.kappa));
    Eigen::VectorXd next = ops.f_alpha * (basis * beta) + ops.g_alpha;
    sol.objective_trace.push_back(objective(candidates, basis, next, beta, options.kappa));
    sol.alpha_history.push_back(next);
    sol.beta_history.push_back(beta);
    const double change = (next - alpha).cwiseAbs().maxCoeff();
    alpha = std::move(next);
    sol.iterations = it + 1;
    if (change < options.tol) break;
  }
  sol.pre_clip_objective = sol.objective_trace.back();

  Eigen::VectorXd clipped = alpha.cwiseMax(0.0);
  const double total = clipped.sum();
  if (total > 0.0) {
    clipped /= total;
  } else {
    Eigen::Index best = 0;
    alpha0.maxCoeff(&best);
    clipped.setZero();
    clipped[best] = 1.0;
    sol.fell_back = true;
  }
  sol.alpha = std::move(clipped);
  sol.beta = beta;
  sol.post_clip_objective = objective(candidates, basis, sol.alpha, sol.beta, options.kappa);
  return sol;
}

AffineState combine_states(std::span<const AffineState> states, const Eigen::VectorXd& alpha) {
  if (states.empty() || static_cast<Eigen::Index>(states.size()) != alpha.size()) {
    throw std::invalid_argument("combine_states: states and coefficients differ in count");
  }
  std::array<double, AffineState::kDim> acc{};
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto v = states[i].as_array();
    for (int d = 0; d < AffineState::kDim; ++d) acc[d] += alpha[static_cast<Eigen::Index>(i)] * v[d];
  }
  return AffineState::from_array(acc);
}

}  // namespace sht::refine
