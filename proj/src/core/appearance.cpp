#include "sht/appearance.hpp"

#include <cmath>
#include <stdexcept>

namespace sht::appearance {

namespace {

constexpr double kOrthoTolerance = 1e-10;

void check_coding(const CodingParams& c) {
  if (!(c.lambda > 0.0)) throw std::invalid_argument("PcaDictionary: lambda must be positive");
  if (!(c.basis_lambda >= 0.0)) throw std::invalid_argument("PcaDictionary: basis_lambda must be >= 0");
}

void check_update(const UpdateParams& u) {
  if (u.batch_size < 1) throw std::invalid_argument("PcaDictionary: batch_size must be >= 1");
  if (!(u.forgetting > 0.0 && u.forgetting <= 1.0)) {
    throw std::invalid_argument("PcaDictionary: forgetting factor must be in (0,1]");
  }
  if (u.max_basis < 1) throw std::invalid_argument("PcaDictionary: max_basis must be >= 1");
}

double orthonormality_error(const Eigen::MatrixXd& b) {
  if (b.cols() == 0) return 0.0;
  return (b.transpose() * b - Eigen::MatrixXd::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

Eigen::VectorXd normalize_patch(const ScalarMap& patch) {
  Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(patch.data.data(), static_cast<Eigen::Index>(patch.size()));
  v.array() -= v.mean();
  const double n = v.norm();
  if (n > 1e-12) v /= n;
  else v.setZero();
  return v;
}

PcaDictionary::PcaDictionary(Eigen::VectorXd mean, double sample_count, CodingParams coding, UpdateParams update)
    : mean_(std::move(mean)),
      basis_(mean_.size(), 0),
      singular_values_(0),
      sample_count_(sample_count),
      coding_(coding),
      update_(update) {
  check_coding(coding_);
  check_update(update_);
  if (mean_.size() < 1 || !mean_.allFinite()) throw std::invalid_argument("PcaDictionary: invalid mean");
  if (!(sample_count_ >= 0.0)) throw std::invalid_argument("PcaDictionary: sample_count must be >= 0");
  rebuild_projection();
}

PcaDictionary PcaDictionary::with_basis(Eigen::VectorXd mean, Eigen::MatrixXd basis, Eigen::VectorXd singular_values,
                                        double sample_count, CodingParams coding, UpdateParams update) {
  PcaDictionary d(std::move(mean), sample_count, coding, update);
  if (basis.rows() != d.dim() || basis.cols() != singular_values.size() || basis.cols() > update.max_basis) {
    throw std::invalid_argument("PcaDictionary::with_basis: shape mismatch");
  }
  if (orthonormality_error(basis) > 1e-8) throw std::invalid_argument("PcaDictionary::with_basis: basis not orthonormal");
  d.basis_ = std::move(basis);
  d.singular_values_ = std::move(singular_values);
  d.rebuild_projection();
  return d;
}

void PcaDictionary::rebuild_projection() {
  // Eliminating e = (r - B b) / (1 + lambda) leaves
  //   (rho B^T B + basis_lambda I) b = rho B^T r,  rho = lambda / (1 + lambda).
  const int k = rank();
  const double rho = coding_.lambda / (1.0 + coding_.lambda);
  if (k == 0) {
    projection_.resize(0, dim());
    return;
  }
  Eigen::MatrixXd normal = rho * (basis_.transpose() * basis_);
  normal.diagonal().array() += coding_.basis_lambda;
  projection_ = normal.ldlt().solve(rho * basis_.transpose());
}

bool PcaDictionary::add_observation(const Eigen::VectorXd& y) {
  if (y.size() != dim()) throw std::invalid_argument("PcaDictionary: observation has the wrong length");
  buffer_.push_back(y);
  if (static_cast<int>(buffer_.size()) < update_.batch_size) return false;
  absorb();
  return true;
}

void PcaDictionary::absorb() {
  if (buffer_.empty()) return;
  const int m = static_cast<int>(buffer_.size());
  const int d = dim();
  const double ff = update_.forgetting;
  const double n = sample_count_;

  Eigen::MatrixXd batch(d, m);
  for (int i = 0; i < m; ++i) batch.col(i) = buffer_[i];
  buffer_.clear();
  const Eigen::VectorXd batch_mean = batch.rowwise().mean();

  // Centered batch plus the mean-shift column.
  Eigen::MatrixXd aug(d, m + 1);
  aug.leftCols(m) = batch.colwise() - batch_mean;
  aug.col(m) = std::sqrt(n * m / (n + m)) * (mean_ - batch_mean);

  mean_ = (ff * n * mean_ + m * batch_mean) / (ff * n + m);
  sample_count_ = m + ff * n;

  Eigen::MatrixXd left;  // orthonormal columns spanning [basis, residual]
  Eigen::MatrixXd core;  // small matrix whose SVD updates the subspace
  const int k = rank();
  if (k == 0) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(aug);
    qr.setThreshold(1e-12);
    const int r = static_cast<int>(qr.rank());
    if (r == 0) {
      rebuild_projection();
      return;
    }
    left = qr.householderQ() * Eigen::MatrixXd::Identity(d, r);
    core = left.transpose() * aug;
  } else {
    const Eigen::MatrixXd proj = basis_.transpose() * aug;
    Eigen::MatrixXd resid = aug - basis_ * proj;
    resid -= basis_ * (basis_.transpose() * resid);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(resid);
    qr.setThreshold(1e-12);
    const int r = static_cast<int>(qr.rank());
    Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, r);
    if (r > 0) {
      q -= basis_ * (basis_.transpose() * q);  // re-orthogonalize against the basis
      Eigen::HouseholderQR<Eigen::MatrixXd> qr2(q);
      q = qr2.householderQ() * Eigen::MatrixXd::Identity(d, r);
    }
    left.resize(d, k + r);
    left << basis_, q;
    core = Eigen::MatrixXd::Zero(k + r, k + m + 1);
    core.topLeftCorner(k, k) = ff * singular_values_.asDiagonal();
    core.topRightCorner(k, m + 1) = proj;
    if (r > 0) core.bottomRightCorner(r, m + 1) = q.transpose() * resid;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(core, Eigen::ComputeThinU);
  const Eigen::VectorXd& sv = svd.singularValues();
  const double energy = sv.squaredNorm();
  int keep = 0;
  while (keep < sv.size() && keep < update_.max_basis && sv[keep] > 1e-10 && sv[keep] * sv[keep] >= 1e-6 * energy) {
    ++keep;
  }
  basis_ = left * svd.matrixU().leftCols(keep);
  singular_values_ = sv.head(keep);
  if (orthonormality_error(basis_) > kOrthoTolerance) {
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis_);
    basis_ = qr.householderQ() * Eigen::MatrixXd::Identity(d, keep);
  }
  rebuild_projection();
}

Coefficients code(const Eigen::VectorXd& y, const PcaDictionary& dict) {
  if (y.size() != dict.dim()) throw std::invalid_argument("code: patch length does not match the dictionary");
  const Eigen::VectorXd r = y - dict.mean();
  Coefficients c;
  c.basis = dict.projection() * r;
  c.trivial = (r - dict.basis() * c.basis) / (1.0 + dict.coding().lambda);
  return c;
}

double ridge_objective(const Eigen::VectorXd& y, const Coefficients& c, const PcaDictionary& dict) {
  const Eigen::VectorXd resid = y - dict.mean() - dict.basis() * c.basis - c.trivial;
  return resid.squaredNorm() + dict.coding().basis_lambda * c.basis.squaredNorm() +
         dict.coding().lambda * c.trivial.squaredNorm();
}

double likelihood(const Eigen::VectorXd& y, const Coefficients& c, const PcaDictionary& dict, double delta_c) {
  if (!(delta_c >= 0.0)) throw std::invalid_argument("likelihood: delta_c must be >= 0");
  const Eigen::VectorXd resid = y - dict.mean() - dict.basis() * c.basis - c.trivial;
  return std::exp(-resid.squaredNorm() - delta_c * c.trivial.lpNorm<1>());
}

Evaluation evaluate(const Eigen::VectorXd& y, const PcaDictionary& dict, double delta_c) {
  Evaluation e;
  e.coefficients = code(y, dict);
  const Eigen::VectorXd subspace_resid = y - dict.mean() - dict.basis() * e.coefficients.basis;
  e.reconstruction_error = subspace_resid.squaredNorm();
  e.confidence = likelihood(y, e.coefficients, dict, delta_c);
  return e;
}

PcaDictionary update_dictionary(PcaDictionary dict, const Eigen::VectorXd& y) {
  dict.add_observation(y);
  return dict;
}

}  // namespace sht::appearance
