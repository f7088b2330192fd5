#pragma once

#include <vector>

#include <Eigen/Dense>

#include "sht/image.hpp"

namespace sht::appearance {

inline constexpr int kPatchSide = 32;
inline constexpr int kPatchDim = kPatchSide * kPatchSide;
inline constexpr int kMaxBasis = 16;

/// Vectorizes a gray patch, subtracts its mean intensity and scales to unit
/// Euclidean norm. A constant patch maps to the zero vector.
Eigen::VectorXd normalize_patch(const ScalarMap& patch);

/// Ridge weights of the coding problem
///   min ||r - B b - e||^2 + basis_lambda ||b||^2 + lambda ||e||^2,  r = y - mean
/// where e holds the trivial-template (identity) coefficients.
struct CodingParams {
  double lambda = 0.01;
  double basis_lambda = 0.0;
};

/// Incremental subspace update schedule.
struct UpdateParams {
  int batch_size = 5;
  double forgetting = 0.95;
  int max_basis = kMaxBasis;
};

struct Coefficients {
  Eigen::VectorXd basis;    ///< one entry per basis column
  Eigen::VectorXd trivial;  ///< one entry per pixel
};

/// PCA subspace (mean + orthonormal basis) with implicit trivial templates.
/// Coding reuses a projection operator rebuilt whenever the basis changes.
class PcaDictionary {
 public:
  explicit PcaDictionary(Eigen::VectorXd mean, double sample_count = 1.0, CodingParams coding = {},
                         UpdateParams update = {});

  /// Dictionary with a given orthonormal basis; throws if B^T B != I (1e-8).
  static PcaDictionary with_basis(Eigen::VectorXd mean, Eigen::MatrixXd basis, Eigen::VectorXd singular_values,
                                  double sample_count, CodingParams coding = {}, UpdateParams update = {});

  int dim() const { return static_cast<int>(mean_.size()); }
  int rank() const { return static_cast<int>(basis_.cols()); }
  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::VectorXd& singular_values() const { return singular_values_; }
  double sample_count() const { return sample_count_; }
  int buffer_size() const { return static_cast<int>(buffer_.size()); }
  const CodingParams& coding() const { return coding_; }
  const UpdateParams& update_params() const { return update_; }

  /// rank x dim operator mapping r = y - mean to the basis coefficients.
  const Eigen::MatrixXd& projection() const { return projection_; }

  /// Buffers an observation; absorbs the buffer once it holds batch_size
  /// vectors. Returns true when an absorb happened.
  bool add_observation(const Eigen::VectorXd& y);

  /// Absorbs whatever is buffered (no-op on an empty buffer).
  void absorb();

 private:
  void rebuild_projection();

  Eigen::VectorXd mean_;
  Eigen::MatrixXd basis_;
  Eigen::VectorXd singular_values_;
  double sample_count_;
  CodingParams coding_;
  UpdateParams update_;
  Eigen::MatrixXd projection_;
  std::vector<Eigen::VectorXd> buffer_;
};

Coefficients code(const Eigen::VectorXd& y, const PcaDictionary& dict);

/// Value of the coding objective at the given coefficients.
double ridge_objective(const Eigen::VectorXd& y, const Coefficients& c, const PcaDictionary& dict);

/// exp(-||r - B b - e||^2 - delta_c ||e||_1).
double likelihood(const Eigen::VectorXd& y, const Coefficients& c, const PcaDictionary& dict, double delta_c);

struct Evaluation {
  Coefficients coefficients;
  double confidence = 0.0;
  /// ||r - B b||^2, the subspace reconstruction error.
  double reconstruction_error = 0.0;
};

Evaluation evaluate(const Eigen::VectorXd& y, const PcaDictionary& dict, double delta_c);

PcaDictionary update_dictionary(PcaDictionary dict, const Eigen::VectorXd& y);

}  // namespace sht::appearance
