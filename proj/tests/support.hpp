#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sht/image.hpp"

namespace sht::testing {

inline RgbFrame random_frame(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> data(3 * static_cast<std::size_t>(w) * h);
  for (double& v : data) v = u(rng);
  return RgbFrame(w, h, std::move(data));
}

inline ScalarMap random_map(int w, int h, std::uint64_t seed, double lo = 0.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  ScalarMap m(w, h);
  for (double& v : m.data) v = u(rng);
  return m;
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = n(rng);
  return m;
}

inline Eigen::VectorXd random_vector(int n, std::uint64_t seed) { return random_matrix(n, 1, seed).col(0); }

inline Eigen::MatrixXd random_orthonormal(int rows, int cols, std::uint64_t seed) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(rows, cols, seed));
  return qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
}

}  // namespace sht::testing
