#pragma once

// Independent reference implementations shared by the unit tests and the
// acceptance run.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "sht/saliency.hpp"
#include "sht/superpixel.hpp"
#include "support.hpp"

namespace sht::testing {

// min ||M a - y||^2 subject to sum(a) = 1, by solving the KKT system directly.
inline Eigen::VectorXd kkt_alpha(const Eigen::MatrixXd& m, const Eigen::VectorXd& y) {
  const auto n = m.cols();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(n + 1, n + 1);
  k.topLeftCorner(n, n) = 2.0 * m.transpose() * m;
  k.block(0, n, n, 1).setOnes();
  k.block(n, 0, 1, n).setOnes();
  Eigen::VectorXd rhs(n + 1);
  rhs.head(n) = 2.0 * m.transpose() * y;
  rhs[n] = 1.0;
  return k.fullPivLu().solve(rhs).head(n);
}

// min ||D b - t||^2 + kappa ||b||^2 as the least-squares problem [D; sqrt(kappa) I] b = [t; 0].
inline Eigen::VectorXd ridge_beta(const Eigen::MatrixXd& d, const Eigen::VectorXd& t, double kappa) {
  const auto k = d.cols();
  Eigen::MatrixXd aug(d.rows() + k, k);
  aug << d, std::sqrt(kappa) * Eigen::MatrixXd::Identity(k, k);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(d.rows() + k);
  rhs.head(d.rows()) = t;
  return aug.colPivHouseholderQr().solve(rhs);
}

struct Instance {
  Eigen::MatrixXd m, d;
  Eigen::VectorXd alpha0;
};

inline Instance random_instance(std::uint64_t seed, int n = 5) {
  Instance in;
  in.d = random_orthonormal(1024, 16, seed);
  // Candidates near the subspace plus noise, like real patches.
  in.m = in.d * random_matrix(16, n, seed + 1) * 0.2 + random_matrix(1024, n, seed + 2) * 0.01;
  in.alpha0 = (random_vector(n, seed + 3).array().abs() + 0.1).matrix();
  in.alpha0 /= in.alpha0.sum();
  return in;
}

inline BinaryMap random_mask(int w, int h, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution b(density);
  BinaryMap m(w, h);
  for (auto& v : m.data) v = b(rng) ? 1 : 0;
  return m;
}

struct OracleRegion {
  int area = 0;
  long sum_x = 0, sum_y = 0;
  int min_x, min_y, max_x, max_y;
};

// Recursive 8-connected flood fill, regions discovered in raster order.
inline std::vector<OracleRegion> flood_fill_regions(const BinaryMap& mask) {
  std::vector<int> seen(mask.data.size(), 0);
  std::vector<OracleRegion> out;
  std::function<void(int, int, OracleRegion&)> fill = [&](int x, int y, OracleRegion& r) {
    if (x < 0 || y < 0 || x >= mask.width || y >= mask.height) return;
    const std::size_t i = static_cast<std::size_t>(y) * mask.width + x;
    if (!mask.data[i] || seen[i]) return;
    seen[i] = 1;
    ++r.area;
    r.sum_x += x;
    r.sum_y += y;
    r.min_x = std::min(r.min_x, x);
    r.max_x = std::max(r.max_x, x);
    r.min_y = std::min(r.min_y, y);
    r.max_y = std::max(r.max_y, y);
    for (int dy = -1; dy <= 1; ++dy)
      for (int dx = -1; dx <= 1; ++dx)
        if (dx || dy) fill(x + dx, y + dy, r);
  };
  for (int y = 0; y < mask.height; ++y)
    for (int x = 0; x < mask.width; ++x) {
      const std::size_t i = static_cast<std::size_t>(y) * mask.width + x;
      if (!mask.data[i] || seen[i]) continue;
      OracleRegion r{0, 0, 0, x, y, x, y};
      fill(x, y, r);
      out.push_back(r);
    }
  return out;
}

// Gaussian-weighted bin votes of every superpixel mean, one channel at a time.
inline std::array<double, superpixel::kHistogramSize> oracle_histogram(const std::vector<features::Hsv>& means,
                                                                       double k_o) {
  using superpixel::kBinCenters;
  using superpixel::kBinsPerChannel;
  std::array<double, superpixel::kHistogramSize> h{};
  for (int o = 0; o < 3; ++o)
    for (int j = 0; j < kBinsPerChannel; ++j)
      for (const auto& m : means) {
        const double s = o == 0 ? m.h : o == 1 ? m.s : m.v;
        h[o * kBinsPerChannel + j] += std::exp(-k_o * (s - kBinCenters[j]) * (s - kBinCenters[j]));
      }
  return h;
}

// One pixel per superpixel with the given means.
inline superpixel::Segmentation fake_segmentation(const std::vector<features::Hsv>& means) {
  superpixel::Segmentation s;
  s.width = static_cast<int>(means.size());
  s.height = 1;
  s.count = s.width;
  for (int i = 0; i < s.count; ++i) {
    s.labels.push_back(i);
    s.areas.push_back(1);
  }
  s.hsv_means = means;
  return s;
}

}  // namespace sht::testing
