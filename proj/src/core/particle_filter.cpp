#include "sht/particle_filter.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace sht::pf {

namespace {
constexpr double kMinPositive = 1e-3;
}

std::vector<AffineState> propagate(const AffineState& center, const MotionCovariance& psi, int n,
                                   std::uint64_t seed, std::uint64_t stream) {
  if (n < 1) throw std::invalid_argument("propagate: n must be >= 1");
  for (double s : psi.sigma) {
    if (!(s >= 0.0)) throw std::invalid_argument("propagate: standard deviations must be >= 0");
  }
  const auto base = center.as_array();
  std::vector<AffineState> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto v = base;
    for (int d = 0; d < AffineState::kDim; ++d) {
      const double z = normal(rng);
      if (psi.sigma[d] > 0.0) v[d] += psi.sigma[d] * z;
    }
    AffineState s = AffineState::from_array(v);
    s.scale = std::max(s.scale, kMinPositive);
    s.aspect = std::max(s.aspect, kMinPositive);
    out.push_back(s);
  }
  return out;
}

AffineState map_estimate(std::span<const Particle> particles) {
  if (particles.empty()) throw std::invalid_argument("map_estimate: no particles");
  std::size_t best = 0;
  for (std::size_t i = 1; i < particles.size(); ++i) {
    if (particles[i].likelihood > particles[best].likelihood) best = i;
  }
  return particles[best].state;
}

std::vector<int> top_k_indices(std::span<const double> likelihoods, int k) {
  if (k < 1 || k > static_cast<int>(likelihoods.size())) {
    throw std::invalid_argument("top_k: k must be in [1, particle count]");
  }
  std::vector<int> idx(likelihoods.size());
  std::iota(idx.begin(), idx.end(), 0);
  auto by_likelihood = [&](int a, int b) {
    return likelihoods[a] > likelihoods[b] || (likelihoods[a] == likelihoods[b] && a < b);
  };
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), by_likelihood);
  idx.resize(k);
  return idx;
}

std::vector<Particle> top_k(std::span<const Particle> particles, int k) {
  std::vector<double> lik(particles.size());
  std::transform(particles.begin(), particles.end(), lik.begin(), [](const Particle& p) { return p.likelihood; });
  std::vector<Particle> out;
  for (int i : top_k_indices(lik, k)) out.push_back(particles[i]);
  return out;
}

}  // namespace sht::pf
