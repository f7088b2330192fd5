#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "sht/affine.hpp"

namespace sht::pf {

/// Per-parameter standard deviations of the random-walk transition, in
/// AffineState field order.
struct MotionCovariance {
  std::array<double, AffineState::kDim> sigma = {8.0, 8.0, 0.01, 0.02, 0.002, 0.001};
};

struct Particle {
  AffineState state;
  double likelihood = 0.0;
};

/// Draws n states around `center`. Particle i of stream `stream` depends only
/// on (seed, stream, i).
std::vector<AffineState> propagate(const AffineState& center, const MotionCovariance& psi, int n,
                                   std::uint64_t seed, std::uint64_t stream = 0);

/// State of the highest-likelihood particle; ties go to the lowest index.
AffineState map_estimate(std::span<const Particle> particles);

/// Indices of the k highest-likelihood particles, descending, stable.
std::vector<int> top_k_indices(std::span<const double> likelihoods, int k);

std::vector<Particle> top_k(std::span<const Particle> particles, int k);

}  // namespace sht::pf
