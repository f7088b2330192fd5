#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sht/particle_filter.hpp"
#include "support.hpp"

using namespace sht;
using namespace sht::pf;

TEST_SUITE("particle-filter") {

TEST_CASE("zero covariance copies the center") {
  const AffineState c{10, 20, 0.1, 1.5, 0.9, 0.02};
  MotionCovariance zero;
  zero.sigma.fill(0.0);
  for (const auto& s : propagate(c, zero, 50, 1)) CHECK(s == c);
}

TEST_CASE("sample moments follow the covariance") {
  const AffineState c{100, 50, 0, 1, 1, 0};
  MotionCovariance psi;
  psi.sigma = {4.0, 2.0, 0.01, 0.02, 0.002, 0.001};
  const int n = 100000;
  const auto states = propagate(c, psi, n, 77);
  for (int d = 0; d < AffineState::kDim; ++d) {
    double mean = 0;
    for (const auto& s : states) mean += s.as_array()[d];
    mean /= n;
    double var = 0;
    for (const auto& s : states) var += std::pow(s.as_array()[d] - mean, 2);
    const double sd = std::sqrt(var / (n - 1));
    const double sigma = psi.sigma[d];
    CHECK(std::abs(mean - c.as_array()[d]) <= 4.0 * sigma / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(sd - sigma) <= 0.05 * sigma);
  }
}

TEST_CASE("propagation is deterministic per seed and stream") {
  const AffineState c{5, 5, 0, 1, 1, 0};
  const MotionCovariance psi;
  CHECK(propagate(c, psi, 100, 3, 7) == propagate(c, psi, 100, 3, 7));
  CHECK(propagate(c, psi, 100, 3, 7) != propagate(c, psi, 100, 3, 8));
  CHECK(propagate(c, psi, 100, 3, 7) != propagate(c, psi, 100, 4, 7));
  // Particle i depends only on (seed, stream, i).
  const auto a = propagate(c, psi, 10, 3, 7);
  const auto b = propagate(c, psi, 20, 3, 7);
  CHECK(std::equal(a.begin(), a.end(), b.begin()));
}

TEST_CASE("propagated states stay valid") {
  AffineState c{0, 0, 0, 0.01, 0.01, 0};
  MotionCovariance psi;
  psi.sigma = {1, 1, 0.1, 0.5, 0.5, 0.1};
  for (const auto& s : propagate(c, psi, 1000, 9)) CHECK(s.valid());
}

TEST_CASE("map estimate") {
  auto particle = [](double tx, double l) { return Particle{AffineState{tx, 0, 0, 1, 1, 0}, l}; };
  CHECK(map_estimate(std::vector<Particle>{particle(3, 0.2)}).tx == 3);
  CHECK(map_estimate(std::vector<Particle>{particle(1, 0.1), particle(2, 0.9), particle(3, 0.3)}).tx == 2);
  CHECK(map_estimate(std::vector<Particle>{particle(1, 0.5), particle(2, 0.5), particle(3, 0.5)}).tx == 1);
  CHECK_THROWS(map_estimate(std::vector<Particle>{}));
}

TEST_CASE("top k agrees with a full stable sort") {
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<int> level(0, 20);  // ties are common
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> l(200);
    for (double& v : l) v = level(rng) / 20.0;
    std::vector<int> order(l.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return l[a] > l[b]; });
    for (int k : {1, 5, 70, 200}) {
      const auto got = top_k_indices(l, k);
      REQUIRE(got.size() == static_cast<std::size_t>(k));
      CHECK(std::equal(got.begin(), got.end(), order.begin()));
    }
    // Positive scaling leaves the selection unchanged.
    std::vector<double> scaled = l;
    for (double& v : scaled) v *= 3.7;
    CHECK(top_k_indices(scaled, 70) == top_k_indices(l, 70));
  }
}

TEST_CASE("top k particles and its relation to the map estimate") {
  std::vector<Particle> ps;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 30; ++i) ps.push_back({AffineState{double(i), 0, 0, 1, 1, 0}, u(rng)});
  const auto all = top_k(ps, 30);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(all[i - 1].likelihood >= all[i].likelihood);
  CHECK(top_k(ps, 1)[0].state == map_estimate(ps));
  CHECK_THROWS(top_k(ps, 0));
  CHECK_THROWS(top_k(ps, 31));
}

}  // TEST_SUITE
