#include <doctest.h>

#include <cmath>

#include "sht/refinement.hpp"
#include "oracles.hpp"

using namespace sht;
using namespace sht::refine;
using namespace sht::testing;

TEST_SUITE("refinement") {

TEST_CASE("joint likelihood") {
  std::vector<ErrorPair> e = {{0.1, 0.7}, {0.5, 0.9}, {0.3, 1.5}, {0.9, 1.2}};
  const auto l = joint_likelihood(e, 0.5, 0.5);
  CHECK(l[0] == 1.0);
  for (double v : l) CHECK(v <= 1.0);
  // Direct evaluation for one entry.
  CHECK(l[2] == doctest::Approx(std::exp(-0.5 * (0.2 / 0.8) - 0.5 * (0.8 / 0.8))).epsilon(1e-12));
  const auto same = joint_likelihood(std::vector<ErrorPair>(3, {0.4, 0.8}), 0.5, 0.5);
  for (double v : same) CHECK(v == 1.0);
  const auto app = joint_likelihood(e, 1.0, 0.0);
  CHECK(app[0] > app[2]);
  CHECK(app[2] > app[1]);
  CHECK(app[1] > app[3]);
  CHECK_THROWS(joint_likelihood(e, 0.5, 0.6));
  CHECK_THROWS(joint_likelihood(std::vector<ErrorPair>{}, 0.5, 0.5));
}

TEST_CASE("candidate matrix normalizes confidences") {
  const Eigen::MatrixXd cols = testing::random_matrix(1024, 3, 1);
  const std::vector<AffineState> states(3);
  const std::vector<double> conf = {0.2, 0.5, 0.3};
  const auto a = CandidateMatrix::build(cols, states, conf);
  CHECK(a.alpha0.sum() == doctest::Approx(1.0).epsilon(1e-15));
  const std::vector<double> scaled = {0.6, 1.5, 0.9};
  const auto b = CandidateMatrix::build(cols, states, scaled);
  CHECK((a.alpha0 - b.alpha0).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK_THROWS(CandidateMatrix::build(testing::random_matrix(1024, 11, 1), std::vector<AffineState>(11),
                                      std::vector<double>(11, 1.0)));
  CHECK_THROWS(CandidateMatrix::build(cols, std::vector<AffineState>(2), conf));
  CHECK_THROWS(CandidateMatrix::build(cols, states, std::vector<double>{0, 0, 0}));
}

TEST_CASE("operators for an orthonormal basis") {
  const auto in = random_instance(10);
  const double kappa = 0.005;
  const auto ops = precompute_operators(in.m, in.d, kappa);
  CHECK((ops.f_beta - in.d.transpose() / (1.0 + kappa)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_FALSE(ops.regularized);
}

TEST_CASE("a single candidate always gets weight one") {
  const auto in = random_instance(11, 1);
  const auto ops = precompute_operators(in.m, in.d, 0.005);
  for (int t = 0; t < 5; ++t) {
    const Eigen::VectorXd y = testing::random_vector(1024, 100 + t);
    CHECK((ops.f_alpha * y + ops.g_alpha)[0] == doctest::Approx(1.0).epsilon(1e-12));
  }
  const auto sol = refine::refine(in.m, in.d, Eigen::VectorXd::Ones(1));
  CHECK(sol.alpha.size() == 1);
  CHECK(sol.alpha[0] == 1.0);
}

TEST_CASE("alpha operator matches the KKT solve") {
  for (int t = 0; t < 10; ++t) {
    const auto in = random_instance(20 + t, 2 + t % 9);
    const auto ops = precompute_operators(in.m, in.d, 0.005);
    const Eigen::VectorXd y = testing::random_vector(1024, 500 + t) * 0.2;
    CHECK(((ops.f_alpha * y + ops.g_alpha) - kkt_alpha(in.m, y)).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("duplicate candidates trigger the diagonal perturbation") {
  auto in = random_instance(30, 3);
  in.m.col(2) = in.m.col(0);
  const auto ops = precompute_operators(in.m, in.d, 0.005);
  CHECK(ops.regularized);
  const auto sol = refine::refine(in.m, in.d, in.alpha0);
  CHECK(sol.regularized);
  CHECK(sol.alpha.sum() == doctest::Approx(1.0));
  CHECK(sol.alpha.minCoeff() >= 0.0);
}

TEST_CASE("every half step matches fresh oracle solves") {
  const double kappa = 0.005;
  for (int t = 0; t < 10; ++t) {
    const auto in = random_instance(40 + t);
    const auto sol = refine::refine(in.m, in.d, in.alpha0, {kappa, 10, 1e-6});
    Eigen::VectorXd alpha = in.alpha0;
    for (int it = 0; it < sol.iterations; ++it) {
      const Eigen::VectorXd beta = ridge_beta(in.d, in.m * alpha, kappa);
      CHECK((sol.beta_history[it] - beta).cwiseAbs().maxCoeff() <= 1e-8);
      alpha = kkt_alpha(in.m, in.d * sol.beta_history[it]);
      CHECK((sol.alpha_history[it] - alpha).cwiseAbs().maxCoeff() <= 1e-8);
      alpha = sol.alpha_history[it];
    }
  }
}

TEST_CASE("objective is monotone and alpha stays on the simplex plane") {
  for (int t = 0; t < 20; ++t) {
    const auto in = random_instance(60 + t);
    const auto sol = refine::refine(in.m, in.d, in.alpha0);
    for (std::size_t k = 1; k < sol.objective_trace.size(); ++k)
      CHECK(sol.objective_trace[k] <= sol.objective_trace[k - 1] + 1e-10);
    for (const auto& a : sol.alpha_history) CHECK(std::abs(a.sum() - 1.0) <= 1e-12);
    CHECK(sol.alpha.minCoeff() >= 0.0);
    CHECK(std::abs(sol.alpha.sum() - 1.0) <= 1e-12);
    CHECK(sol.pre_clip_objective == sol.objective_trace.back());
  }
}

TEST_CASE("max_iter of one is a single exact step") {
  const auto in = random_instance(90);
  const auto sol = refine::refine(in.m, in.d, in.alpha0, {0.005, 1, 1e-6});
  CHECK(sol.iterations == 1);
  const Eigen::VectorXd beta = ridge_beta(in.d, in.m * in.alpha0, 0.005);
  CHECK((sol.beta - beta).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK((sol.alpha_history[0] - kkt_alpha(in.m, in.d * beta)).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK_THROWS(refine::refine(in.m, in.d, in.alpha0, {0.005, 0, 1e-6}));
}

TEST_CASE("clipping a negative coefficient keeps a valid simplex point") {
  // The unconstrained optimum needs a negative weight on the second column.
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 1);
  d(0, 0) = 1.0;
  Eigen::MatrixXd m(4, 2);
  m << 1.0, 3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0;
  Eigen::VectorXd a0(2);
  a0 << 0.7, 0.3;
  // With kappa = 1 the iteration contracts towards alpha = (1.5, -0.5).
  const auto sol = refine::refine(m, d, a0, {1.0, 50, 1e-12});
  CHECK(sol.alpha_history.back()[1] == doctest::Approx(-0.5).epsilon(1e-6));
  CHECK(sol.alpha[0] == 1.0);
  CHECK(sol.alpha_history.back().minCoeff() < 0.0);
  CHECK(sol.alpha.minCoeff() >= 0.0);
  CHECK(sol.alpha.sum() == doctest::Approx(1.0));
  CHECK_FALSE(sol.fell_back);
}

TEST_CASE("combine states") {
  const AffineState a{0, 1, 0.1, 1, 1, 0}, b{4, 1, 0.1, 1, 1, 0};
  const std::vector<AffineState> s = {a, b};
  Eigen::VectorXd alpha(2);
  alpha << 0.25, 0.75;
  CHECK(combine_states(s, alpha).tx == 3.0);
  alpha << 0.0, 1.0;
  CHECK(combine_states(s, alpha) == b);
  alpha << 0.5, 0.5;
  const std::vector<AffineState> same = {a, a};
  const auto c = combine_states(same, alpha);
  CHECK(c.tx == a.tx);
  CHECK(c.rotation == doctest::Approx(a.rotation));
  // Convex hull, component-wise.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  std::vector<AffineState> many(6);
  for (auto& st : many) st = {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
  Eigen::VectorXd w = testing::random_vector(6, 9).cwiseAbs();
  w /= w.sum();
  const auto mix = combine_states(many, w).as_array();
  for (int k = 0; k < AffineState::kDim; ++k) {
    double lo = 1e9, hi = -1e9;
    for (const auto& st : many) {
      lo = std::min(lo, st.as_array()[k]);
      hi = std::max(hi, st.as_array()[k]);
    }
    CHECK(mix[k] >= lo - 1e-12);
    CHECK(mix[k] <= hi + 1e-12);
  }
  CHECK_THROWS(combine_states(s, Eigen::VectorXd::Ones(3)));
}

}  // TEST_SUITE
