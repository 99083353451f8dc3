#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fanolab/applications.hpp"
#include "fanolab/kl_bounds.hpp"

using namespace fanolab;
using doctest::Approx;

TEST_CASE("posterior_constant") {
  const PosteriorConstant c1 = posterior_constant(1);
  const PosteriorConstant c2 = posterior_constant(2);
  CHECK(c1.c_d <= 0.55);
  CHECK(c2.c_d <= 0.37);
  CHECK(c1.c_d == Approx(0.546503960606875).epsilon(1e-10));
  CHECK(c2.c_d == Approx(0.35801896319961542).epsilon(1e-10));
  CHECK(c1.rho_star == Approx(4.5591235142383626).epsilon(1e-5));
  CHECK(posterior_objective(1, 5.0) == Approx(0.5484).epsilon(1e-3));
  CHECK(posterior_objective(2, 3.0) == Approx(0.3641).epsilon(1e-3));
  CHECK(std::abs(posterior_constant(1000000).c_d - std::sqrt(std::numbers::e) / 8.0) <= 1e-3);
  CHECK_THROWS_AS(posterior_constant(0), Error);
}

TEST_CASE("posterior_minimax_bound") {
  CHECK(posterior_minimax_bound(GaussianModel(1, 1, 8.0)).epsilon_n == Approx(1.0));
  CHECK(posterior_minimax_bound(GaussianModel(1, 1, 1.0)).epsilon_n == Approx(0.125));
  CHECK(posterior_minimax_bound(GaussianModel(2, 10, 1.0)).bound <= 0.37);
  CHECK_THROWS_AS(GaussianModel(1, 1, 0.0), Error);
}

TEST_CASE("distribution-dependent bound") {
  CHECK(psi_gaussian(1.0, 2.0).to_double() == Approx(0.5));
  CHECK(psi_gaussian(0.5, 1.0).to_double() == Approx(0.5));
  CHECK(posterior_dd_bound(ExtReal::of(0.1), 10, 2.0) == Approx(0.033833820809153173).epsilon(1e-14));
  CHECK(posterior_dd_bound(ExtReal::infinity(), 10, 2.0) == 0.0);
  CHECK(posterior_dd_bound(ExtReal::of(0.0), 10, 1.0 + 1e-12) == Approx(0.5));
  CHECK(psi_bernoulli(0.4, 0.5).is_infinite());
  CHECK(psi_bernoulli(0.1, 0.5).to_double() == Approx(kl_bernoulli({0.7, 0.5}).to_double()));
  CHECK_THROWS_AS(posterior_dd_bound(ExtReal::of(0.1), 10, 1.0), Error);
}

TEST_CASE("sparse_regret_bound") {
  const SparseRegretBound big = sparse_regret_bound(16, 4, 1600);
  CHECK(big.bound == Approx(1.0406932639471222).epsilon(1e-14));
  CHECK(big.regime == RegretRegime::LargeHorizon);
  CHECK(sparse_regret_bound(16, 0, 50).bound == 0.0);
  CHECK(sparse_regret_bound(16, 4, 1).bound == Approx(1.0 / 64.0));
  CHECK(sparse_regret_bound(16, 4, 1).epsilon_used > 0.0);
  CHECK_THROWS_AS(sparse_regret_bound(16, 4, 0), Error);
}

TEST_CASE("sparse environment") {
  CHECK(sparse_env_atom_count(2, 2) == 4);
  CHECK(sparse_env_atom_count(200, 100) == UINT64_MAX);
  const SparseEnv env = build_sparse_env(4, 2, 0.05);
  CHECK(env.atom_count() == 24);
  const FiniteDist p1 = env.hypothesis(0);
  CHECK(env.marginal(p1, 1) == Approx(0.25));
  CHECK(env.marginal(p1, 0) == Approx(0.2));
  const double kl = divergence_finite(GeneratorKind::KL, p1, env.base()).to_double();
  CHECK(kl <= 0.5 * kl_bernoulli({0.4, 0.5}).to_double() + 1e-12);
  CHECK(kl == Approx(sparse_env_kl(4, 2, 0.05)[0]).epsilon(1e-12));
  CHECK(kl == Approx(0.010067756775344437).epsilon(1e-12));
  CHECK_THROWS_AS(build_sparse_env(4, 2, 0.3), Error);
  CHECK_THROWS_AS(build_sparse_env(40, 20, 0.01), Error);
}

TEST_CASE("kl_quadratic_check") {
  const KlQuadratic a = kl_quadratic_check(0.5, 0.1);
  CHECK(a.lhs == Approx(0.020135513550688873).epsilon(1e-14));
  CHECK(a.rhs == Approx(0.04));
  const KlQuadratic b = kl_quadratic_check(0.5, 0.4);
  CHECK(b.lhs == Approx(0.36806420716849707).epsilon(1e-14));
  CHECK(b.rhs == Approx(0.64));
  CHECK_THROWS_AS(kl_quadratic_check(0.5, 0.6), Error);
}

TEST_CASE("cramer_rate") {
  const CramerRate one = cramer_rate(0.5, 0.75, 1);
  CHECK(one.empirical_rate == Approx(std::log(0.5)));
  CHECK(one.limit_rate == Approx(-0.13081203594113696).epsilon(1e-14));
  const CramerRate big = cramer_rate(0.5, 0.75, 1000);
  CHECK(big.empirical_rate == Approx(-0.13504731919276348).epsilon(1e-10));
  CHECK(big.empirical_rate <= big.limit_rate);
  CHECK(cramer_rate(0.3, 0.5, 200).empirical_rate == Approx(-0.10320196850202471).epsilon(1e-10));
  CHECK(std::isfinite(cramer_rate(0.1, 0.4, 100000).empirical_rate));
  CHECK_THROWS_AS(cramer_rate(0.5, 0.4, 10), Error);
}

TEST_CASE("mc_regret_experiment") {
  const SparseLossConfig cfg(8, 2, 64, 0.05);
  const RegretExperiment u = mc_regret_experiment(cfg, Strategy::uniform(), 50, 42, 1);
  CHECK(u.uniform_round_loss == Approx(2.0 / 16.0 - 0.05 / 8.0));
  const RegretExperiment again = mc_regret_experiment(cfg, Strategy::uniform(), 50, 42, 3);
  CHECK(u.avg_mixture_regret == again.avg_mixture_regret);
  CHECK(u.standard_error == again.standard_error);
  const RegretExperiment h = mc_regret_experiment(cfg, Strategy::hedge(), 50, 42, 1);
  CHECK(h.theoretical_floor == sparse_regret_bound(8, 2, 64).bound);
  CHECK_THROWS_AS(mc_regret_experiment(cfg, Strategy::uniform(), 0, 42), Error);
  CHECK_THROWS_AS(SparseLossConfig(8, 2, 64, 0.2), Error);
}
