#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fanolab/divergences.hpp"
#include "fanolab/kl_bounds.hpp"

using namespace fanolab;
using doctest::Approx;

namespace {
const ExtReal kInf = ExtReal::infinity();
ExtReal ext(double v) { return ExtReal::of(v); }
}  // namespace

TEST_CASE("lb_classic") {
  CHECK(lb_classic(ext(0.0), std::exp(-2.0)).bound_on_p == Approx(0.34657359027997265).epsilon(1e-14));
  CHECK(lb_classic(kInf, 0.5).bound_on_p == 1.0);
  CHECK(lb_classic(ext(std::log(8.0) - std::numbers::ln2), 0.125).bound_on_p == Approx(1.0));
  CHECK_THROWS_AS(lb_classic(ext(0.0), 0.0), Error);
  CHECK_THROWS_AS(lb_classic(ext(0.0), 1.0), Error);
}

TEST_CASE("lb_refined") {
  CHECK(lb_refined(ext(0.0), 0.5).bound_on_p == Approx(0.58496250072115618).epsilon(1e-14));
  CHECK(lb_refined(kInf, 0.9).bound_on_p == 1.0);
  CHECK(lb_refined(ext(0.1), 0.25).bound_on_p == Approx(0.47581221307325022).epsilon(1e-14));
}

TEST_CASE("lb_affine") {
  CHECK(lb_affine(ext(0.0), 0.5).bound_on_p == Approx(0.605).epsilon(1e-14));
  CHECK(lb_affine(kInf, 0.1).bound_on_p == 1.0);
  CHECK(lb_affine(ext(0.2), 0.1).bound_on_p == Approx(0.37585889638065037).epsilon(1e-14));
}

TEST_CASE("pinsker_factor") {
  CHECK(pinsker_factor(0.5).to_double() == 2.0);
  CHECK(pinsker_factor(0.0).is_infinite());
  CHECK(pinsker_factor(1.0).is_infinite());
  CHECK(pinsker_factor(0.25).to_double() == Approx(2.1972245773362194).epsilon(1e-14));
  // Continuity across q = 1/2.
  CHECK(pinsker_factor(0.5 + 1e-9).to_double() == Approx(2.0).epsilon(1e-8));
  CHECK(pinsker_factor(0.75).to_double() == Approx(pinsker_factor(0.25).to_double()));
}

TEST_CASE("lb_pinsker_fano") {
  CHECK(lb_pinsker_fano(ext(0.0), 0.3).bound_on_p == Approx(0.3));
  CHECK(lb_pinsker_fano(kInf, 0.3).bound_on_p == 1.0);
  CHECK(lb_pinsker_fano(ext(0.08), 0.1).bound_on_p == Approx(0.28639624071386243).epsilon(1e-14));
  // With q close to 1/2 the max{., 2} denominator is strictly tighter.
  const double tight = lb_pinsker_fano(ext(0.01), 0.4).bound_on_p;
  const double plain = lb_pinsker_fano(ext(0.01), 0.4, PinskerDenominator::Plain).bound_on_p;
  CHECK(tight < plain);
  CHECK(tight == Approx(0.4 + std::sqrt(0.01 / 2.0)));
}

TEST_CASE("bretagnolle_huber") {
  CHECK(bretagnolle_huber_constant() == Approx(std::exp(-1.0 / std::numbers::e)).epsilon(1e-16));
  CHECK(bretagnolle_huber_q_lower(1.0, ext(0.0)) == Approx(0.69220062755534635).epsilon(1e-14));
  CHECK(bretagnolle_huber_q_lower(0.2, kInf) == 0.0);
  CHECK(bretagnolle_huber_q_lower(1.0, ext(1.0)) == Approx(0.2546463800435825).epsilon(1e-14));
}

TEST_CASE("lecam_hellinger") {
  for (bool sharp : {false, true}) {
    CHECK(lecam_hellinger(0.0, 0.3, sharp).bound_on_p == Approx(0.3));
  }
  CHECK(lecam_hellinger(2.0, 0.0, false).bound_on_p == Approx(1.0));
  CHECK(lecam_hellinger(0.5, 0.1, false).bound_on_p == Approx(0.76143782776614765).epsilon(1e-14));
  CHECK(lecam_hellinger(0.5, 0.1, true).bound_on_p <= lecam_hellinger(0.5, 0.1, false).bound_on_p);
  CHECK_THROWS_AS(lecam_hellinger(2.5, 0.1, false), Error);
}

TEST_CASE("chi2_solved") {
  CHECK(chi2_solved(ext(0.0), 0.25).bound_on_p == Approx(0.25));
  CHECK(chi2_solved(ext(1.0 / 3.0), 0.25).bound_on_p == Approx(0.53867513459481288).epsilon(1e-14));
  CHECK(chi2_solved(kInf, 0.5).bound_on_p == 1.0);
  CHECK(chi2_solved(kInf, 0.0).bound_on_p == 1.0);
  CHECK(chi2_solved(ext(5.0), 0.0).bound_on_p == 0.0);
}

TEST_CASE("kl_inverse") {
  CHECK(kl_inverse(0.3, ext(0.0)) == 0.3);
  CHECK(kl_inverse(0.5, ext(std::numbers::ln2)) == 1.0);
  CHECK(kl_inverse(0.5, kInf) == 1.0);
  const double p = kl_inverse(0.25, ext(0.14384103622589046));
  CHECK(p == Approx(0.5).epsilon(1e-9));
  CHECK(std::abs(kl_bernoulli({p, 0.25}).to_double() - 0.14384103622589046) <= 1e-9);
  CHECK_THROWS_AS(kl_inverse(0.0, ext(0.1)), Error);
}

TEST_CASE("binary_entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == Approx(std::numbers::ln2).epsilon(1e-15));
  CHECK(binary_entropy(0.2) == Approx(0.50040242353818788).epsilon(1e-14));
}

TEST_CASE("affine constants dominate ln(2 - q) / ln(1/q)") {
  for (int i = 1; i < 10000; ++i) {
    const double q = i / 10000.0;
    CHECK(std::log1p(1.0 - q) / -std::log(q) <= 0.21 + 0.79 * q + 1e-12);
  }
}
