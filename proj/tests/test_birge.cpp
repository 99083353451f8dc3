#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "fanolab/birge.hpp"

using namespace fanolab;
using doctest::Approx;

TEST_CASE("birge_c against reference values") {
  CHECK(birge_c(2) == Approx(0.75866211642860486).epsilon(1e-9));
  CHECK(birge_c(3) == Approx(0.71265077954170526).epsilon(1e-9));
  CHECK(birge_c(7) == Approx(0.66854807173149743).epsilon(1e-9));
  CHECK(birge_c(1000000) == Approx(0.63987018797901171).epsilon(1e-9));
  CHECK(std::abs(birge_c(2) - 0.7587) <= 5e-4);
  CHECK(std::abs(birge_c(3) - 0.7127) <= 5e-4);
  CHECK(std::abs(birge_c(1000000) - 0.63987) <= 1e-4);
  CHECK_THROWS_AS(birge_c(1), Error);
}

TEST_CASE("birge_d against reference values") {
  CHECK(birge_d(2) == Approx(0.74276360941070874).epsilon(1e-9));
  CHECK(birge_d(3) == Approx(0.70086413400503996).epsilon(1e-9));
  CHECK(birge_d(7) == Approx(0.66317913839649907).epsilon(1e-9));
  CHECK(std::abs(birge_d(1000000) - 0.63987) <= 1e-4);
  CHECK(birge_r(2, birge_d(2)) <= 1e-9);
  CHECK(birge_r(2, birge_d(2) + 1e-6) > 0.0);
}

TEST_CASE("massart constant and bounds") {
  CHECK(massart_constant() == Approx(0.81606027941427884).epsilon(1e-15));
  CHECK(std::abs(massart_constant() - 0.816060) <= 1e-6);
  CHECK(birge_bound(2, ExtReal::of(0.0), BirgeVariant::Cn) == Approx(birge_c(2)));
  CHECK(birge_bound(2, ExtReal::of(0.0), BirgeVariant::Massart) == Approx(massart_constant()));
  CHECK(birge_bound(5, ExtReal::infinity(), BirgeVariant::Dn) == 1.0);
  CHECK(birge_bound(4, ExtReal::of(1.0), BirgeVariant::Cn) == Approx(std::max(birge_c(4), 1.0 / std::log(4.0))));
}

TEST_CASE("comparison_table") {
  const std::vector<long long> ns{2, 3, 7};
  const auto rows = comparison_table(ns);
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].c_n < 0.67);
  CHECK(rows[2].d_n < 2.0 / 3.0);
  CHECK(rows[0].c_n == birge_c(2));
  CHECK(rows[0].d_n == birge_d(2));
  for (const auto& r : rows) {
    CHECK(r.d_n <= r.c_n);
    CHECK(r.c_n < r.massart);
  }
}
