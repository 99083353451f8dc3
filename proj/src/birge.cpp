#include "fanolab/birge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fanolab/divergences.hpp"
#include "fanolab/kl_bounds.hpp"

namespace fanolab {

namespace {

void require_n(long long n) {
  if (n < 2) throw Error(ErrorCode::BadN, "N must be >= 2");
}

// ln((N-1)/N) without cancellation for large N.
double log_ratio(long long n) { return std::log1p(-1.0 / static_cast<double>(n)); }

}  // namespace

double birge_g(double c) { return binary_entropy(c) / c + std::log1p(-c); }

double birge_r(long long n, double b) {
  require_n(n);
  const double q = (1.0 - b) / static_cast<double>(n - 1);
  return kl_bernoulli({b, q}).to_double() - b * std::log(static_cast<double>(n));
}

double birge_c(long long n) {
  require_n(n);
  const double target = log_ratio(n);
  // g -> +inf at 0 and -inf at 1.
  double lo = 1e-12;
  double hi = 1.0 - 1e-12;
  while (hi - lo > kBirgeTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (birge_g(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double birge_d(long long n) {
  require_n(n);
  constexpr double kStart = 1.0 - 1e-9;
  constexpr double kStep = 1e-4;
  double above = kStart;
  if (birge_r(n, above) <= 0.0) return above;
  double below = above;
  // Descend until the sign flips: r(below) <= 0 < r(above).
  while (true) {
    below = std::max(0.0, above - kStep);
    if (birge_r(n, below) <= 0.0) break;
    if (below == 0.0) return 0.0;
    above = below;
  }
  while (above - below > kBirgeTolerance) {
    const double mid = 0.5 * (below + above);
    if (birge_r(n, mid) <= 0.0) {
      below = mid;
    } else {
      above = mid;
    }
  }
  return below;
}

double massart_constant() {
  const double two_e = 2.0 * std::numbers::e;
  return (two_e - 1.0) / two_e;
}

double birge_bound(long long n, ExtReal k_bar, BirgeVariant variant) {
  require_n(n);
  double constant = 0.0;
  switch (variant) {
    case BirgeVariant::Cn: constant = birge_c(n); break;
    case BirgeVariant::Dn: constant = birge_d(n); break;
    case BirgeVariant::Massart: constant = massart_constant(); break;
  }
  if (k_bar.is_infinite()) return 1.0;
  const double ratio = k_bar.to_double() / std::log(static_cast<double>(n));
  return std::clamp(std::max(constant, ratio), 0.0, 1.0);
}

BirgeConstants birge_constants(long long n) {
  return {n, birge_c(n), birge_d(n), massart_constant()};
}

std::vector<BirgeConstants> comparison_table(std::span<const long long> n_values) {
  for (long long n : n_values) require_n(n);
  std::vector<BirgeConstants> rows;
  rows.reserve(n_values.size());
  for (long long n : n_values) rows.push_back(birge_constants(n));
  return rows;
}

}  // namespace fanolab
