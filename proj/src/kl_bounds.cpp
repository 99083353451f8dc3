#include "fanolab/kl_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fanolab/divergences.hpp"

namespace fanolab {

namespace {

void require_open_unit(double q) {
  if (!(q > 0.0 && q < 1.0)) throw Error(ErrorCode::DegenerateQ, "q must lie in (0,1)");
}

void require_closed_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, std::string(what) + " must lie in [0,1]");
  }
}

double clip01(double x) { return std::clamp(x, 0.0, 1.0); }

SolvedBound saturated(BoundFamily family) { return {1.0, family}; }

// (kl + offset) / ln(1/q), clipped.
SolvedBound over_log_inverse(ExtReal kl_val, double offset, double q, BoundFamily family) {
  if (kl_val.is_infinite()) return saturated(family);
  return {clip01((kl_val.to_double() + offset) / -std::log(q)), family};
}

}  // namespace

const char* bound_family_name(BoundFamily family) {
  switch (family) {
    case BoundFamily::Classic: return "classic";
    case BoundFamily::Refined: return "refined";
    case BoundFamily::Affine: return "affine";
    case BoundFamily::PinskerFano: return "pinsker_fano";
    case BoundFamily::PinskerFanoPlain: return "pinsker_fano_plain";
    case BoundFamily::Chi2: return "chi2";
    case BoundFamily::LeCam: return "lecam";
    case BoundFamily::LeCamSharp: return "lecam_sharp";
    case BoundFamily::KlInverse: return "kl_inverse";
  }
  return "?";
}

SolvedBound lb_classic(ExtReal kl_val, double q) {
  require_open_unit(q);
  return over_log_inverse(kl_val, std::numbers::ln2, q, BoundFamily::Classic);
}

SolvedBound lb_refined(ExtReal kl_val, double q) {
  require_open_unit(q);
  return over_log_inverse(kl_val, std::log(2.0 - q), q, BoundFamily::Refined);
}

SolvedBound lb_affine(ExtReal kl_val, double q) {
  require_open_unit(q);
  if (kl_val.is_infinite()) return saturated(BoundFamily::Affine);
  return {clip01(0.21 + 0.79 * q + kl_val.to_double() / -std::log(q)), BoundFamily::Affine};
}

SolvedBound lb_pinsker_fano(ExtReal kl_val, double q, PinskerDenominator denominator) {
  require_open_unit(q);
  const BoundFamily family = denominator == PinskerDenominator::MaxWithTwo
                                 ? BoundFamily::PinskerFano
                                 : BoundFamily::PinskerFanoPlain;
  if (kl_val.is_infinite()) return saturated(family);
  double den = -std::log(q);
  if (denominator == PinskerDenominator::MaxWithTwo) den = std::max(den, 2.0);
  return {clip01(q + std::sqrt(kl_val.to_double() / den)), family};
}

ExtReal pinsker_factor(double q) {
  require_closed_unit(q, "q");
  if (q == 0.0 || q == 1.0) return ExtReal::infinity();
  if (q == 0.5) return ExtReal::of(2.0);
  // log1p keeps the ratio accurate when q is close to 1/2.
  const double t = 1.0 - 2.0 * q;
  return ExtReal::of(std::log1p(t / q) / t);
}

double bretagnolle_huber_constant() { return std::exp(-1.0 / std::numbers::e); }

double bretagnolle_huber_q_lower(double p_val, ExtReal kl_val) {
  require_closed_unit(p_val, "p");
  if (kl_val.is_infinite()) return std::max(0.0, p_val - 1.0);
  return std::max(0.0, p_val - 1.0 + bretagnolle_huber_constant() * std::exp(-kl_val.to_double()));
}

SolvedBound lecam_hellinger(double h2_val, double q, bool sharp) {
  if (!(h2_val >= 0.0 && h2_val <= 2.0)) {
    throw Error(ErrorCode::OutOfRange, "squared Hellinger distance must lie in [0,2]");
  }
  require_closed_unit(q, "q");
  const double spread = h2_val * (1.0 - h2_val / 4.0);
  if (!sharp) return {clip01(q + std::sqrt(spread)), BoundFamily::LeCam};
  const double value = q + (1.0 - 2.0 * q) * spread +
                       2.0 * std::sqrt(q * (1.0 - q)) * (1.0 - h2_val / 2.0) * std::sqrt(spread);
  return {clip01(value), BoundFamily::LeCamSharp};
}

SolvedBound chi2_solved(ExtReal chi2_val, double q) {
  require_closed_unit(q, "q");
  // chi2 = +inf carries no information even at q = 0.
  if (chi2_val.is_infinite()) return saturated(BoundFamily::Chi2);
  return {clip01(q + std::sqrt(q * chi2_val.to_double())), BoundFamily::Chi2};
}

double kl_inverse(double q, ExtReal y) {
  require_open_unit(q);
  if (y.is_infinite() || y.to_double() >= -std::log(q)) return 1.0;
  const double target = y.to_double();
  if (target == 0.0) return q;
  // kl(., q) is increasing on [q, 1]; keep kl(lo) <= y < kl(hi).
  double lo = q;
  double hi = 1.0;
  for (int it = 0; it < kKlInverseMaxIterations && hi - lo > kKlInverseTolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (kl_bernoulli({mid, q}).to_double() <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double binary_entropy(double p) {
  require_closed_unit(p, "p");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log(p);
  if (p < 1.0) h -= (1.0 - p) * std::log1p(-p);
  return h;
}

}  // namespace fanolab
