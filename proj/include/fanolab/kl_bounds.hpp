#pragma once

#include "fanolab/ext_real.hpp"

namespace fanolab {

/// Which scalar inequality produced a solved bound.
enum class BoundFamily {
  Classic,          // p <= (kl + ln 2) / ln(1/q)
  Refined,          // ln 2 replaced by ln(2 - q)
  Affine,           // p <= 0.21 + 0.79 q + kl / ln(1/q)
  PinskerFano,      // p <= q + sqrt(kl / max{ln(1/q), 2})
  PinskerFanoPlain, // p <= q + sqrt(kl / ln(1/q))
  Chi2,             // p <= q + sqrt(q chi2)
  LeCam,            // p <= q + sqrt(h2 (1 - h2/4))
  LeCamSharp,
  KlInverse,
};

const char* bound_family_name(BoundFamily family);

/// Upper bound on p solved from a divergence lower bound; always in [0,1].
struct SolvedBound {
  double bound_on_p;
  BoundFamily family;

  bool vacuous() const { return bound_on_p >= 1.0; }
};

SolvedBound lb_classic(ExtReal kl_val, double q);
SolvedBound lb_refined(ExtReal kl_val, double q);
SolvedBound lb_affine(ExtReal kl_val, double q);

enum class PinskerDenominator { MaxWithTwo, Plain };

SolvedBound lb_pinsker_fano(ExtReal kl_val, double q,
                            PinskerDenominator denominator = PinskerDenominator::MaxWithTwo);

/// phi(q) = ln((1-q)/q) / (1-2q), extended by continuity: phi(1/2) = 2,
/// phi(0) = phi(1) = +inf. Optimal constant in kl(p,q) >= phi(q) (p-q)^2.
ExtReal pinsker_factor(double q);

/// e^{-1/e}, the improved Bretagnolle-Huber multiplier.
double bretagnolle_huber_constant();

/// max{0, p - 1 + e^{-1/e} e^{-kl}}: a lower bound on q.
double bretagnolle_huber_q_lower(double p_val, ExtReal kl_val);

/// Le Cam bound from the squared Hellinger distance; `sharp` selects the
/// exactly-solved variant, which is never larger than the simple one.
SolvedBound lecam_hellinger(double h2_val, double q, bool sharp);

SolvedBound chi2_solved(ExtReal chi2_val, double q);

/// sup{p in [0,1] : kl(p, q) <= y}, by bisection on [q, 1].
double kl_inverse(double q, ExtReal y);

inline constexpr double kKlInverseTolerance = 1e-12;
inline constexpr int kKlInverseMaxIterations = 200;

/// -(p ln p + (1-p) ln(1-p)) with 0 ln 0 = 0.
double binary_entropy(double p);

}  // namespace fanolab
