#pragma once

#include <span>
#include <vector>

#include "fanolab/divergences.hpp"
#include "fanolab/kl_bounds.hpp"

namespace fanolab {

/// One member of a weighted family: its weight, the expectations of a
/// [0,1]-valued statistic under P_i and Q_i, and Div_f(P_i, Q_i).
struct FamilyEntry {
  double weight;
  double p_exp;
  double q_exp;
  ExtReal div;
};

/// Weight-averages (p_bar, q_bar, d_bar) of a family.
struct ReducedPair {
  double p_bar;
  double q_bar;
  ExtReal d_bar;
};

enum class BoundDirection { UpperOnP, LowerOnQ };

struct FanoReport {
  ReducedPair reduced;
  BoundFamily family;
  double value;
  BoundDirection direction = BoundDirection::UpperOnP;

  /// The bound carries no information (saturated at 1).
  bool vacuous() const { return direction == BoundDirection::UpperOnP && value >= 1.0; }
};

inline constexpr double kWeightTolerance = 1e-12;

/// Weighted averages of the family. Weights must sum to 1 within 1e-12.
ReducedPair reduce(std::span<const FamilyEntry> entries);

enum class KlVariant { Classic, Refined, Affine };

FanoReport fano_kl(const ReducedPair& reduced, KlVariant variant);

/// p_bar <= q_bar + sqrt(d_bar / den); den = max{-ln q_bar, 2} unless
/// `use_max_denominator` is false, then den = -ln q_bar.
FanoReport fano_kl_sqrt(const ReducedPair& reduced, bool use_max_denominator = true);

FanoReport fano_chi2(const ReducedPair& reduced);
FanoReport fano_hellinger(const ReducedPair& reduced);

/// Sharpest solved form: the generalized kl-inverse at (q_bar, d_bar).
FanoReport fano_kl_inverse(const ReducedPair& reduced);

/// Lower bound exp(-(KL + ln 2) / E_P[Z]) on E_Q[Z]; zero when E_P[Z] = 0 or
/// KL = +inf.
double haroutunian_q_lower(double p_exp, ExtReal kl_val);

struct BayesRiskBound {
  double value;
  double min_average_loss;  // inf_a sum_theta nu_theta L(theta, a)
  bool zero_loss;           // min_average_loss == 0: the bound is the vacuous 0
};

/// Lower bound on the Bayes risk with a [0,1]-valued loss matrix
/// (rows indexed by theta, columns by actions) given KL(P_theta, Q) for each
/// theta against a common alternative Q (the prior mixture is optimal).
BayesRiskBound bayes_risk_lower(const FiniteDist& prior,
                                const std::vector<std::vector<double>>& loss,
                                std::span<const ExtReal> kl_to_mixture);

struct ConstantAlternative {
  FiniteDist mixture;
  ExtReal avg_div;
  ExtReal cap;
};

/// Prior mixture sum_i alpha_i P_i as the common alternative, the resulting
/// average divergence, and its closed-form cap max_j Div_f(delta_j, alpha).
ConstantAlternative best_constant_alternative(const ConvexGenerator& f,
                                              std::span<const FiniteDist> dists,
                                              const FiniteDist& alpha);

/// H_inf(nu) = -ln max_theta nu(theta).
double renyi_infty(const FiniteDist& prior);

/// The three partition bounds with N hypotheses, a constant alternative and
/// the averaged divergence k_bar: refined (ln(2 - 1/N)), classic (ln 2) and
/// Pinsker-Fano (1/N + sqrt(k_bar / max{ln N, 2})).
struct PartitionBounds {
  double refined;
  double classic;
  double pinsker;
};

PartitionBounds partition_bounds(long long n_hypotheses, ExtReal k_bar);

}  // namespace fanolab
