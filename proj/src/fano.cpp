#include "fanolab/fano.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

namespace fanolab {

namespace {

void require_open_q_bar(const ReducedPair& r) {
  if (!(r.q_bar > 0.0 && r.q_bar < 1.0)) {
    throw Error(ErrorCode::DegenerateQBar,
                "the averaged alternative probability q_bar must satisfy 0 < q_bar < 1");
  }
}

FanoReport make_report(const ReducedPair& r, const SolvedBound& b) {
  return {r, b.family, b.bound_on_p, BoundDirection::UpperOnP};
}

// Neumaier compensated sum.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

ReducedPair reduce(std::span<const FamilyEntry> entries) {
  if (entries.empty()) throw Error(ErrorCode::BadWeights, "the family is empty");
  // Plain sums inside blocks of 32, compensated across blocks.
  constexpr std::size_t kBlock = 32;
  CompensatedSum total;
  CompensatedSum p_bar;
  CompensatedSum q_bar;
  CompensatedSum d_finite;
  bool d_infinite = false;
  for (std::size_t start = 0; start < entries.size(); start += kBlock) {
    const std::size_t stop = std::min(entries.size(), start + kBlock);
    double w_sum = 0.0;
    double p_sum = 0.0;
    double q_sum = 0.0;
    double d_sum = 0.0;
    for (std::size_t i = start; i < stop; ++i) {
      const FamilyEntry& e = entries[i];
      if (!(e.weight >= 0.0) || std::isinf(e.weight)) {
        throw Error(ErrorCode::BadWeights, "weights must be finite and >= 0");
      }
      if (!(e.p_exp >= 0.0 && e.p_exp <= 1.0 && e.q_exp >= 0.0 && e.q_exp <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "expectations of [0,1]-valued statistics lie in [0,1]");
      }
      w_sum += e.weight;
      p_sum += e.weight * e.p_exp;
      q_sum += e.weight * e.q_exp;
      if (e.div.is_infinite()) {
        d_infinite = d_infinite || e.weight > 0.0;
      } else {
        d_sum += e.weight * e.div.to_double();
      }
    }
    total += w_sum;
    p_bar += p_sum;
    q_bar += q_sum;
    d_finite += d_sum;
  }
  if (std::abs(total.value() - 1.0) > kWeightTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "weights must sum to 1 within 1e-12 (sum = " << total.value() << ")";
    throw Error(ErrorCode::BadWeights, msg.str());
  }
  const ExtReal d_bar = d_infinite ? ExtReal::infinity() : ExtReal::clamped(d_finite.value());
  return {std::clamp(p_bar.value(), 0.0, 1.0), std::clamp(q_bar.value(), 0.0, 1.0), d_bar};
}

FanoReport fano_kl(const ReducedPair& reduced, KlVariant variant) {
  require_open_q_bar(reduced);
  switch (variant) {
    case KlVariant::Classic: return make_report(reduced, lb_classic(reduced.d_bar, reduced.q_bar));
    case KlVariant::Refined: return make_report(reduced, lb_refined(reduced.d_bar, reduced.q_bar));
    case KlVariant::Affine: return make_report(reduced, lb_affine(reduced.d_bar, reduced.q_bar));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown kl variant");
}

FanoReport fano_kl_sqrt(const ReducedPair& reduced, bool use_max_denominator) {
  require_open_q_bar(reduced);
  const auto den = use_max_denominator ? PinskerDenominator::MaxWithTwo : PinskerDenominator::Plain;
  return make_report(reduced, lb_pinsker_fano(reduced.d_bar, reduced.q_bar, den));
}

// The chi2 and Hellinger solved forms stay valid for q_bar in {0, 1}, so only
// the kl-based assemblies reject degenerate averages.
FanoReport fano_chi2(const ReducedPair& reduced) {
  return make_report(reduced, chi2_solved(reduced.d_bar, reduced.q_bar));
}

FanoReport fano_hellinger(const ReducedPair& reduced) {
  if (reduced.d_bar.is_infinite() || reduced.d_bar.to_double() > 2.0) {
    throw Error(ErrorCode::OutOfRange, "averaged squared Hellinger distance exceeds 2");
  }
  return make_report(reduced, lecam_hellinger(reduced.d_bar.to_double(), reduced.q_bar, false));
}

FanoReport fano_kl_inverse(const ReducedPair& reduced) {
  require_open_q_bar(reduced);
  return {reduced, BoundFamily::KlInverse, kl_inverse(reduced.q_bar, reduced.d_bar),
          BoundDirection::UpperOnP};
}

double haroutunian_q_lower(double p_exp, ExtReal kl_val) {
  if (!(p_exp >= 0.0 && p_exp <= 1.0)) throw Error(ErrorCode::OutOfRange, "E_P[Z] must lie in [0,1]");
  if (p_exp == 0.0 || kl_val.is_infinite()) return 0.0;
  return std::exp(-(kl_val.to_double() + std::numbers::ln2) / p_exp);
}

BayesRiskBound bayes_risk_lower(const FiniteDist& prior,
                                const std::vector<std::vector<double>>& loss,
                                std::span<const ExtReal> kl_to_mixture) {
  const std::size_t n_theta = prior.size();
  if (loss.size() != n_theta || kl_to_mixture.size() != n_theta) {
    throw Error(ErrorCode::MismatchedSupport, "loss rows and KL values must match the prior");
  }
  const std::size_t n_actions = loss.front().size();
  if (n_actions == 0) throw Error(ErrorCode::InvalidArgument, "the action set is empty");
  for (const auto& row : loss) {
    if (row.size() != n_actions) throw Error(ErrorCode::MismatchedSupport, "ragged loss matrix");
    for (double l : row) {
      if (!(l >= 0.0 && l <= 1.0)) throw Error(ErrorCode::OutOfRange, "losses must lie in [0,1]");
    }
  }

  double min_loss = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < n_actions; ++a) {
    double avg = 0.0;
    for (std::size_t t = 0; t < n_theta; ++t) avg += prior[t] * loss[t][a];
    min_loss = std::min(min_loss, avg);
  }
  min_loss = std::clamp(min_loss, 0.0, 1.0);

  if (min_loss == 0.0) return {0.0, 0.0, true};
  if (min_loss >= 1.0) {
    throw Error(ErrorCode::DegenerateLoss,
                "every action has average loss 1; ln(1 - loss) is undefined");
  }

  ExtReal avg_kl;
  for (std::size_t t = 0; t < n_theta; ++t) avg_kl += kl_to_mixture[t].scaled(prior[t]);
  if (avg_kl.is_infinite()) return {0.0, min_loss, false};

  const double value =
      1.0 + (avg_kl.to_double() + std::log1p(min_loss)) / std::log1p(-min_loss);
  return {std::clamp(value, 0.0, 1.0), min_loss, false};
}

ConstantAlternative best_constant_alternative(const ConvexGenerator& f,
                                              std::span<const FiniteDist> dists,
                                              const FiniteDist& alpha) {
  if (dists.empty() || dists.size() != alpha.size()) {
    throw Error(ErrorCode::MismatchedSupport, "one weight per distribution is required");
  }
  const std::size_t k = dists.front().size();
  for (const FiniteDist& d : dists) {
    if (d.size() != k) throw Error(ErrorCode::MismatchedSupport, "distributions differ in support");
  }
  double min_alpha = 1.0;
  for (double a : alpha.weights()) {
    if (a <= 0.0) throw Error(ErrorCode::ZeroWeight, "every alpha_i must be positive");
    min_alpha = std::min(min_alpha, a);
  }

  std::vector<double> mix(k, 0.0);
  for (std::size_t i = 0; i < dists.size(); ++i) {
    for (std::size_t j = 0; j < k; ++j) mix[j] += alpha[i] * dists[i][j];
  }
  FiniteDist mixture = FiniteDist::from_masses(std::move(mix));

  ExtReal avg;
  for (std::size_t i = 0; i < dists.size(); ++i) {
    avg += divergence_finite(f, dists[i], mixture).scaled(alpha[i]);
  }

  // max_j Div_f(delta_j, alpha) is attained at the smallest alpha_j.
  ExtReal cap;
  switch (f.kind) {
    case GeneratorKind::KL: cap = ExtReal::clamped(-std::log(min_alpha)); break;
    case GeneratorKind::CHI2: cap = ExtReal::clamped(1.0 / min_alpha - 1.0); break;
    case GeneratorKind::HELLINGER: cap = ExtReal::clamped(2.0 * (1.0 - std::sqrt(min_alpha))); break;
  }
  return {std::move(mixture), avg, cap};
}

double renyi_infty(const FiniteDist& prior) {
  const auto w = prior.weights();
  return -std::log(*std::max_element(w.begin(), w.end()));
}

PartitionBounds partition_bounds(long long n_hypotheses, ExtReal k_bar) {
  if (n_hypotheses < 2) throw Error(ErrorCode::BadN, "a partition needs N >= 2 cells");
  const double q = 1.0 / static_cast<double>(n_hypotheses);
  return {lb_refined(k_bar, q).bound_on_p, lb_classic(k_bar, q).bound_on_p,
          lb_pinsker_fano(k_bar, q).bound_on_p};
}

}  // namespace fanolab
