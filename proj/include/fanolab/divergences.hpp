#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fanolab/ext_real.hpp"

namespace fanolab {

/// Probability vector over indexed atoms.
///
/// Construction accepts weights whose sum deviates from 1 by at most
/// kNormalizationTolerance and renormalizes them; anything else is rejected.
class FiniteDist {
 public:
  static constexpr double kNormalizationTolerance = 1e-12;

  explicit FiniteDist(std::vector<double> weights);

  /// Normalizes arbitrary non-negative masses with a positive total.
  static FiniteDist from_masses(std::vector<double> masses);
  static FiniteDist point_mass(std::size_t k, std::size_t atom);
  static FiniteDist uniform(std::size_t k);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  /// Pushforward through a deterministic map atom -> image[atom] in [0, m).
  FiniteDist pushforward(std::span<const std::size_t> image, std::size_t m) const;

  /// (1 - lambda) * a + lambda * b.
  static FiniteDist mix(const FiniteDist& a, const FiniteDist& b, double lambda);

  /// Expectation of a statistic indexed by atom.
  double expectation(std::span<const double> statistic) const;

 private:
  std::vector<double> weights_;
};

enum class GeneratorKind { KL, CHI2, HELLINGER };

/// One of the three shipped convex generators f with f(1) = 0.
struct ConvexGenerator {
  GeneratorKind kind;
  ExtReal maximal_slope;  // lim f(t)/t as t -> inf
  double f_at_zero;

  static ConvexGenerator of(GeneratorKind kind);

  /// f(t) for t >= 0.
  double operator()(double t) const;
};

const char* generator_name(GeneratorKind kind);

struct BernoulliPair {
  double p;
  double q;

  BernoulliPair(double p, double q);
};

ExtReal kl_bernoulli(BernoulliPair pair);
ExtReal chi2_bernoulli(BernoulliPair pair);
double hellinger2_bernoulli(BernoulliPair pair);

/// Closed-form divergence between Bernoulli laws for the given generator.
ExtReal bernoulli_divergence(GeneratorKind kind, BernoulliPair pair);

/// Div_f(P, Q) = sum_{q_i > 0} q_i f(p_i / q_i) + P(q = 0) * M_f.
ExtReal divergence_finite(const ConvexGenerator& f, const FiniteDist& p, const FiniteDist& q);

inline ExtReal divergence_finite(GeneratorKind kind, const FiniteDist& p, const FiniteDist& q) {
  return divergence_finite(ConvexGenerator::of(kind), p, q);
}

/// KL between n-fold products given the single-factor KL.
ExtReal kl_product_scale(ExtReal base_kl, long long n);

/// n * KL(N(theta, sigma^2 I), N(theta', sigma^2 I)) for ||theta - theta'||^2 = delta_sq.
double kl_gaussian_iso(double delta_sq, double sigma, long long n);

}  // namespace fanolab
