#include "fanolab/divergences.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace fanolab {

namespace {

void require_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, std::string(name) + " must lie in [0,1]");
  }
}

// x - log1p(x), accurate for small |x| where the difference cancels.
double log1p_remainder(double x) {
  if (std::abs(x) > 0.1) return x - std::log1p(x);
  double term = x * x;
  double acc = 0.0;
  for (int k = 2; k < 40; ++k) {
    const double contribution = term / k;
    acc += (k % 2 == 0) ? contribution : -contribution;
    if (std::abs(contribution) <= 1e-18 * std::abs(acc)) break;
    term *= x;
  }
  return acc;
}

// q * f(p / q) for q > 0, written so that no ratio is formed when p = 0.
// The chi2 and Hellinger forms differ from q f(p/q) by a multiple of (p - q),
// which sums to zero whenever the singular part vanishes; when it does not,
// chi2 is +inf anyway and the Hellinger form is exact.
double perspective(GeneratorKind kind, double p, double q) {
  switch (kind) {
    case GeneratorKind::KL:
      return p > 0.0 ? p * std::log(p / q) : 0.0;
    case GeneratorKind::CHI2: {
      const double d = p - q;
      return d * d / q;
    }
    case GeneratorKind::HELLINGER: {
      const double d = std::sqrt(p) - std::sqrt(q);
      return d * d;
    }
  }
  return 0.0;
}

}  // namespace

FiniteDist::FiniteDist(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) {
    throw Error(ErrorCode::InvalidDistribution, "a distribution needs at least one atom");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || std::isinf(w)) {
      throw Error(ErrorCode::InvalidDistribution, "weights must be finite and >= 0");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    throw Error(ErrorCode::InvalidDistribution,
                "weights must sum to 1 within 1e-12 (sum = " + std::to_string(total) + ")");
  }
  for (double& w : weights_) w /= total;
}

FiniteDist FiniteDist::from_masses(std::vector<double> masses) {
  double total = 0.0;
  for (double m : masses) {
    if (!(m >= 0.0) || std::isinf(m)) {
      throw Error(ErrorCode::InvalidDistribution, "masses must be finite and >= 0");
    }
    total += m;
  }
  if (!(total > 0.0)) throw Error(ErrorCode::InvalidDistribution, "total mass must be positive");
  for (double& m : masses) m /= total;
  return FiniteDist(std::move(masses));
}

FiniteDist FiniteDist::point_mass(std::size_t k, std::size_t atom) {
  if (atom >= k) throw Error(ErrorCode::InvalidArgument, "atom index out of range");
  std::vector<double> w(k, 0.0);
  w[atom] = 1.0;
  return FiniteDist(std::move(w));
}

FiniteDist FiniteDist::uniform(std::size_t k) {
  if (k == 0) throw Error(ErrorCode::InvalidDistribution, "a distribution needs at least one atom");
  return from_masses(std::vector<double>(k, 1.0));
}

FiniteDist FiniteDist::pushforward(std::span<const std::size_t> image, std::size_t m) const {
  if (image.size() != size()) {
    throw Error(ErrorCode::MismatchedSupport, "map must assign an image to every atom");
  }
  std::vector<double> out(m, 0.0);
  for (std::size_t i = 0; i < size(); ++i) {
    if (image[i] >= m) throw Error(ErrorCode::InvalidArgument, "image index out of range");
    out[image[i]] += weights_[i];
  }
  return from_masses(std::move(out));
}

FiniteDist FiniteDist::mix(const FiniteDist& a, const FiniteDist& b, double lambda) {
  if (a.size() != b.size()) throw Error(ErrorCode::MismatchedSupport, "atom counts differ");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "mixing weight must lie in [0,1]");
  }
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = (1.0 - lambda) * a[i] + lambda * b[i];
  return from_masses(std::move(out));
}

double FiniteDist::expectation(std::span<const double> statistic) const {
  if (statistic.size() != size()) throw Error(ErrorCode::MismatchedSupport, "atom counts differ");
  double acc = 0.0;
  for (std::size_t i = 0; i < size(); ++i) acc += weights_[i] * statistic[i];
  return acc;
}

ConvexGenerator ConvexGenerator::of(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::KL: return {kind, ExtReal::infinity(), 0.0};
    case GeneratorKind::CHI2: return {kind, ExtReal::infinity(), -1.0};
    case GeneratorKind::HELLINGER: return {kind, ExtReal::of(1.0), 1.0};
  }
  throw Error(ErrorCode::InvalidArgument, "unknown generator");
}

double ConvexGenerator::operator()(double t) const {
  if (t == 0.0) return f_at_zero;
  switch (kind) {
    case GeneratorKind::KL: return t * std::log(t);
    case GeneratorKind::CHI2: return t * t - 1.0;
    case GeneratorKind::HELLINGER: {
      const double d = std::sqrt(t) - 1.0;
      return d * d;
    }
  }
  return 0.0;
}

const char* generator_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::KL: return "kl";
    case GeneratorKind::CHI2: return "chi2";
    case GeneratorKind::HELLINGER: return "hellinger";
  }
  return "?";
}

BernoulliPair::BernoulliPair(double p_, double q_) : p(p_), q(q_) {
  require_probability(p, "p");
  require_probability(q, "q");
}

ExtReal kl_bernoulli(BernoulliPair pair) {
  const double p = pair.p;
  const double q = pair.q;
  // Boundary q first so no log(0) is ever evaluated.
  if (q == 0.0) return p > 0.0 ? ExtReal::infinity() : ExtReal::zero();
  if (q == 1.0) return p < 1.0 ? ExtReal::infinity() : ExtReal::zero();
  const double d = p - q;
  const double u = d / q;
  const double v = -d / (1.0 - q);
  if (std::abs(u) <= 0.1 && std::abs(v) <= 0.1) {
    // The first-order parts of the two log terms cancel exactly; summing
    // them symbolically keeps full relative precision near p = q.
    const double acc =
        d * d / (q * (1.0 - q)) - p * log1p_remainder(u) - (1.0 - p) * log1p_remainder(v);
    return ExtReal::clamped(acc);
  }
  double acc = 0.0;
  if (p > 0.0) acc += p * std::log(p / q);
  if (p < 1.0) acc += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return ExtReal::clamped(acc);
}

ExtReal chi2_bernoulli(BernoulliPair pair) {
  const double d = pair.p - pair.q;
  return ext_divide(d * d, pair.q * (1.0 - pair.q));
}

double hellinger2_bernoulli(BernoulliPair pair) {
  const double affinity =
      std::sqrt(pair.p * pair.q) + std::sqrt((1.0 - pair.p) * (1.0 - pair.q));
  return std::clamp(2.0 * (1.0 - affinity), 0.0, 2.0);
}

ExtReal bernoulli_divergence(GeneratorKind kind, BernoulliPair pair) {
  switch (kind) {
    case GeneratorKind::KL: return kl_bernoulli(pair);
    case GeneratorKind::CHI2: return chi2_bernoulli(pair);
    case GeneratorKind::HELLINGER: return ExtReal::of(hellinger2_bernoulli(pair));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown generator");
}

ExtReal divergence_finite(const ConvexGenerator& f, const FiniteDist& p, const FiniteDist& q) {
  if (p.size() != q.size()) {
    throw Error(ErrorCode::MismatchedSupport,
                "atom counts differ (" + std::to_string(p.size()) + " vs " +
                    std::to_string(q.size()) + ")");
  }
  double absolutely_continuous = 0.0;
  double singular_mass = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (q[i] > 0.0) {
      absolutely_continuous += perspective(f.kind, p[i], q[i]);
    } else {
      singular_mass += p[i];
    }
  }
  return ExtReal::clamped(absolutely_continuous) + ExtReal::of(singular_mass) * f.maximal_slope;
}

ExtReal kl_product_scale(ExtReal base_kl, long long n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "product size must be positive");
  return base_kl.scaled(static_cast<double>(n));
}

double kl_gaussian_iso(double delta_sq, double sigma, long long n) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::NonPositiveSigma, "sigma must be > 0");
  if (!(delta_sq >= 0.0)) throw Error(ErrorCode::InvalidArgument, "squared distance must be >= 0");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample size must be positive");
  return static_cast<double>(n) * delta_sq / (2.0 * sigma * sigma);
}

}  // namespace fanolab
