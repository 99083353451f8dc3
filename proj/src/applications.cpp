#include "fanolab/applications.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>
#include <thread>
#include <unordered_map>

#include "fanolab/rng.hpp"

namespace fanolab {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // (sqrt(5) - 1) / 2

// Golden-section search for the minimum of a unimodal f on [a, b].
template <typename F>
double golden_section_minimize(F&& f, double a, double b, double tol) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Pairwise summation, so the total does not depend on how values were produced.
double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

// Advances `comb` (ascending, values < n) to the next k-subset in
// lexicographic order; false after the last one.
inline bool next_combination(std::vector<int>& comb, int n) {
  int* c = comb.data();
  const int k = static_cast<int>(comb.size());
  if (c[k - 1] < n - 1) {
    ++c[k - 1];
    return true;
  }
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

void validate_sparse(long long n_arms, long long sparsity, double epsilon) {
  if (n_arms < 2) throw Error(ErrorCode::BadN, "the number of arms must be >= 2");
  if (sparsity < 1 || sparsity > n_arms) {
    throw Error(ErrorCode::BadRange, "the sparsity must lie in {1, ..., N}");
  }
  if (sparsity > 62) throw Error(ErrorCode::TooLarge, "sparsity above 62 cannot be enumerated");
  const double limit = static_cast<double>(sparsity) / (2.0 * static_cast<double>(n_arms));
  if (!(epsilon > 0.0 && epsilon < limit)) {
    throw Error(ErrorCode::BadEpsilon, "epsilon must lie in (0, s/(2N))");
  }
}

void require_budget(long long n_arms, long long sparsity) {
  if (sparse_env_atom_count(n_arms, sparsity) > kSparseEnvBudget) {
    throw Error(ErrorCode::TooLarge, "C(N,s) * 2^s exceeds the enumeration budget of 1e6 atoms");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

GaussianModel::GaussianModel(long long d_, long long n_, double sigma_)
    : d(d_), n(n_), sigma(sigma_) {
  if (d < 1) throw Error(ErrorCode::BadDimension, "dimension must be >= 1");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "sample size must be >= 1");
  if (!(sigma > 0.0)) throw Error(ErrorCode::NonPositiveSigma, "sigma must be > 0");
}

double posterior_objective(long long d, double rho) {
  const double log_rho = std::log(rho);
  return std::exp(-static_cast<double>(d) * log_rho) + rho / (8.0 * std::sqrt(2.0 * log_rho));
}

PosteriorConstant posterior_constant(long long d) {
  if (d < 1) throw Error(ErrorCode::BadDimension, "dimension must be >= 1");
  const double log_max = std::log(kRhoUpperLimit);
  auto grid_rho = [&](int k) { return std::exp(log_max * k / kRhoGridPoints); };

  int best = 1;
  double best_value = posterior_objective(d, grid_rho(1));
  for (int k = 2; k <= kRhoGridPoints; ++k) {
    const double v = posterior_objective(d, grid_rho(k));
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }
  // The bracket ends are never evaluated.
  const double lo = grid_rho(best - 1);
  const double hi = grid_rho(std::min(best + 1, kRhoGridPoints));
  auto objective = [d](double rho) { return posterior_objective(d, rho); };
  const double rho = golden_section_minimize(objective, lo, hi, 1e-10);
  const double value = objective(rho);
  if (value < best_value) return {value, rho};
  return {best_value, grid_rho(best)};
}

PosteriorMinimaxBound posterior_minimax_bound(const GaussianModel& model) {
  const double eps = model.sigma / 8.0 *
                     std::sqrt(static_cast<double>(model.d) / static_cast<double>(model.n));
  const PosteriorConstant c = posterior_constant(model.d);
  return {eps, c.c_d, c.rho_star};
}

ExtReal psi_gaussian(double epsilon, double sigma) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::NonPositive, "epsilon must be > 0");
  if (!(sigma > 0.0)) throw Error(ErrorCode::NonPositive, "sigma must be > 0");
  // The infimum is attained at distance exactly 2 eps.
  const double dist = 2.0 * epsilon;
  return ExtReal::of(kl_gaussian_iso(dist * dist, sigma, 1));
}

ExtReal psi_bernoulli(double epsilon, double theta) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::NonPositive, "epsilon must be > 0");
  if (!(theta >= 0.0 && theta <= 1.0)) throw Error(ErrorCode::OutOfRange, "theta must lie in [0,1]");
  ExtReal best = ExtReal::infinity();
  // kl(., theta) increases away from theta on both sides.
  if (theta + 2.0 * epsilon <= 1.0) best = std::min(best, kl_bernoulli({theta + 2.0 * epsilon, theta}));
  if (theta - 2.0 * epsilon >= 0.0) best = std::min(best, kl_bernoulli({theta - 2.0 * epsilon, theta}));
  return best;
}

double posterior_dd_bound(ExtReal psi, long long n, double c) {
  if (!(c > 1.0)) throw Error(ErrorCode::BadC, "c must be > 1");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
  const ExtReal exponent = psi.scaled(c * static_cast<double>(n));
  if (exponent.is_infinite()) return 0.0;
  return std::exp2(-c) * std::exp(-exponent.to_double());
}

// ---------------------------------------------------------------------------

const char* regime_name(RegretRegime regime) {
  switch (regime) {
    case RegretRegime::Null: return "null";
    case RegretRegime::SmallHorizon: return "small_T";
    case RegretRegime::LargeHorizon: return "large_T";
  }
  return "?";
}

SparseRegretBound sparse_regret_bound(long long n_arms, long long sparsity, long long horizon) {
  if (n_arms < 2) throw Error(ErrorCode::BadN, "the number of arms must be >= 2");
  if (sparsity < 0 || sparsity > n_arms) throw Error(ErrorCode::BadRange, "s must lie in {0..N}");
  if (horizon < 1) throw Error(ErrorCode::BadRange, "the horizon must be >= 1");
  if (sparsity == 0) return {0.0, 0.0, RegretRegime::Null};

  const double n = static_cast<double>(n_arms);
  const double s = static_cast<double>(sparsity);
  const double t = static_cast<double>(horizon);
  const double log_n = std::log(n);

  const double small_branch = s * t / (16.0 * n);
  const double large_branch = std::sqrt(t * (s / n) * log_n) / 32.0;
  const double bound = std::min(small_branch, large_branch);

  const double threshold = n * log_n / (16.0 * s);
  if (t > threshold) {
    const double c = 2.0 * std::sqrt(n * t) / std::sqrt(s * log_n);
    return {bound, 1.0 / (4.0 * c), RegretRegime::LargeHorizon};
  }
  return {bound, s / (4.0 * n), RegretRegime::SmallHorizon};
}

SparseLossConfig::SparseLossConfig(long long n, long long s, long long t, double eps)
    : n_arms(n), sparsity(s), horizon(t), epsilon(eps) {
  validate_sparse(n, s, eps);
  if (t < 1) throw Error(ErrorCode::BadRange, "the horizon must be >= 1");
}

std::uint64_t sparse_env_atom_count(long long n_arms, long long sparsity) {
  if (sparsity < 0 || sparsity > n_arms || sparsity > 62) return UINT64_MAX;
  // C(N, s) by the multiplicative formula, saturating.
  unsigned __int128 c = 1;
  for (long long j = 1; j <= sparsity; ++j) {
    c = c * static_cast<unsigned __int128>(n_arms - sparsity + j) / static_cast<unsigned __int128>(j);
    if (c > UINT64_MAX) return UINT64_MAX;
  }
  const unsigned __int128 atoms = c << sparsity;
  return atoms > UINT64_MAX ? UINT64_MAX : static_cast<std::uint64_t>(atoms);
}

SparseEnv::SparseEnv(long long n_arms, long long sparsity, double epsilon)
    : n_arms_(n_arms),
      sparsity_(sparsity),
      epsilon_(epsilon),
      subset_count_(0),
      base_(FiniteDist::uniform(1)) {
  validate_sparse(n_arms, sparsity, epsilon);
  require_budget(n_arms, sparsity);
  subset_count_ = static_cast<std::size_t>(sparse_env_atom_count(n_arms, sparsity) >> sparsity);
  subsets_.reserve(subset_count_ * static_cast<std::size_t>(sparsity));
  std::vector<int> comb(static_cast<std::size_t>(sparsity));
  std::iota(comb.begin(), comb.end(), 0);
  do {
    subsets_.insert(subsets_.end(), comb.begin(), comb.end());
  } while (next_combination(comb, static_cast<int>(n_arms)));
  base_ = FiniteDist::uniform(atom_count());
}

std::vector<int> SparseEnv::subset(std::size_t subset_index) const {
  const auto s = static_cast<std::size_t>(sparsity_);
  const auto first = subsets_.begin() + static_cast<std::ptrdiff_t>(subset_index * s);
  return {first, first + static_cast<std::ptrdiff_t>(s)};
}

std::vector<int> SparseEnv::loss_vector(std::size_t atom) const {
  const std::size_t pattern = atom & ((std::size_t{1} << sparsity_) - 1);
  const std::size_t subset_index = atom >> sparsity_;
  std::vector<int> loss(static_cast<std::size_t>(n_arms_), 0);
  for (long long j = 0; j < sparsity_; ++j) {
    loss[static_cast<std::size_t>(subsets_[subset_index * sparsity_ + j])] =
        static_cast<int>((pattern >> j) & 1U);
  }
  return loss;
}

FiniteDist SparseEnv::hypothesis(long long i) const {
  if (i < 0 || i >= n_arms_) throw Error(ErrorCode::InvalidArgument, "hypothesis index out of range");
  const auto s = static_cast<std::size_t>(sparsity_);
  const double favored = 0.5 - epsilon_ * static_cast<double>(n_arms_) / static_cast<double>(sparsity_);
  const double subset_mass = 1.0 / static_cast<double>(subset_count_);
  const double fair = std::ldexp(1.0, -static_cast<int>(sparsity_));
  std::vector<double> w(atom_count());
  for (std::size_t sub = 0; sub < subset_count_; ++sub) {
    std::size_t slot = s;  // position of i inside the subset, s if absent
    for (std::size_t j = 0; j < s; ++j) {
      if (subsets_[sub * s + j] == i) slot = j;
    }
    for (std::size_t pattern = 0; pattern < (std::size_t{1} << s); ++pattern) {
      double mass = subset_mass;
      if (slot == s) {
        mass *= fair;
      } else {
        // Fair coins on the other s-1 picked components, biased coin on i.
        mass *= 2.0 * fair * (((pattern >> slot) & 1U) ? favored : 1.0 - favored);
      }
      w[(sub << s) | pattern] = mass;
    }
  }
  return FiniteDist::from_masses(std::move(w));
}

double SparseEnv::marginal(const FiniteDist& dist, long long k) const {
  if (dist.size() != atom_count()) throw Error(ErrorCode::MismatchedSupport, "not a law on this env");
  const auto s = static_cast<std::size_t>(sparsity_);
  double mass = 0.0;
  for (std::size_t sub = 0; sub < subset_count_; ++sub) {
    for (std::size_t j = 0; j < s; ++j) {
      if (subsets_[sub * s + j] != k) continue;
      for (std::size_t pattern = 0; pattern < (std::size_t{1} << s); ++pattern) {
        if ((pattern >> j) & 1U) mass += dist[(sub << s) | pattern];
      }
    }
  }
  return mass;
}

std::pair<std::vector<std::size_t>, std::size_t> SparseEnv::loss_vector_image() const {
  std::vector<std::size_t> image(atom_count());
  std::unordered_map<std::vector<bool>, std::size_t> ids;
  for (std::size_t a = 0; a < atom_count(); ++a) {
    const std::vector<int> loss = loss_vector(a);
    std::vector<bool> key(loss.begin(), loss.end());
    auto [it, inserted] = ids.try_emplace(std::move(key), ids.size());
    image[a] = it->second;
  }
  return {std::move(image), ids.size()};
}

SparseEnv build_sparse_env(long long n_arms, long long sparsity, double epsilon) {
  return SparseEnv(n_arms, sparsity, epsilon);
}

std::vector<double> sparse_env_kl(long long n_arms, long long sparsity, double epsilon) {
  validate_sparse(n_arms, sparsity, epsilon);
  require_budget(n_arms, sparsity);
  const auto s = static_cast<std::size_t>(sparsity);
  const double subsets = static_cast<double>(sparse_env_atom_count(n_arms, sparsity) >> sparsity);
  const double q_atom = 1.0 / (subsets * std::ldexp(1.0, static_cast<int>(sparsity)));
  // P_i(atom) / Q(atom) depends only on the loss drawn at component i.
  const double favored = 0.5 - epsilon * static_cast<double>(n_arms) / static_cast<double>(sparsity);
  const double ratio[2] = {2.0 * (1.0 - favored), 2.0 * favored};
  // P_i(atom) ln(P_i(atom) / Q(atom)) for each value of the bit at i.
  const double term[2] = {q_atom * ratio[0] * std::log(ratio[0]), q_atom * ratio[1] * std::log(ratio[1])};

  std::vector<double> kl(static_cast<std::size_t>(n_arms), 0.0);
  std::vector<int> comb(s);
  std::iota(comb.begin(), comb.end(), 0);
  const std::size_t patterns = std::size_t{1} << s;
  // The pattern sum for the j-th picked component does not depend on which
  // subset was picked, so it is enumerated once per position.
  std::vector<double> position_sum(s, 0.0);
  for (std::size_t j = 0; j < s; ++j) {
    for (std::size_t pattern = 0; pattern < patterns; ++pattern) {
      position_sum[j] += term[(pattern >> j) & 1U];
    }
  }
  do {
    for (std::size_t j = 0; j < s; ++j) kl[static_cast<std::size_t>(comb[j])] += position_sum[j];
  } while (next_combination(comb, static_cast<int>(n_arms)));
  return kl;
}

KlQuadratic kl_quadratic_check(double p, double epsilon) {
  if (!(p > 0.0 && p < 1.0 && epsilon > 0.0 && epsilon < p)) {
    throw Error(ErrorCode::BadRange, "requires 0 < epsilon < p < 1");
  }
  return {kl_bernoulli({p - epsilon, p}).to_double(), epsilon * epsilon / (p * (1.0 - p))};
}

// ---------------------------------------------------------------------------

double log_binomial_upper_tail(long long n, double theta, long long k_min) {
  if (k_min <= 0) return 0.0;
  if (k_min > n) return -std::numeric_limits<double>::infinity();
  const double log_theta = std::log(theta);
  const double log_one_minus = std::log1p(-theta);
  const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
  auto log_term = [&](long long k) {
    const double kd = static_cast<double>(k);
    const double rest = static_cast<double>(n - k);
    return log_n_fact - std::lgamma(kd + 1.0) - std::lgamma(rest + 1.0) + kd * log_theta +
           rest * log_one_minus;
  };
  double peak = -std::numeric_limits<double>::infinity();
  for (long long k = k_min; k <= n; ++k) peak = std::max(peak, log_term(k));
  double acc = 0.0;
  for (long long k = k_min; k <= n; ++k) acc += std::exp(log_term(k) - peak);
  return peak + std::log(acc);
}

CramerRate cramer_rate(double theta, double x, long long n) {
  if (!(theta > 0.0 && theta < 1.0 && x > theta && x < 1.0)) {
    throw Error(ErrorCode::BadRange, "requires 0 < theta < x < 1");
  }
  if (n < 1) throw Error(ErrorCode::BadRange, "n must be >= 1");
  // Strict event: k > n x. A product that lands within rounding of an
  // integer is treated as that integer, so ties are excluded.
  const long double nx = static_cast<long double>(n) * static_cast<long double>(x);
  const long double nearest = std::round(nx);
  const long long floor_nx = std::fabs(nx - nearest) <= 1e-9L * static_cast<long double>(n)
                                 ? static_cast<long long>(nearest)
                                 : static_cast<long long>(std::floor(nx));
  const double log_tail = log_binomial_upper_tail(n, theta, floor_nx + 1);
  return {log_tail / static_cast<double>(n), -kl_bernoulli({x, theta}).to_double()};
}

// ---------------------------------------------------------------------------

namespace {

// E[R_T] of one strategy run against one sampled loss sequence from P_i.
double run_regret_trial(const SparseLossConfig& cfg, const Strategy& strategy, double eta,
                        long long i, Rng& rng, std::vector<int>& perm,
                        std::vector<double>& cumulative, std::vector<double>& weights) {
  const auto n = static_cast<std::size_t>(cfg.n_arms);
  const auto s = static_cast<std::size_t>(cfg.sparsity);
  const double favored = 0.5 - cfg.epsilon * static_cast<double>(cfg.n_arms) /
                                   static_cast<double>(cfg.sparsity);
  std::fill(cumulative.begin(), cumulative.end(), 0.0);
  double strategy_loss = 0.0;

  for (long long t = 0; t < cfg.horizon; ++t) {
    if (strategy.kind == StrategyKind::Uniform) {
      std::fill(weights.begin(), weights.end(), 1.0 / static_cast<double>(n));
    } else {
      const double lowest = *std::min_element(cumulative.begin(), cumulative.end());
      double total = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        weights[k] = std::exp(-eta * (cumulative[k] - lowest));
        total += weights[k];
      }
      for (double& w : weights) w /= total;
    }

    // Partial Fisher-Yates: the first s entries of perm are the picked set.
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t j = 0; j < s; ++j) {
      const std::size_t r = j + static_cast<std::size_t>(rng.below(n - j));
      std::swap(perm[j], perm[r]);
    }
    for (std::size_t j = 0; j < s; ++j) {
      const auto k = static_cast<std::size_t>(perm[j]);
      const double p = static_cast<long long>(k) == i ? favored : 0.5;
      if (rng.bernoulli(p)) {
        strategy_loss += weights[k];
        cumulative[k] += 1.0;
      }
    }
  }
  return strategy_loss - *std::min_element(cumulative.begin(), cumulative.end());
}

}  // namespace

RegretExperiment mc_regret_experiment(const SparseLossConfig& config, Strategy strategy,
                                      long long trials, std::uint64_t seed, unsigned threads) {
  if (trials < 1) throw Error(ErrorCode::BadTrials, "at least one trial is required");
  const double eta = strategy.eta > 0.0
                         ? strategy.eta
                         : std::sqrt(8.0 * std::log(static_cast<double>(config.n_arms)) /
                                     static_cast<double>(config.horizon));

  std::vector<double> per_trial(static_cast<std::size_t>(trials));
  auto work = [&](long long begin, long long end) {
    const auto n = static_cast<std::size_t>(config.n_arms);
    std::vector<int> perm(n);
    std::vector<double> cumulative(n);
    std::vector<double> weights(n);
    std::vector<double> by_env(n);
    for (long long trial = begin; trial < end; ++trial) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
      for (long long i = 0; i < config.n_arms; ++i) {
        by_env[static_cast<std::size_t>(i)] =
            run_regret_trial(config, strategy, eta, i, rng, perm, cumulative, weights);
      }
      per_trial[static_cast<std::size_t>(trial)] =
          pairwise_sum(by_env.data(), n) / static_cast<double>(n);
    }
  };

  unsigned workers = threads == 0 ? std::max(1U, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<long long>(workers, trials));
  if (workers <= 1) {
    work(0, trials);
  } else {
    std::vector<std::thread> pool;
    const long long chunk = (trials + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const long long begin = static_cast<long long>(w) * chunk;
      const long long end = std::min(trials, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& t : pool) t.join();
  }

  const double mean = pairwise_sum(per_trial.data(), per_trial.size()) / static_cast<double>(trials);
  std::vector<double> sq(per_trial.size());
  for (std::size_t k = 0; k < sq.size(); ++k) sq[k] = (per_trial[k] - mean) * (per_trial[k] - mean);
  const double variance =
      trials > 1 ? pairwise_sum(sq.data(), sq.size()) / static_cast<double>(trials - 1) : 0.0;

  const double n = static_cast<double>(config.n_arms);
  const double s = static_cast<double>(config.sparsity);
  return {mean,
          std::sqrt(variance / static_cast<double>(trials)),
          sparse_regret_bound(config.n_arms, config.sparsity, config.horizon).bound,
          s / (2.0 * n) - config.epsilon / n,
          trials};
}

}  // namespace fanolab
