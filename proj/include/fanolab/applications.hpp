#pragma once

#include <cstdint>
#include <vector>

#include "fanolab/divergences.hpp"

namespace fanolab {

// ---------------------------------------------------------------------------
// Gaussian posterior concentration

struct GaussianModel {
  long long d;
  long long n;
  double sigma;

  GaussianModel(long long d, long long n, double sigma);
};

struct PosteriorConstant {
  double c_d;
  double rho_star;
};

inline constexpr double kRhoUpperLimit = 1e4;
inline constexpr int kRhoGridPoints = 10000;

/// The objective (1/rho)^d + rho / (8 sqrt(2 ln rho)) for rho > 1.
double posterior_objective(long long d, double rho);

/// inf over rho in (1, 1e4] of posterior_objective, by a log-spaced grid scan
/// refined with golden-section search.
PosteriorConstant posterior_constant(long long d);

struct PosteriorMinimaxBound {
  double epsilon_n;  // (sigma / 8) sqrt(d / n)
  double bound;
  double rho_star;
};

PosteriorMinimaxBound posterior_minimax_bound(const GaussianModel& model);

/// Per-observation modulus inf{KL(P_theta', P_theta) : ||theta' - theta|| >= 2 eps}
/// for N(theta, sigma^2 I): 2 eps^2 / sigma^2.
ExtReal psi_gaussian(double epsilon, double sigma);

/// Same modulus for Ber(theta) with the absolute loss; +inf when no
/// parameter in [0,1] lies at distance >= 2 eps.
ExtReal psi_bernoulli(double epsilon, double theta);

/// 2^{-c} exp(-c n psi).
double posterior_dd_bound(ExtReal psi, long long n, double c);

// ---------------------------------------------------------------------------
// Sparse-loss prediction with expert advice

enum class RegretRegime { Null, SmallHorizon, LargeHorizon };

const char* regime_name(RegretRegime regime);

struct SparseRegretBound {
  double bound;
  double epsilon_used;
  RegretRegime regime;
};

/// min{ s T / (16 N), sqrt(T (s/N) ln N) / 32 } together with the epsilon the
/// construction uses on each side of the horizon threshold N ln N / (16 s).
SparseRegretBound sparse_regret_bound(long long n_arms, long long sparsity, long long horizon);

struct SparseLossConfig {
  long long n_arms;
  long long sparsity;
  long long horizon;
  double epsilon;

  SparseLossConfig(long long n_arms, long long sparsity, long long horizon, double epsilon);
};

inline constexpr std::uint64_t kSparseEnvBudget = 1'000'000;

/// C(N, s) * 2^s, saturating at UINT64_MAX.
std::uint64_t sparse_env_atom_count(long long n_arms, long long sparsity);

/// Exact finite-support law of one loss vector under P_1..P_N and Q.
///
/// Atom a = subset_index * 2^s + pattern: the subset of picked components
/// (in lexicographic order) and the bits drawn on it, bit j of `pattern`
/// being the loss of the j-th picked component.
class SparseEnv {
 public:
  SparseEnv(long long n_arms, long long sparsity, double epsilon);

  long long n_arms() const { return n_arms_; }
  long long sparsity() const { return sparsity_; }
  double epsilon() const { return epsilon_; }
  std::size_t atom_count() const { return subset_count_ << sparsity_; }
  std::size_t subset_count() const { return subset_count_; }

  /// Picked components of a subset, ascending.
  std::vector<int> subset(std::size_t subset_index) const;

  /// Loss vector of an atom as 0/1 entries.
  std::vector<int> loss_vector(std::size_t atom) const;

  const FiniteDist& base() const { return base_; }
  FiniteDist hypothesis(long long i) const;

  /// Mass that `dist` puts on atoms with loss 1 at component k.
  double marginal(const FiniteDist& dist, long long k) const;

  /// Map from atoms onto distinct loss vectors (what a player observes);
  /// returns the image of each atom and the number of distinct vectors.
  std::pair<std::vector<std::size_t>, std::size_t> loss_vector_image() const;

 private:
  long long n_arms_;
  long long sparsity_;
  double epsilon_;
  std::size_t subset_count_;
  std::vector<int> subsets_;  // flattened, sparsity_ entries per subset
  FiniteDist base_;
};

SparseEnv build_sparse_env(long long n_arms, long long sparsity, double epsilon);

/// KL(P_i, Q) for every i without materializing the distributions. Only atoms
/// whose subset contains i differ between P_i and Q; the pattern sum for each
/// position inside a subset is computed once and added per subset.
std::vector<double> sparse_env_kl(long long n_arms, long long sparsity, double epsilon);

struct KlQuadratic {
  double lhs;  // kl(p - eps, p)
  double rhs;  // eps^2 / (p (1 - p))
};

KlQuadratic kl_quadratic_check(double p, double epsilon);

// ---------------------------------------------------------------------------
// Large deviations

struct CramerRate {
  double empirical_rate;  // (1/n) ln P(mean of n Ber(theta) > x)
  double limit_rate;      // -kl(x, theta)
};

/// Exact binomial upper tail in log domain; the event is strict (k > n x).
CramerRate cramer_rate(double theta, double x, long long n);

/// ln P(Bin(n, theta) >= k_min).
double log_binomial_upper_tail(long long n, double theta, long long k_min);

// ---------------------------------------------------------------------------
// Monte Carlo regret

enum class StrategyKind { Uniform, Hedge };

struct Strategy {
  StrategyKind kind = StrategyKind::Uniform;
  double eta = 0.0;  // Hedge learning rate; <= 0 selects sqrt(8 ln N / T)

  static Strategy uniform() { return {StrategyKind::Uniform, 0.0}; }
  static Strategy hedge(double eta = 0.0) { return {StrategyKind::Hedge, eta}; }
};

struct RegretExperiment {
  double avg_mixture_regret;
  double standard_error;
  double theoretical_floor;
  double uniform_round_loss;  // s/(2N) - eps/N, the per-round expected loss of uniform play
  long long trials;
};

/// Runs the strategy against loss sequences drawn from every P_i, averaging
/// E[R_T] (expectation over the strategy's own randomization, computed from
/// its weights) over i and trials. Deterministic in `seed`; `threads` = 0 uses
/// the hardware concurrency and never changes the result.
RegretExperiment mc_regret_experiment(const SparseLossConfig& config, Strategy strategy,
                                      long long trials, std::uint64_t seed, unsigned threads = 0);

}  // namespace fanolab
