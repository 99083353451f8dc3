#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fanolab/divergences.hpp"
#include "fanolab/rng.hpp"

namespace fanolab::verify {

/// Outcome of one certified inequality. `max_violation` is the largest amount
/// by which the inequality failed over all cases (negative when it held with
/// slack everywhere); the check passes iff it is <= `tolerance`.
struct CheckReport {
  std::string check_name;
  std::string module;
  long long cases_run = 0;
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::uint64_t seed = 0;
  std::string note;
};

enum class Budget { Quick, Full };

/// Case counts behind a budget; exposed so callers can run at any scale.
struct SuiteBudget {
  long long random_cases;     // per randomized check
  int scalar_grid;            // n for the n x n grid over (0,1)^2
  int bernoulli_grid;         // n for the closed-form agreement grid
  long long challengers;      // random alternatives per compensation family
  std::uint64_t sparse_atom_cap;  // largest C(N,s) 2^s in the sparse sweep
  long long mc_trials;

  static SuiteBudget of(Budget budget);
};

inline constexpr double kIdentityTolerance = 1e-10;
inline constexpr double kClosedFormTolerance = 1e-12;

using CheckFn = std::function<std::vector<CheckReport>(std::uint64_t seed, const SuiteBudget&)>;

struct CheckGroup {
  std::string name;
  std::string module;
  CheckFn run;
};

/// Every check group, in report order.
const std::vector<CheckGroup>& registry();

/// Runs the whole registry. Deterministic in `seed` and independent of
/// `threads` (0 = hardware concurrency).
std::vector<CheckReport> run_suite(std::uint64_t seed, Budget budget, unsigned threads = 0);
std::vector<CheckReport> run_suite(std::uint64_t seed, const SuiteBudget& budget, unsigned threads = 0);

/// Runs a single registered group by name; throws if unknown.
std::vector<CheckReport> run_group(const std::string& name, std::uint64_t seed,
                                   const SuiteBudget& budget);

bool all_passed(const std::vector<CheckReport>& reports);

/// Point on the uniform simplex (exponential spacings); with probability 0.2
/// a random subset of atoms is zeroed, keeping at least one.
FiniteDist random_dist(std::size_t k, Rng& rng);

/// Maximum of `violation(p, q)` over the n x n grid {i/(n+1)}^2.
CheckReport check_grid(const std::string& name, const std::string& module, int n,
                       double tolerance, const std::function<double(double, double)>& violation);

/// Report rendering. Every format is a pure function of the reports.
std::string to_json_lines(const std::vector<CheckReport>& reports);
std::string to_csv(const std::vector<CheckReport>& reports);
std::string to_plain(const std::vector<CheckReport>& reports);

}  // namespace fanolab::verify
