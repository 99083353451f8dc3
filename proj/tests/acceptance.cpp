// Acceptance run: one PASS/FAIL line per criterion, exit 0 iff all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fanolab/applications.hpp"
#include "fanolab/birge.hpp"
#include "fanolab/divergences.hpp"
#include "fanolab/kl_bounds.hpp"
#include "fanolab/verify.hpp"

using namespace fanolab;

namespace {

constexpr std::uint64_t kSeed = 20240611;

// Runtime limits in seconds; 0 means unbounded.
constexpr double kLimitBirge = 1.0;
constexpr double kLimitPosterior = 1.0;
constexpr double kLimitGrid = 30.0;
constexpr double kLimitSparse = 60.0;
constexpr double kLimitCramer = 10.0;
constexpr double kLimitRegret = 120.0;

constexpr double kBirgeTableTol = 5e-4;
constexpr double kBirgeLimitTol = 1e-4;
constexpr double kMassartTol = 1e-12;
constexpr double kPosteriorLimitTol = 1e-3;
constexpr int kScalarGrid = 2000;
constexpr long long kOracleCases = 10000;
constexpr double kOracleTol = 1e-12;
constexpr std::uint64_t kSparseCap = 100000;
constexpr double kSparseTol = 1e-10;
constexpr double kCramerOrderTol = 1e-12;
constexpr long long kRegretTrials = 2000;
constexpr double kInverseTol = 1e-9;
constexpr double kCrossTol = 1e-12;

struct Outcome {
  bool ok;
  std::string detail;
};

bool groups_pass(const std::vector<verify::CheckReport>& reports, double max_tol, std::string& detail) {
  bool ok = !reports.empty();
  for (const auto& r : reports) {
    if (!r.passed || r.tolerance > max_tol) {
      ok = false;
      char buf[200];
      std::snprintf(buf, sizeof buf, " %s violation=%.3g tol=%.3g;", r.check_name.c_str(), r.max_violation,
                    r.tolerance);
      detail += buf;
    }
  }
  return ok;
}

Outcome check_birge_constants() {
  const bool ok = std::abs(birge_c(2) - 0.7587) <= kBirgeTableTol &&
                  std::abs(birge_c(3) - 0.7127) <= kBirgeTableTol &&
                  std::abs(birge_c(1000000) - 0.63987) <= kBirgeLimitTol &&
                  std::abs(birge_d(2) - 0.7428) <= kBirgeTableTol &&
                  std::abs(birge_d(3) - 0.7009) <= kBirgeTableTol &&
                  std::abs(massart_constant() - (2.0 * std::numbers::e - 1.0) / (2.0 * std::numbers::e)) <=
                      kMassartTol &&
                  std::abs(massart_constant() - 0.816060) <= 1e-6;
  char buf[160];
  std::snprintf(buf, sizeof buf, "c2=%.6f c3=%.6f c1e6=%.6f d2=%.6f d3=%.6f massart=%.6f", birge_c(2),
                birge_c(3), birge_c(1000000), birge_d(2), birge_d(3), massart_constant());
  return {ok, buf};
}

Outcome check_posterior_constants() {
  const double c1 = posterior_constant(1).c_d;
  const double c2 = posterior_constant(2).c_d;
  const double big = posterior_constant(1000000).c_d;
  bool ok = c1 <= 0.55 && c2 <= 0.37 && std::abs(big - std::sqrt(std::numbers::e) / 8.0) <= kPosteriorLimitTol;
  double prev = c1;
  for (long long d = 2; d <= 50; ++d) {
    const double c = posterior_constant(d).c_d;
    ok = ok && c < prev;
    prev = c;
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "c1=%.6f c2=%.6f c1e6=%.6f c50=%.6f", c1, c2, big, prev);
  return {ok, buf};
}

Outcome check_scalar_grids() {
  auto budget = verify::SuiteBudget::of(verify::Budget::Quick);
  budget.scalar_grid = kScalarGrid;
  std::string detail;
  const auto reports = verify::run_group("scalar_grid", kSeed, budget);
  const bool ok = groups_pass(reports, verify::kIdentityTolerance, detail);
  const long long cases = reports.empty() ? 0 : reports.front().cases_run;
  return {ok && cases >= static_cast<long long>(kScalarGrid) * kScalarGrid,
          std::to_string(reports.size()) + " bounds x " + std::to_string(cases) + " grid points" + detail};
}

Outcome check_dpi_oracle() {
  auto budget = verify::SuiteBudget::of(verify::Budget::Quick);
  budget.random_cases = kOracleCases;
  std::string detail;
  bool ok = true;
  std::size_t checks = 0;
  for (const char* g : {"data_processing", "joint_convexity", "reduction_chain"}) {
    const auto reports = verify::run_group(g, kSeed, budget);
    checks += reports.size();
    ok = groups_pass(reports, kOracleTol, detail) && ok;
  }
  return {ok, std::to_string(checks) + " checks x " + std::to_string(kOracleCases) + " cases" + detail};
}

Outcome check_sparse_chain() {
  auto budget = verify::SuiteBudget::of(verify::Budget::Quick);
  budget.sparse_atom_cap = kSparseCap;
  std::string detail;
  const auto reports = verify::run_group("sparse_chain", kSeed, budget);
  long long cases = 0;
  for (const auto& r : reports) cases += r.cases_run;
  const bool ok = groups_pass(reports, kSparseTol, detail);
  return {ok, std::to_string(cases) + " cases up to C(N,s)2^s=" + std::to_string(kSparseCap) + detail};
}

Outcome check_cramer() {
  constexpr double kPairs[][2] = {{0.5, 0.75}, {0.3, 0.5}, {0.1, 0.4}};
  bool ok = true;
  std::string detail;
  for (const auto& pr : kPairs) {
    const double theta = pr[0];
    const double x = pr[1];
    for (long long n = 1; n <= 10000; n += (n < 200 ? 1 : 37)) {
      const CramerRate r = cramer_rate(theta, x, n);
      ok = ok && r.empirical_rate <= r.limit_rate + kCramerOrderTol;
    }
    const CramerRate end = cramer_rate(theta, x, 10000);
    const double gap = std::abs(end.empirical_rate - end.limit_rate);
    ok = ok && end.empirical_rate <= end.limit_rate + kCramerOrderTol &&
         gap <= 2.0 * std::log(1e4) / 1e4 + 1e-3;
    char buf[96];
    std::snprintf(buf, sizeof buf, " (%.1f,%.2f) gap=%.2e;", theta, x, gap);
    detail += buf;
  }
  return {ok, detail};
}

Outcome check_regret() {
  constexpr long long kConfigs[][3] = {{8, 2, 512}, {16, 4, 1024}};
  bool ok = true;
  std::string detail;
  for (const auto& cfg : kConfigs) {
    const SparseRegretBound bound = sparse_regret_bound(cfg[0], cfg[1], cfg[2]);
    const SparseLossConfig config(cfg[0], cfg[1], cfg[2], bound.epsilon_used);
    for (const Strategy strategy : {Strategy::uniform(), Strategy::hedge()}) {
      const RegretExperiment e = mc_regret_experiment(config, strategy, kRegretTrials, kSeed);
      ok = ok && e.trials >= kRegretTrials &&
           e.avg_mixture_regret >= e.theoretical_floor - 3.0 * e.standard_error;
      char buf[128];
      std::snprintf(buf, sizeof buf, " N=%lld %s regret=%.3f floor=%.3f;", cfg[0],
                    strategy.kind == StrategyKind::Uniform ? "uniform" : "hedge", e.avg_mixture_regret,
                    e.theoretical_floor);
      detail += buf;
    }
  }
  return {ok, detail};
}

Outcome check_inverse_and_closed_forms() {
  double worst_inverse = 0.0;
  double worst_cross = 0.0;
  constexpr int kSide = 32;  // 32 x 32 > 10^3 points
  for (int i = 0; i < kSide; ++i) {
    const double q = std::pow(10.0, -6.0 + 6.0 * i / kSide) * (1.0 - 1e-9);
    for (int j = 0; j < kSide; ++j) {
      const double y = std::pow(10.0, -8.0 + 9.0 * j / (kSide - 1));
      const double p = kl_inverse(q, ExtReal::of(y));
      if (p < 1.0) {
        worst_inverse = std::max(worst_inverse, std::abs(kl_bernoulli({p, q}).to_double() - y));
      } else {
        worst_inverse = std::max(worst_inverse, kl_bernoulli({1.0, q}).to_double() - y);
      }
    }
  }
  for (int i = 1; i < 1000; ++i) {
    const double p = i / 1000.0;
    const double h = -p * std::log(p) - (1.0 - p) * std::log1p(-p);
    worst_cross = std::max(worst_cross, std::abs(binary_entropy(p) - h));
    const double kl_half = p * std::log(2.0 * p) + (1.0 - p) * std::log(2.0 * (1.0 - p));
    worst_cross = std::max(worst_cross, std::abs(kl_bernoulli({p, 0.5}).to_double() - kl_half));
    if (i != 500) {
      const double phi = std::log((1.0 - p) / p) / (1.0 - 2.0 * p);
      worst_cross = std::max(worst_cross, std::abs(pinsker_factor(p).to_double() - phi) / std::max(1.0, phi));
    }
  }
  worst_cross = std::max(worst_cross, std::abs(pinsker_factor(0.5).to_double() - 2.0));
  const bool ok = worst_inverse <= kInverseTol && worst_cross <= kCrossTol;
  char buf[120];
  std::snprintf(buf, sizeof buf, "inverse residual=%.2e closed-form residual=%.2e", worst_inverse, worst_cross);
  return {ok, buf};
}

Outcome check_determinism() {
  const auto a = verify::run_suite(kSeed, verify::Budget::Quick);
  const auto b = verify::run_suite(kSeed, verify::Budget::Quick);
  const bool ok = verify::to_json_lines(a) == verify::to_json_lines(b) && verify::to_csv(a) == verify::to_csv(b) &&
                  verify::to_plain(a) == verify::to_plain(b);
  return {ok, std::to_string(a.size()) + " records compared"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"birge_constants", kLimitBirge, check_birge_constants},
      {"posterior_constants", kLimitPosterior, check_posterior_constants},
      {"scalar_bound_grids", kLimitGrid, check_scalar_grids},
      {"dpi_convexity_reduction_oracle", 0.0, check_dpi_oracle},
      {"sparse_environment_chain", kLimitSparse, check_sparse_chain},
      {"cramer_rate", kLimitCramer, check_cramer},
      {"regret_monte_carlo", kLimitRegret, check_regret},
      {"kl_inverse_and_closed_forms", 0.0, check_inverse_and_closed_forms},
      {"verify_determinism", 0.0, check_determinism},
  };

  int failed = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome out{false, ""};
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit <= 0.0 || secs < c.limit;
    const bool ok = out.ok && in_time;
    if (!ok) ++failed;
    std::printf("%s %d %s (%.2fs%s) %s\n", ok ? "PASS" : "FAIL", index, c.name, secs,
                in_time ? "" : ", over time limit", out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
