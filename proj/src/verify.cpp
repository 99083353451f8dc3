#include "fanolab/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

#include "fanolab/applications.hpp"
#include "fanolab/birge.hpp"
#include "fanolab/fano.hpp"
#include "fanolab/kl_bounds.hpp"

namespace fanolab::verify {

namespace {

constexpr GeneratorKind kAllGenerators[] = {GeneratorKind::KL, GeneratorKind::CHI2,
                                            GeneratorKind::HELLINGER};

/// Running maximum of violations for one inequality.
class Tally {
 public:
  Tally(std::string name, std::string module, double tolerance, std::uint64_t seed)
      : name_(std::move(name)), module_(std::move(module)), tolerance_(tolerance), seed_(seed) {}

  void observe(double violation) {
    ++cases_;
    if (std::isnan(violation)) {
      nan_seen_ = true;
    } else {
      worst_ = std::max(worst_, violation);
    }
  }

  // a <= b in extended reals; +inf on the left only holds against +inf.
  // Finite gaps are measured relative to max(1, b).
  void observe_le(ExtReal a, ExtReal b) {
    if (a.is_infinite()) {
      observe(b.is_infinite() ? -std::numeric_limits<double>::infinity()
                              : std::numeric_limits<double>::infinity());
    } else if (b.is_infinite()) {
      observe(-std::numeric_limits<double>::infinity());
    } else {
      observe((a.to_double() - b.to_double()) / std::max(1.0, b.to_double()));
    }
  }

  void note(std::string text) { note_ = std::move(text); }

  CheckReport report() const {
    CheckReport r;
    r.check_name = name_;
    r.module = module_;
    r.cases_run = cases_;
    r.max_violation = cases_ == 0 ? 0.0 : worst_;
    if (nan_seen_) r.max_violation = std::numeric_limits<double>::infinity();
    r.tolerance = tolerance_;
    r.passed = cases_ > 0 && !nan_seen_ && r.max_violation <= tolerance_;
    r.seed = seed_;
    r.note = note_;
    return r;
  }

 private:
  std::string name_;
  std::string module_;
  double tolerance_;
  std::uint64_t seed_;
  long long cases_ = 0;
  double worst_ = -std::numeric_limits<double>::infinity();
  bool nan_seen_ = false;
  std::string note_;
};

Rng stream(std::uint64_t seed, std::string_view name) {
  return Rng(derive_seed(seed, fnv1a(name)));
}

std::string gen_suffix(GeneratorKind kind) { return std::string(".") + generator_name(kind); }

std::size_t random_size(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.below(hi - lo + 1));
}

std::vector<double> random_statistic(std::size_t k, Rng& rng) {
  std::vector<double> z(k);
  for (double& v : z) {
    const double u = rng.uniform();
    // Mix indicator-like and interior values.
    v = u < 0.3 ? 0.0 : (u < 0.6 ? 1.0 : rng.uniform());
  }
  return z;
}

// E[Z] for Z in [0,1], exactly 0 or 1 when Z is constant on the support.
double bernoulli_mean(const FiniteDist& dist, const std::vector<double>& z) {
  double mean = 0.0;
  double complement = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    mean += dist[i] * z[i];
    complement += dist[i] * (1.0 - z[i]);
  }
  if (complement == 0.0) return 1.0;
  if (mean == 0.0) return 0.0;
  return std::clamp(mean, 0.0, 1.0);
}

double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 16) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double grid_point(int i, int n) { return static_cast<double>(i) / static_cast<double>(n + 1); }

// ---------------------------------------------------------------------------
// divergences

std::vector<CheckReport> check_nonnegativity(std::uint64_t seed, const SuiteBudget& b) {
  Rng rng = stream(seed, "div.nonnegativity");
  Tally t("div.nonnegativity", "divergences", 0.0, seed);
  for (long long c = 0; c < b.random_cases; ++c) {
    const std::size_t k = random_size(rng, 1, 8);
    const FiniteDist p = random_dist(k, rng);
    const FiniteDist q = random_dist(k, rng);
    for (GeneratorKind g : kAllGenerators) {
      const ExtReal d = divergence_finite(g, p, q);
      t.observe(d.is_infinite() ? -1.0 : -d.to_double());
    }
  }
  return {t.report()};
}

std::vector<CheckReport> check_data_processing(std::uint64_t seed, const SuiteBudget& b) {
  std::vector<CheckReport> out;
  for (GeneratorKind g : kAllGenerators) {
    const std::string name = "div.data_processing" + gen_suffix(g);
    Rng rng = stream(seed, name);
    Tally t(name, "divergences", kClosedFormTolerance, seed);
    const ConvexGenerator f = ConvexGenerator::of(g);
    for (long long c = 0; c < b.random_cases; ++c) {
      const std::size_t k = random_size(rng, 1, 8);
      const std::size_t m = random_size(rng, 1, 4);
      const FiniteDist p = random_dist(k, rng);
      const FiniteDist q = random_dist(k, rng);
      std::vector<std::size_t> image(k);
      for (auto& v : image) v = static_cast<std::size_t>(rng.below(m));
      t.observe_le(divergence_finite(f, p.pushforward(image, m), q.pushforward(image, m)),
                   divergence_finite(f, p, q));
    }
    out.push_back(t.report());
  }
  return out;
}

std::vector<CheckReport> check_statistic_data_processing(std::uint64_t seed, const SuiteBudget& b) {
  std::vector<CheckReport> out;
  for (GeneratorKind g : kAllGenerators) {
    const std::string name = "div.statistic_data_processing" + gen_suffix(g);
    Rng rng = stream(seed, name);
    Tally t(name, "divergences", kClosedFormTolerance, seed);
    for (long long c = 0; c < b.random_cases; ++c) {
      const std::size_t k = random_size(rng, 1, 8);
      const FiniteDist p = random_dist(k, rng);
      const FiniteDist q = random_dist(k, rng);
      const std::vector<double> z = random_statistic(k, rng);
      const double ep = bernoulli_mean(p, z);
      const double eq = bernoulli_mean(q, z);
      t.observe_le(bernoulli_divergence(g, {ep, eq}), divergence_finite(g, p, q));
    }
    out.push_back(t.report());
  }
  return out;
}

std::vector<CheckReport> check_joint_convexity(std::uint64_t seed, const SuiteBudget& b) {
  std::vector<CheckReport> out;
  for (GeneratorKind g : kAllGenerators) {
    const std::string name = "div.joint_convexity" + gen_suffix(g);
    Rng rng = stream(seed, name);
    Tally t(name, "divergences", kClosedFormTolerance, seed);
    for (long long c = 0; c < b.random_cases; ++c) {
      const std::size_t k = random_size(rng, 1, 8);
      const FiniteDist p1 = random_dist(k, rng);
      const FiniteDist q1 = random_dist(k, rng);
      const FiniteDist p2 = random_dist(k, rng);
      const FiniteDist q2 = random_dist(k, rng);
      const double lambda = 1e-3 + (1.0 - 2e-3) * rng.uniform();
      const ExtReal lhs = divergence_finite(g, FiniteDist::mix(p1, p2, lambda),
                                            FiniteDist::mix(q1, q2, lambda));
      const ExtReal rhs = divergence_finite(g, p1, q1).scaled(1.0 - lambda) +
                          divergence_finite(g, p2, q2).scaled(lambda);
      t.observe_le(lhs, rhs);
    }
    out.push_back(t.report());
  }
  return out;
}

std::vector<CheckReport> check_bernoulli_agreement(std::uint64_t seed, const SuiteBudget& b) {
  std::vector<CheckReport> out;
  const int n = b.bernoulli_grid;
  for (GeneratorKind g : kAllGenerators) {
    Tally t("div.bernoulli_agreement" + gen_suffix(g), "divergences", kClosedFormTolerance, seed);
    const ConvexGenerator f = ConvexGenerator::of(g);
    // Grid over [0,1]^2 including the boundary, where the conventions matter.
    for (int i = 0; i <= n; ++i) {
      const double p = static_cast<double>(i) / n;
      const FiniteDist pd({p, 1.0 - p});
      for (int j = 0; j <= n; ++j) {
        const double q = static_cast<double>(j) / n;
        const ExtReal closed = bernoulli_divergence(g, {p, q});
        const ExtReal general = divergence_finite(f, pd, FiniteDist({q, 1.0 - q}));
        if (closed.is_infinite() || general.is_infinite()) {
          t.observe(closed == general ? 0.0 : std::numeric_limits<double>::infinity());
        } else {
          t.observe(std::abs(closed.to_double() - general.to_double()));
        }
      }
    }
    out.push_back(t.report());
  }
  return out;
}

// Independent route: sum q_i f(p_i / q_i) + singular mass * M_f, evaluated
// from the generator itself rather than the per-atom closed forms.
std::vector<CheckReport> check_generator_route(std::uint64_t seed, const SuiteBudget& b) {
  Rng rng = stream(seed, "div.generator_route");
  Tally t("div.generator_route", "divergences", kIdentityTolerance, seed);
  for (long long c = 0; c < b.random_cases; ++c) {
    const std::size_t k = random_size(rng, 1, 8);
    const FiniteDist p = random_dist(k, rng);
    const FiniteDist q = random_dist(k, rng);
    for (GeneratorKind g : kAllGenerators) {
      const ConvexGenerator f = ConvexGenerator::of(g);
      double ac = 0.0;
      double singular = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        if (q[i] > 0.0) {
          ac += q[i] * f(p[i] / q[i]);
        } else {
          singular += p[i];
        }
      }
      const ExtReal naive = ExtReal::clamped(ac) + ExtReal::of(singular) * f.maximal_slope;
      const ExtReal fast = divergence_finite(f, p, q);
      if (naive.is_infinite() || fast.is_infinite()) {
        t.observe(naive == fast ? 0.0 : std::numeric_limits<double>::infinity());
      } else {
        t.observe(std::abs(naive.to_double() - fast.to_double()));
      }
    }
  }
  return {t.report()};
}

std::vector<CheckReport> check_kl_upper(std::uint64_t seed, const SuiteBudget& b) {
  Tally t("div.kl_le_p_log_inv_q", "divergences", kClosedFormTolerance, seed);
  const int n = b.scalar_grid;
  for (int i = 1; i <= n; ++i) {
    const double p = grid_point(i, n);
    for (int j = 1; j <= i; ++j) {
      const double q = grid_point(j, n);
      t.observe(kl_bernoulli({p, q}).to_double() - p * -std::log(q));
    }
  }
  return {t.report()};
}

// ---------------------------------------------------------------------------
// kl_bounds: one pass over the grid certifies every scalar inequality.

std::vector<CheckReport> check_scalar_grid(std::uint64_t seed, const SuiteBudget& b) {
  const double tol = kIdentityTolerance;
  Tally classic("kl.classic", "kl_bounds", tol, seed);
  Tally refined("kl.refined", "kl_bounds", tol, seed);
  Tally affine("kl.affine", "kl_bounds", tol, seed);
  Tally pinsker_fano("kl.pinsker_fano", "kl_bounds", tol, seed);
  Tally pinsker_plain("kl.pinsker_fano_plain", "kl_bounds", tol, seed);
  Tally chi2("kl.chi2_solved", "kl_bounds", tol, seed);
  Tally lecam("kl.lecam", "kl_bounds", tol, seed);
  Tally lecam_sharp("kl.lecam_sharp", "kl_bounds", tol, seed);
  Tally refined_pinsker("kl.refined_pinsker", "kl_bounds", kClosedFormTolerance, seed);
  Tally bh("kl.bretagnolle_huber", "kl_bounds", tol, seed);
  Tally dominance("kl.dominance", "kl_bounds", kClosedFormTolerance, seed);

  const int n = b.scalar_grid;
  for (int j = 1; j <= n; ++j) {
    const double q = grid_point(j, n);
    const double phi = pinsker_factor(q).to_double();
    for (int i = 1; i <= n; ++i) {
      const double p = grid_point(i, n);
      const ExtReal kl = kl_bernoulli({p, q});
      const ExtReal chi = chi2_bernoulli({p, q});
      const double h2 = hellinger2_bernoulli({p, q});

      const double b_classic = lb_classic(kl, q).bound_on_p;
      const double b_refined = lb_refined(kl, q).bound_on_p;
      classic.observe(p - b_classic);
      refined.observe(p - b_refined);
      affine.observe(p - lb_affine(kl, q).bound_on_p);
      pinsker_fano.observe(p - lb_pinsker_fano(kl, q).bound_on_p);
      pinsker_plain.observe(p - lb_pinsker_fano(kl, q, PinskerDenominator::Plain).bound_on_p);
      chi2.observe(p - chi2_solved(chi, q).bound_on_p);
      const double simple = lecam_hellinger(h2, q, false).bound_on_p;
      const double sharp = lecam_hellinger(h2, q, true).bound_on_p;
      lecam.observe(p - simple);
      lecam_sharp.observe(p - sharp);
      refined_pinsker.observe(phi * (p - q) * (p - q) - kl.to_double());
      bh.observe(bretagnolle_huber_q_lower(p, kl) - q);
      dominance.observe(std::max(b_refined - b_classic, sharp - simple));
    }
  }
  return {classic.report(), refined.report(),        affine.report(), pinsker_fano.report(),
          pinsker_plain.report(), chi2.report(),     lecam.report(),  lecam_sharp.report(),
          refined_pinsker.report(), bh.report(),     dominance.report()};
}

std::vector<CheckReport> check_pinsker_factor(std::uint64_t seed, const SuiteBudget& b) {
  Tally lower("kl.pinsker_factor_lower", "kl_bounds", kClosedFormTolerance, seed);
  Tally witness("kl.pinsker_factor_witness", "kl_bounds", kClosedFormTolerance, seed);
  Tally affine_domination("kl.affine_domination", "kl_bounds", kClosedFormTolerance, seed);
  const int n = b.scalar_grid;
  for (int j = 1; j <= n; ++j) {
    const double q = grid_point(j, n);
    const double phi = pinsker_factor(q).to_double();
    lower.observe(std::max(2.0, -std::log(q)) - phi);
    if (std::abs(1.0 - 2.0 * q) > 1e-3) {
      const double t = 1.0 - 2.0 * q;
      witness.observe(std::abs(kl_bernoulli({1.0 - q, q}).to_double() / (t * t) - phi));
    }
    affine_domination.observe(std::log1p(1.0 - q) / -std::log(q) - (0.21 + 0.79 * q));
  }
  lower.observe(2.0 - pinsker_factor(1.0).to_double());
  return {lower.report(), witness.report(), affine_domination.report()};
}

std::vector<CheckReport> check_kl_inverse(std::uint64_t seed, const SuiteBudget& b) {
  Tally round_trip("kl.inverse_round_trip", "kl_bounds", 1e-9, seed);
  Tally monotone("kl.inverse_monotone", "kl_bounds", 0.0, seed);
  const int side = std::max(10, static_cast<int>(std::sqrt(static_cast<double>(b.random_cases))));
  for (int j = 1; j <= side; ++j) {
    const double q = static_cast<double>(j) / (side + 1);
    double previous = 0.0;
    for (int i = 0; i < side; ++i) {
      // log grid from 1e-8 to 10
      const double y = std::pow(10.0, -8.0 + 9.0 * i / (side - 1));
      const double p = kl_inverse(q, ExtReal::of(y));
      const double expected = std::min(y, -std::log(q));
      round_trip.observe(std::abs(kl_bernoulli({p, q}).to_double() - expected));
      monotone.observe(previous - p);
      previous = p;
    }
  }
  return {round_trip.report(), monotone.report()};
}

std::vector<CheckReport> check_binary_entropy(std::uint64_t seed, const SuiteBudget& b) {
  Tally t("kl.binary_entropy", "kl_bounds", kClosedFormTolerance, seed);
  const int n = b.scalar_grid;
  for (int i = 0; i <= n + 1; ++i) {
    const double p = grid_point(i, n);
    const double h = binary_entropy(p);
    // Symmetry, maximum at 1/2, and the identity h(p) = ln 2 - kl(p, 1/2).
    t.observe(std::abs(h - binary_entropy(1.0 - p)));
    t.observe(h - std::numbers::ln2);
    t.observe(std::abs(h - (std::numbers::ln2 - kl_bernoulli({p, 0.5}).to_double())));
  }
  return {t.report()};
}

std::vector<CheckReport> check_kl_quadratic(std::uint64_t seed, const SuiteBudget& b) {
  Tally t("kl.quadratic_upper", "kl_bounds", kClosedFormTolerance, seed);
  const int n = std::max(20, b.scalar_grid / 4);
  for (int i = 1; i <= n; ++i) {
    const double p = grid_point(i, n);
    for (int j = 1; j <= n; ++j) {
      const double eps = p * grid_point(j, n);
      const KlQuadratic r = kl_quadratic_check(p, eps);
      t.observe(r.lhs - r.rhs);
    }
  }
  return {t.report()};
}

// ---------------------------------------------------------------------------
// fano

struct RandomFamily {
  std::vector<FiniteDist> p;
  std::vector<FiniteDist> q;
  std::vector<std::vector<double>> statistic;  // Z_i indexed by atom
  FiniteDist alpha;
};

RandomFamily random_family(Rng& rng, bool events) {
  const std::size_t members = random_size(rng, 1, 6);
  const std::size_t k = random_size(rng, 2, 8);
  RandomFamily fam{{}, {}, {}, random_dist(members, rng)};
  for (std::size_t i = 0; i < members; ++i) {
    fam.p.push_back(random_dist(k, rng));
    fam.q.push_back(random_dist(k, rng));
    std::vector<double> z = events ? std::vector<double>(k) : random_statistic(k, rng);
    if (events) {
      for (double& v : z) v = rng.bernoulli(0.5) ? 1.0 : 0.0;
    }
    fam.statistic.push_back(std::move(z));
  }
  return fam;
}

std::vector<CheckReport> check_reduction_chain(std::uint64_t seed, const SuiteBudget& b) {
  std::vector<CheckReport> out;
  for (bool events : {true, false}) {
    for (GeneratorKind g : kAllGenerators) {
      const std::string name =
          std::string(events ? "fano.reduction_events" : "fano.reduction_statistics") + gen_suffix(g);
      Rng rng = stream(seed, name);
      Tally t(name, "fano", kClosedFormTolerance, seed);
      for (long long c = 0; c < b.random_cases; ++c) {
        const RandomFamily fam = random_family(rng, events);
        std::vector<FamilyEntry> entries;
        ExtReal avg_bernoulli;
        for (std::size_t i = 0; i < fam.p.size(); ++i) {
          const double pe = bernoulli_mean(fam.p[i], fam.statistic[i]);
          const double qe = bernoulli_mean(fam.q[i], fam.statistic[i]);
          entries.push_back({fam.alpha[i], pe, qe, divergence_finite(g, fam.p[i], fam.q[i])});
          avg_bernoulli += bernoulli_divergence(g, {pe, qe}).scaled(fam.alpha[i]);
        }
        const ReducedPair r = reduce(entries);
        t.observe_le(bernoulli_divergence(g, {r.p_bar, r.q_bar}), avg_bernoulli);
        t.observe_le(avg_bernoulli, r.d_bar);
      }
      out.push_back(t.report());
    }
  }
  return out;
}

std::vector<CheckReport> check_report_soundness(std::uint64_t seed, const SuiteBudget& b) {
  Rng rng = stream(seed, "fano.report_soundness");
  Tally t("fano.report_soundness", "fano", kIdentityTolerance, seed);
  for (long long c = 0; c < b.random_cases; ++c) {
    const RandomFamily fam = random_family(rng, rng.bernoulli(0.5));
    std::vector<FamilyEntry> kl_entries;
    std::vector<FamilyEntry> chi_entries;
    std::vector<FamilyEntry> hel_entries;
    for (std::size_t i = 0; i < fam.p.size(); ++i) {
      const double pe = bernoulli_mean(fam.p[i], fam.statistic[i]);
      const double qe = bernoulli_mean(fam.q[i], fam.statistic[i]);
      kl_entries.push_back({fam.alpha[i], pe, qe, divergence_finite(GeneratorKind::KL, fam.p[i], fam.q[i])});
      chi_entries.push_back({fam.alpha[i], pe, qe, divergence_finite(GeneratorKind::CHI2, fam.p[i], fam.q[i])});
      hel_entries.push_back(
          {fam.alpha[i], pe, qe, divergence_finite(GeneratorKind::HELLINGER, fam.p[i], fam.q[i])});
    }
    const ReducedPair rk = reduce(kl_entries);
    const ReducedPair rc = reduce(chi_entries);
    ReducedPair rh = reduce(hel_entries);
    rh.d_bar = std::min(rh.d_bar, ExtReal::of(2.0));
    const double truth = rk.p_bar;
    t.observe(truth - fano_chi2(rc).value);
    t.observe(truth - fano_hellinger(rh).value);
    if (rk.q_bar > 0.0 && rk.q_bar < 1.0) {
      for (KlVariant v : {KlVariant::Classic, KlVariant::Refined, KlVariant::Affine}) {
        t.observe(truth - fano_kl(rk, v).value);
      }
      t.observe(truth - fano_kl_sqrt(rk, true).value);
      t.observe(truth - fano_kl_sqrt(rk, false).value);
      t.observe(truth - fano_kl_inverse(rk).value);
    }
  }
  return {t.report()};
}

std::vector<CheckReport> check_compensation(std::uint64_t seed, const SuiteBudget& b) {
  Rng rng = stream(seed, "fano.compensation");
  Tally comp("fano.kl_compensation", "fano", kClosedFormTolerance, seed);
  Tally cap("fano.constant_alternative_cap", "fano", kClosedFormTolerance, seed);
  Tally cap_route("fano.constant_alternative_cap_route", "fano", kClosedFormTolerance, seed);
  const long long families = std::max<long long>(1, b.random_cases / 100);
  for (long long c = 0; c < families; ++c) {
    const std::size_t members = random_size(rng, 1, 6);
    const std::size_t k = random_size(rng, 2, 8);
    std::vector<FiniteDist> dists;
    for (std::size_t i = 0; i < members; ++i) dists.push_back(random_dist(k, rng));
    std::vector<double> a(members);
    for (double& v : a) v = 0.05 + rng.uniform();
    const FiniteDist alpha = FiniteDist::from_masses(a);

    for (GeneratorKind g : kAllGenerators) {
      const ConvexGenerator f = ConvexGenerator::of(g);
      const ConstantAlternative best = best_constant_alternative(f, dists, alpha);
      cap.observe_le(best.avg_div, best.cap);
      ExtReal brute;
      for (std::size_t j = 0; j < members; ++j) {
        brute = std::max(brute, divergence_finite(f, FiniteDist::point_mass(members, j), alpha));
      }
      cap_route.observe(std::abs(brute.to_double() - best.cap.to_double()));
      if (g != GeneratorKind::KL) continue;
      for (long long r = 0; r < b.challengers; ++r) {
        FiniteDist challenger = rng.bernoulli(0.1) ? FiniteDist::mix(best.mixture, random_dist(k, rng),
                                                                     1e-3 * rng.uniform())
                                                   : random_dist(k, rng);
        ExtReal avg;
        for (std::size_t i = 0; i < members; ++i) {
          avg += divergence_finite(f, dists[i], challenger).scaled(alpha[i]);
        }
        comp.observe_le(best.avg_div, avg);
      }
    }
  }
  return {comp.report(), cap.report(), cap_route.report()};
}

std::vector<CheckReport> check_partition_ordering(std::uint64_t seed, const SuiteBudget& b) {
  Rng rng = stream(seed, "fano.partition_ordering");
  Tally t("fano.partition_ordering", "fano", 0.0, seed);
  for (long long c = 0; c < b.random_cases; ++c) {
    const long long n = 2 + static_cast<long long>(rng.below(1000));
    const ExtReal k_bar = ExtReal::of(3.0 * rng.uniform());
    const PartitionBounds pb = partition_bounds(n, k_bar);
    t.observe(pb.refined - pb.classic);
  }
  return {t.report()};
}

std::vector<CheckReport> check_haroutunian(std::uint64_t seed, const SuiteBudget& b) {
  Rng rng = stream(seed, "fano.haroutunian");
  Tally har("fano.haroutunian", "fano", kIdentityTolerance, seed);
  Tally bh("fano.bretagnolle_huber_general", "fano", kIdentityTolerance, seed);
  for (long long c = 0; c < b.random_cases; ++c) {
    const std::size_t k = random_size(rng, 1, 8);
    const FiniteDist p = random_dist(k, rng);
    const FiniteDist q = random_dist(k, rng);
    const std::vector<double> z = random_statistic(k, rng);
    const ExtReal kl = divergence_finite(GeneratorKind::KL, p, q);
    const double ep = bernoulli_mean(p, z);
    const double eq = bernoulli_mean(q, z);
    har.observe(haroutunian_q_lower(ep, kl) - eq);
    bh.observe(bretagnolle_huber_q_lower(ep, kl) - eq);
  }
  return {har.report(), bh.report()};
}

std::vector<CheckReport> check_bayes_risk(std::uint64_t seed, const SuiteBudget& b) {
  Rng rng = stream(seed, "fano.bayes_risk");
  Tally sound("fano.bayes_risk_soundness", "fano", kIdentityTolerance, seed);
  Tally renyi("fano.renyi_special_case", "fano", kClosedFormTolerance, seed);
  for (long long c = 0; c < b.random_cases; ++c) {
    const std::size_t n_theta = random_size(rng, 2, 5);
    const std::size_t n_actions = random_size(rng, 1, 5);
    const std::size_t k = random_size(rng, 2, 6);
    const FiniteDist prior = random_dist(n_theta, rng);
    std::vector<FiniteDist> models;
    for (std::size_t t = 0; t < n_theta; ++t) models.push_back(random_dist(k, rng));
    std::vector<std::vector<double>> loss(n_theta, std::vector<double>(n_actions));
    for (auto& row : loss) {
      for (double& l : row) l = rng.bernoulli(0.3) ? static_cast<double>(rng.below(2)) : rng.uniform();
    }

    // Exact Bayes risk: pick the best action separately for each observation.
    double bayes = 0.0;
    for (std::size_t x = 0; x < k; ++x) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < n_actions; ++a) {
        double risk = 0.0;
        for (std::size_t t = 0; t < n_theta; ++t) risk += prior[t] * models[t][x] * loss[t][a];
        best = std::min(best, risk);
      }
      bayes += best;
    }

    std::vector<double> mix(k, 0.0);
    for (std::size_t t = 0; t < n_theta; ++t) {
      for (std::size_t x = 0; x < k; ++x) mix[x] += prior[t] * models[t][x];
    }
    const FiniteDist mixture = FiniteDist::from_masses(mix);
    std::vector<ExtReal> kls;
    for (const FiniteDist& m : models) kls.push_back(divergence_finite(GeneratorKind::KL, m, mixture));
    try {
      const BayesRiskBound bound = bayes_risk_lower(prior, loss, kls);
      sound.observe(bound.value - bayes);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateLoss) throw;
    }

    // 0-1 loss over Theta = A: the denominator is -H_inf(prior).
    std::vector<std::vector<double>> zero_one(n_theta, std::vector<double>(n_theta, 1.0));
    for (std::size_t t = 0; t < n_theta; ++t) zero_one[t][t] = 0.0;
    const BayesRiskBound zb = bayes_risk_lower(prior, zero_one, kls);
    if (!zb.zero_loss) renyi.observe(std::abs(std::log1p(-zb.min_average_loss) + renyi_infty(prior)));
  }
  return {sound.report(), renyi.report()};
}

// ---------------------------------------------------------------------------
// birge

std::vector<CheckReport> check_birge_constants(std::uint64_t seed, const SuiteBudget& b) {
  Tally residual("birge.c_residual", "birge", 1e-9, seed);
  Tally maximal("birge.d_maximality", "birge", 1e-9, seed);
  Tally order("birge.ordering", "birge", 0.0, seed);
  const long long upper = b.random_cases >= 10000 ? 100 : 40;
  double prev_c = 1.0;
  double prev_d = 1.0;
  bool sign_pattern_holds = true;
  for (long long n = 2; n <= upper; ++n) {
    const double c = birge_c(n);
    const double d = birge_d(n);
    residual.observe(std::abs(birge_g(c) - std::log1p(-1.0 / static_cast<double>(n))));
    maximal.observe(birge_r(n, d));
    maximal.observe(birge_r(n, d + 1e-6) > 0.0 ? -1.0 : 1.0);
    order.observe(c - prev_c);
    order.observe(d - prev_d);
    order.observe(d - c);
    order.observe(c - massart_constant());
    order.observe(0.5 - c);
    prev_c = c;
    prev_d = d;
    // Observed sign of r_N: <= 0 on [1/N, d_N], > 0 on (d_N, 1).
    for (int s = 1; s < 50; ++s) {
      const double lo = 1.0 / static_cast<double>(n);
      const double b_in = lo + (d - lo) * s / 50.0;
      const double b_out = d + (1.0 - d) * s / 50.0;
      if (birge_r(n, b_in) > 0.0 || birge_r(n, b_out) <= 0.0) sign_pattern_holds = false;
    }
  }
  maximal.note(sign_pattern_holds ? "r_N <= 0 on [1/N, d_N] and r_N > 0 on (d_N, 1)"
                                  : "r_N sign pattern differs from <= 0 before d_N, > 0 after");
  return {residual.report(), maximal.report(), order.report()};
}

std::vector<CheckReport> check_birge_soundness(std::uint64_t seed, const SuiteBudget& b) {
  Rng rng = stream(seed, "birge.bound_soundness");
  Tally t("birge.bound_soundness", "birge", kIdentityTolerance, seed);
  const long long cases = std::max<long long>(1, b.random_cases / 10);
  std::vector<double> c_cache(9, 0.0);
  std::vector<double> d_cache(9, 0.0);
  for (long long n = 2; n <= 8; ++n) {
    c_cache[n] = birge_c(n);
    d_cache[n] = birge_d(n);
  }
  for (long long c = 0; c < cases; ++c) {
    const long long n = 2 + static_cast<long long>(rng.below(7));
    const std::size_t k = random_size(rng, static_cast<std::size_t>(n), 10);
    // Random partition of the atoms into n non-empty cells.
    std::vector<std::size_t> cell(k);
    for (std::size_t a = 0; a < k; ++a) {
      cell[a] = a < static_cast<std::size_t>(n) ? a : static_cast<std::size_t>(rng.below(n));
    }
    std::vector<FiniteDist> dists;
    // Concentrate P_i on its own cell so the bound is exercised near tightness.
    for (long long i = 0; i < n; ++i) {
      std::vector<double> w(k);
      const double boost = 20.0 * rng.uniform();
      for (std::size_t a = 0; a < k; ++a) {
        w[a] = -std::log(rng.uniform_open_zero()) * (cell[a] == static_cast<std::size_t>(i) ? boost : 1.0);
      }
      dists.push_back(FiniteDist::from_masses(w));
    }
    double min_p = 1.0;
    for (long long i = 0; i < n; ++i) {
      double mass = 0.0;
      for (std::size_t a = 0; a < k; ++a) {
        if (cell[a] == static_cast<std::size_t>(i)) mass += dists[i][a];
      }
      min_p = std::min(min_p, mass);
    }
    ExtReal k_bar;
    for (long long i = 1; i < n; ++i) {
      k_bar += divergence_finite(GeneratorKind::KL, dists[i], dists[0]);
    }
    k_bar = k_bar.scaled(1.0 / static_cast<double>(n - 1));
    if (k_bar.is_infinite()) continue;
    const double ratio = k_bar.to_double() / std::log(static_cast<double>(n));
    t.observe(min_p - std::max(c_cache[n], ratio));
    t.observe(min_p - std::max(d_cache[n], ratio));
    t.observe(min_p - std::max(massart_constant(), ratio));
  }
  return {t.report()};
}

// ---------------------------------------------------------------------------
// applications

std::vector<CheckReport> check_sparse_chain(std::uint64_t seed, const SuiteBudget& b) {
  Tally chain3("apps.sparse_kl_chain", "applications", kIdentityTolerance, seed);
  Tally chain4("apps.sparse_kl_quadratic", "applications", kIdentityTolerance, seed);
  Tally symmetry("apps.sparse_kl_symmetry", "applications", kIdentityTolerance, seed);
  Tally fano("apps.sparse_fano_chain", "applications", kIdentityTolerance, seed);
  constexpr double kFractions[] = {0.1, 0.5, 0.9};
  constexpr double kHorizons[] = {1.0, 100.0, 10000.0};
  // Families up to this size also go through reduce() entry by entry.
  constexpr long long kExplicitFamily = 256;
  long long pairs = 0;
  std::vector<FamilyEntry> entries;
  for (long long s = 1; s <= 62; ++s) {
    if (sparse_env_atom_count(std::max<long long>(2, s), s) > b.sparse_atom_cap) break;
    for (long long n = std::max<long long>(2, s); sparse_env_atom_count(n, s) <= b.sparse_atom_cap; ++n) {
      ++pairs;
      const double nd = static_cast<double>(n);
      const double sd = static_cast<double>(s);
      for (double frac : kFractions) {
        const double eps = frac * sd / (2.0 * nd);
        const std::vector<double> kl = sparse_env_kl(n, s, eps);
        const double per_bit = kl_bernoulli({0.5 - eps * nd / sd, 0.5}).to_double();
        const double chain_rhs = sd / nd * per_bit;
        double worst_chain = -std::numeric_limits<double>::infinity();
        double worst_spread = 0.0;
        for (double v : kl) {
          worst_chain = std::max(worst_chain, v - chain_rhs);
          worst_spread = std::max(worst_spread, std::abs(v - kl.front()));
        }
        chain3.observe(worst_chain);
        symmetry.observe(worst_spread);
        chain4.observe(per_bit - 4.0 * nd * nd * eps * eps / (sd * sd));

        // Fano inputs: q_bar = 1/N (the F_i(T) sum to one) and the averaged
        // KL per round.
        const double total = pairwise_sum(kl);
        const ReducedPair per_round{0.0, 1.0 / nd, ExtReal::of(total / nd)};
        if (n <= kExplicitFamily) {
          entries.assign(kl.size(), FamilyEntry{1.0 / nd, 0.0, 1.0 / nd, ExtReal::zero()});
          for (std::size_t i = 0; i < kl.size(); ++i) entries[i].div = ExtReal::of(kl[i]);
          const ReducedPair r = reduce(entries);
          fano.observe(std::abs(r.q_bar - per_round.q_bar));
          fano.observe(std::abs(r.d_bar.to_double() - per_round.d_bar.to_double()));
        }
        for (double horizon : kHorizons) {
          const ReducedPair r{0.0, per_round.q_bar, per_round.d_bar.scaled(horizon)};
          const double assembled = fano_kl_sqrt(r, false).value;
          const double explicit_form = 1.0 / nd + std::sqrt(horizon * total / (nd * std::log(nd)));
          fano.observe(std::abs(assembled - std::min(1.0, explicit_form)));
          const double closed = 1.0 / nd + std::sqrt(4.0 * nd * horizon * eps * eps / (sd * std::log(nd)));
          fano.observe(std::min(1.0, explicit_form) - std::min(1.0, closed));
        }
      }
    }
  }
  symmetry.note(std::to_string(pairs) + " (N,s) pairs with C(N,s) 2^s <= " +
                std::to_string(b.sparse_atom_cap));
  return {chain3.report(), chain4.report(), symmetry.report(), fano.report()};
}

std::vector<CheckReport> check_sparse_env(std::uint64_t seed, const SuiteBudget&) {
  Tally dist("apps.sparse_env_divergence", "applications", kIdentityTolerance, seed);
  Tally marg("apps.sparse_env_marginals", "applications", kClosedFormTolerance, seed);
  Tally dpi("apps.sparse_env_loss_vector_dpi", "applications", kClosedFormTolerance, seed);
  constexpr long long kShapes[][2] = {{2, 1}, {3, 2}, {4, 2}, {5, 3}, {6, 2}, {6, 6}};
  for (const auto& shape : kShapes) {
    const long long n = shape[0];
    const long long s = shape[1];
    const double eps = 0.5 * static_cast<double>(s) / (2.0 * static_cast<double>(n));
    const SparseEnv env = build_sparse_env(n, s, eps);
    const std::vector<double> streamed = sparse_env_kl(n, s, eps);
    const auto [image, distinct] = env.loss_vector_image();
    const FiniteDist q_obs = env.base().pushforward(image, distinct);
    for (long long i = 0; i < n; ++i) {
      const FiniteDist p = env.hypothesis(i);
      const ExtReal full = divergence_finite(GeneratorKind::KL, p, env.base());
      dist.observe(std::abs(full.to_double() - streamed[i]));
      const double base_rate = static_cast<double>(s) / (2.0 * static_cast<double>(n));
      for (long long k = 0; k < n; ++k) {
        const double expected = k == i ? base_rate - eps : base_rate;
        marg.observe(std::abs(env.marginal(p, k) - expected));
      }
      marg.observe(std::abs(env.marginal(env.base(), i) - base_rate));
      dpi.observe_le(divergence_finite(GeneratorKind::KL, p.pushforward(image, distinct), q_obs), full);
    }
  }
  return {dist.report(), marg.report(), dpi.report()};
}

std::vector<CheckReport> check_cramer(std::uint64_t seed, const SuiteBudget& b) {
  Tally upper("apps.cramer_chernoff_upper", "applications", kIdentityTolerance, seed);
  Tally lower("apps.cramer_type_lower", "applications", kIdentityTolerance, seed);
  constexpr double kCases[][2] = {{0.5, 0.75}, {0.3, 0.5}, {0.1, 0.4}, {0.05, 0.9}, {0.7, 0.71}};
  const long long n_max = b.random_cases >= 10000 ? 10000 : 2000;
  for (const auto& c : kCases) {
    const double theta = c[0];
    const double x = c[1];
    for (long long n = 1; n <= n_max; n += (n < 100 ? 1 : 37)) {
      const CramerRate r = cramer_rate(theta, x, n);
      upper.observe(r.empirical_rate - r.limit_rate);
      if (std::isinf(r.empirical_rate)) continue;
      // P(S >= k) >= P(S = k) >= exp(-n kl(k/n, theta)) / (n + 1) at the
      // smallest admissible k.
      const double nd = static_cast<double>(n);
      const double k_min = std::floor(nd * x + 1e-9 * nd) + 1.0;
      if (k_min > nd) continue;
      const double type_rate = -kl_bernoulli({k_min / nd, theta}).to_double() - std::log(nd + 1.0) / nd;
      lower.observe(type_rate - r.empirical_rate);
    }
  }
  return {upper.report(), lower.report()};
}

std::vector<CheckReport> check_posterior(std::uint64_t seed, const SuiteBudget& b) {
  Rng rng = stream(seed, "apps.posterior");
  Tally infimum("apps.posterior_constant_infimum", "applications", kClosedFormTolerance, seed);
  Tally order("apps.posterior_constant_order", "applications", 0.0, seed);
  Tally interior("apps.posterior_argmin_interior", "applications", 0.0, seed);
  const double floor_value = std::sqrt(std::numbers::e) / 8.0;
  double previous = std::numeric_limits<double>::infinity();
  const long long d_max = b.random_cases >= 10000 ? 200 : 50;
  for (long long d = 1; d <= d_max; ++d) {
    const PosteriorConstant pc = posterior_constant(d);
    order.observe(pc.c_d - previous);
    order.observe(floor_value - 1e-6 - pc.c_d);
    previous = pc.c_d;
    interior.observe(pc.rho_star <= 1.0 || pc.rho_star >= kRhoUpperLimit ? 1.0 : -1.0);
    for (int r = 0; r < 20; ++r) {
      const double rho = std::exp(std::log(kRhoUpperLimit) * rng.uniform_open_zero());
      infimum.observe(pc.c_d - posterior_objective(d, rho));
    }
  }
  return {infimum.report(), order.report(), interior.report()};
}

std::vector<CheckReport> check_distribution_dependent(std::uint64_t seed, const SuiteBudget& b) {
  Rng rng = stream(seed, "apps.distribution_dependent");
  Tally t("apps.dd_monotonicity", "applications", 0.0, seed);
  Tally psi("apps.psi_bernoulli_modulus", "applications", kClosedFormTolerance, seed);
  for (long long c = 0; c < b.random_cases; ++c) {
    const double theta = rng.uniform();
    const double eps = 0.25 * rng.uniform_open_zero();
    const double c_val = 1.0 + 3.0 * rng.uniform_open_zero();
    const long long n = 1 + static_cast<long long>(rng.below(1000));
    const ExtReal pb = psi_bernoulli(eps, theta);
    const ExtReal pb_wider = psi_bernoulli(eps * 1.1, theta);
    t.observe_le(pb, pb_wider);
    t.observe(posterior_dd_bound(pb, n + 1, c_val) - posterior_dd_bound(pb, n, c_val));
    t.observe(posterior_dd_bound(pb, n, c_val * 1.1) - posterior_dd_bound(pb, n, c_val));
    const double sigma = 0.1 + rng.uniform();
    t.observe(posterior_dd_bound(psi_gaussian(eps * 1.1, sigma), n, c_val) -
              posterior_dd_bound(psi_gaussian(eps, sigma), n, c_val));
    // Brute-force modulus over a parameter grid at distance >= 2 eps.
    ExtReal brute = ExtReal::infinity();
    for (int k = 0; k <= 200; ++k) {
      const double other = static_cast<double>(k) / 200.0;
      if (std::abs(other - theta) >= 2.0 * eps) brute = std::min(brute, kl_bernoulli({other, theta}));
    }
    psi.observe_le(pb, brute);
  }
  return {t.report(), psi.report()};
}

std::vector<CheckReport> check_regret(std::uint64_t seed, const SuiteBudget& b) {
  Tally t("apps.mc_regret_floor", "applications", 0.0, seed);
  constexpr long long kConfigs[][3] = {{8, 2, 512}, {16, 4, 1024}};
  for (const auto& cfg : kConfigs) {
    const SparseRegretBound bound = sparse_regret_bound(cfg[0], cfg[1], cfg[2]);
    const SparseLossConfig config(cfg[0], cfg[1], cfg[2], bound.epsilon_used);
    for (const Strategy strategy : {Strategy::uniform(), Strategy::hedge()}) {
      const RegretExperiment e = mc_regret_experiment(config, strategy, b.mc_trials, seed, 1);
      t.observe(e.theoretical_floor - 3.0 * e.standard_error - e.avg_mixture_regret);
    }
  }
  t.note("tolerance is 3 standard errors, folded into the violation");
  return {t.report()};
}

}  // namespace

SuiteBudget SuiteBudget::of(Budget budget) {
  if (budget == Budget::Full) return {100000, 2000, 1000, 200, 100000, 2000};
  return {1000, 300, 200, 20, 2000, 200};
}

FiniteDist random_dist(std::size_t k, Rng& rng) {
  if (k == 0) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  std::vector<double> w(k);
  for (double& v : w) v = -std::log(rng.uniform_open_zero());
  if (k > 1 && rng.bernoulli(0.2)) {
    const std::size_t keep = static_cast<std::size_t>(rng.below(k));
    for (std::size_t i = 0; i < k; ++i) {
      if (i != keep && rng.bernoulli(0.5)) w[i] = 0.0;
    }
  }
  return FiniteDist::from_masses(w);
}

CheckReport check_grid(const std::string& name, const std::string& module, int n, double tolerance,
                       const std::function<double(double, double)>& violation) {
  Tally t(name, module, tolerance, 0);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) t.observe(violation(grid_point(i, n), grid_point(j, n)));
  }
  return t.report();
}

const std::vector<CheckGroup>& registry() {
  static const std::vector<CheckGroup> groups = {
      {"nonnegativity", "divergences", check_nonnegativity},
      {"data_processing", "divergences", check_data_processing},
      {"statistic_data_processing", "divergences", check_statistic_data_processing},
      {"joint_convexity", "divergences", check_joint_convexity},
      {"bernoulli_agreement", "divergences", check_bernoulli_agreement},
      {"generator_route", "divergences", check_generator_route},
      {"kl_upper", "divergences", check_kl_upper},
      {"scalar_grid", "kl_bounds", check_scalar_grid},
      {"pinsker_factor", "kl_bounds", check_pinsker_factor},
      {"kl_inverse", "kl_bounds", check_kl_inverse},
      {"binary_entropy", "kl_bounds", check_binary_entropy},
      {"kl_quadratic", "kl_bounds", check_kl_quadratic},
      {"reduction_chain", "fano", check_reduction_chain},
      {"report_soundness", "fano", check_report_soundness},
      {"compensation", "fano", check_compensation},
      {"partition_ordering", "fano", check_partition_ordering},
      {"haroutunian", "fano", check_haroutunian},
      {"bayes_risk", "fano", check_bayes_risk},
      {"birge_constants", "birge", check_birge_constants},
      {"birge_soundness", "birge", check_birge_soundness},
      {"sparse_chain", "applications", check_sparse_chain},
      {"sparse_env", "applications", check_sparse_env},
      {"cramer", "applications", check_cramer},
      {"posterior", "applications", check_posterior},
      {"distribution_dependent", "applications", check_distribution_dependent},
      {"regret", "applications", check_regret},
  };
  return groups;
}

std::vector<CheckReport> run_group(const std::string& name, std::uint64_t seed,
                                   const SuiteBudget& budget) {
  for (const CheckGroup& g : registry()) {
    if (g.name == name) return g.run(seed, budget);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown check group: " + name);
}

std::vector<CheckReport> run_suite(std::uint64_t seed, Budget budget, unsigned threads) {
  return run_suite(seed, SuiteBudget::of(budget), threads);
}

std::vector<CheckReport> run_suite(std::uint64_t seed, const SuiteBudget& budget, unsigned threads) {
  const auto& groups = registry();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(groups.size()));

  std::vector<std::vector<CheckReport>> results(groups.size());
  std::vector<std::exception_ptr> errors(groups.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < groups.size(); i = next++) {
      try {
        results[i] = groups[i].run(seed, budget);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  std::vector<CheckReport> out;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (errors[i]) {
      // An exception inside a check is a failed check, not a crashed suite.
      CheckReport r;
      r.check_name = groups[i].name;
      r.module = groups[i].module;
      r.max_violation = std::numeric_limits<double>::infinity();
      r.seed = seed;
      try {
        std::rethrow_exception(errors[i]);
      } catch (const std::exception& e) {
        r.note = std::string("exception: ") + e.what();
      }
      out.push_back(std::move(r));
      continue;
    }
    for (CheckReport& r : results[i]) out.push_back(std::move(r));
  }
  return out;
}

bool all_passed(const std::vector<CheckReport>& reports) {
  return !reports.empty() &&
         std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed; });
}

namespace {

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_json_lines(const std::vector<CheckReport>& reports) {
  std::string out;
  for (const CheckReport& r : reports) {
    nlohmann::ordered_json j;
    j["check_name"] = r.check_name;
    j["module"] = r.module;
    j["cases_run"] = r.cases_run;
    // Infinite violations become the string "inf"; JSON has no infinity.
    if (std::isfinite(r.max_violation)) {
      j["max_violation"] = r.max_violation;
    } else {
      j["max_violation"] = format_number(r.max_violation);
    }
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    j["seed"] = r.seed;
    j["note"] = r.note;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string to_csv(const std::vector<CheckReport>& reports) {
  std::string out = "check_name,module,cases_run,max_violation,tolerance,passed,seed,note\n";
  for (const CheckReport& r : reports) {
    out += csv_field(r.check_name) + ',' + csv_field(r.module) + ',' + std::to_string(r.cases_run) +
           ',' + format_number(r.max_violation) + ',' + format_number(r.tolerance) + ',' +
           (r.passed ? "true" : "false") + ',' + std::to_string(r.seed) + ',' + csv_field(r.note) + '\n';
  }
  return out;
}

std::string to_plain(const std::vector<CheckReport>& reports) {
  std::ostringstream os;
  long long failed = 0;
  for (const CheckReport& r : reports) {
    os << (r.passed ? "PASS " : "FAIL ") << r.check_name << " [" << r.module << "] cases=" << r.cases_run
       << " max_violation=" << format_number(r.max_violation) << " tol=" << format_number(r.tolerance);
    if (!r.note.empty()) os << "  (" << r.note << ")";
    os << '\n';
    if (!r.passed) ++failed;
  }
  os << reports.size() - failed << "/" << reports.size() << " checks passed\n";
  return os.str();
}

}  // namespace fanolab::verify
