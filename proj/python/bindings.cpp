#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <limits>
#include <string>
#include <tuple>
#include <vector>

#include "fanolab/applications.hpp"
#include "fanolab/birge.hpp"
#include "fanolab/fano.hpp"
#include "fanolab/kl_bounds.hpp"
#include "fanolab/verify.hpp"

namespace py = pybind11;
using namespace fanolab;

namespace {

double to_float(ExtReal v) { return v.is_infinite() ? std::numeric_limits<double>::infinity() : v.to_double(); }

GeneratorKind generator(const std::string& name) {
  if (name == "kl") return GeneratorKind::KL;
  if (name == "chi2") return GeneratorKind::CHI2;
  if (name == "hellinger") return GeneratorKind::HELLINGER;
  throw Error(ErrorCode::InvalidArgument, "unknown divergence '" + name + "'");
}

py::dict bound_dict(const SolvedBound& b) {
  py::dict d;
  d["family"] = bound_family_name(b.family);
  d["bound"] = b.bound_on_p;
  d["vacuous"] = b.vacuous();
  return d;
}

py::dict report_dict(const FanoReport& r) {
  py::dict d;
  d["family"] = bound_family_name(r.family);
  d["bound"] = r.value;
  d["vacuous"] = r.vacuous();
  d["p_bar"] = r.reduced.p_bar;
  d["q_bar"] = r.reduced.q_bar;
  d["d_bar"] = to_float(r.reduced.d_bar);
  return d;
}

ReducedPair reduce_records(const std::vector<std::tuple<double, double, double, double>>& records) {
  std::vector<FamilyEntry> entries;
  entries.reserve(records.size());
  for (const auto& [w, p, q, div] : records) entries.push_back({w, p, q, ExtReal::of(div)});
  return reduce(entries);
}

}  // namespace

PYBIND11_MODULE(_fanolab, m) {
  m.doc() = "Divergences, Fano-type lower bounds and their verification suite";

  py::register_exception<Error>(m, "FanolabError", PyExc_ValueError);

  // divergences
  m.def("kl_bernoulli", [](double p, double q) { return to_float(kl_bernoulli({p, q})); }, py::arg("p"),
        py::arg("q"));
  m.def("chi2_bernoulli", [](double p, double q) { return to_float(chi2_bernoulli({p, q})); }, py::arg("p"),
        py::arg("q"));
  m.def("hellinger2_bernoulli", [](double p, double q) { return hellinger2_bernoulli({p, q}); }, py::arg("p"),
        py::arg("q"));
  m.def(
      "divergence",
      [](const std::string& f, std::vector<double> p, std::vector<double> q) {
        return to_float(divergence_finite(generator(f), FiniteDist(std::move(p)), FiniteDist(std::move(q))));
      },
      py::arg("f"), py::arg("p"), py::arg("q"), "Divergence between two finite distributions; f is kl, chi2 or hellinger.");

  // scalar bounds
  m.def("lb_classic", [](double kl, double q) { return bound_dict(lb_classic(ExtReal::of(kl), q)); });
  m.def("lb_refined", [](double kl, double q) { return bound_dict(lb_refined(ExtReal::of(kl), q)); });
  m.def("lb_affine", [](double kl, double q) { return bound_dict(lb_affine(ExtReal::of(kl), q)); });
  m.def(
      "lb_pinsker_fano",
      [](double kl, double q, bool plain) {
        return bound_dict(lb_pinsker_fano(ExtReal::of(kl), q,
                                          plain ? PinskerDenominator::Plain : PinskerDenominator::MaxWithTwo));
      },
      py::arg("kl"), py::arg("q"), py::arg("plain") = false);
  m.def("chi2_solved", [](double chi2, double q) { return bound_dict(chi2_solved(ExtReal::of(chi2), q)); });
  m.def(
      "lecam_hellinger", [](double h2, double q, bool sharp) { return bound_dict(lecam_hellinger(h2, q, sharp)); },
      py::arg("h2"), py::arg("q"), py::arg("sharp") = false);
  m.def("pinsker_factor", [](double q) { return to_float(pinsker_factor(q)); });
  m.def("bretagnolle_huber_q_lower",
        [](double p, double kl) { return bretagnolle_huber_q_lower(p, ExtReal::of(kl)); });
  m.def("kl_inverse", [](double q, double y) { return kl_inverse(q, ExtReal::of(y)); }, py::arg("q"),
        py::arg("y"));
  m.def("binary_entropy", &binary_entropy);

  // fano
  m.def(
      "reduce",
      [](const std::vector<std::tuple<double, double, double, double>>& records) {
        const ReducedPair r = reduce_records(records);
        return py::make_tuple(r.p_bar, r.q_bar, to_float(r.d_bar));
      },
      py::arg("records"), "Average (weight, p_exp, q_exp, div) records into (p_bar, q_bar, d_bar).");
  m.def(
      "fano_bounds",
      [](double q_bar, double d_bar, const std::string& f, double p_bar) {
        const ReducedPair r{p_bar, q_bar, ExtReal::of(d_bar)};
        py::list rows;
        switch (generator(f)) {
          case GeneratorKind::KL:
            rows.append(report_dict(fano_kl(r, KlVariant::Classic)));
            rows.append(report_dict(fano_kl(r, KlVariant::Refined)));
            rows.append(report_dict(fano_kl(r, KlVariant::Affine)));
            rows.append(report_dict(fano_kl_sqrt(r, true)));
            rows.append(report_dict(fano_kl_inverse(r)));
            break;
          case GeneratorKind::CHI2: rows.append(report_dict(fano_chi2(r))); break;
          case GeneratorKind::HELLINGER: rows.append(report_dict(fano_hellinger(r))); break;
        }
        return rows;
      },
      py::arg("q_bar"), py::arg("d_bar"), py::arg("f") = "kl", py::arg("p_bar") = 0.0);
  m.def("haroutunian_q_lower", [](double p, double kl) { return haroutunian_q_lower(p, ExtReal::of(kl)); });

  // birge
  m.def("birge_c", &birge_c);
  m.def("birge_d", &birge_d);
  m.def("massart_constant", &massart_constant);
  m.def("birge_table", [](const std::vector<long long>& ns) {
    py::list rows;
    for (const BirgeConstants& r : comparison_table(ns)) {
      py::dict d;
      d["N"] = r.n_hypotheses;
      d["c_N"] = r.c_n;
      d["d_N"] = r.d_n;
      d["massart"] = r.massart;
      rows.append(d);
    }
    return rows;
  });

  // applications
  m.def("posterior_constant", [](long long d) {
    const PosteriorConstant c = posterior_constant(d);
    return py::make_tuple(c.c_d, c.rho_star);
  });
  m.def("sparse_regret_bound", [](long long n, long long s, long long t) {
    const SparseRegretBound b = sparse_regret_bound(n, s, t);
    py::dict d;
    d["bound"] = b.bound;
    d["epsilon"] = b.epsilon_used;
    d["regime"] = regime_name(b.regime);
    return d;
  });
  m.def("cramer_rate", [](double theta, double x, long long n) {
    const CramerRate c = cramer_rate(theta, x, n);
    return py::make_tuple(c.empirical_rate, c.limit_rate);
  });
  m.def("posterior_dd_bound",
        [](double psi, long long n, double c) { return posterior_dd_bound(ExtReal::of(psi), n, c); });
  m.def("sparse_env_kl", &sparse_env_kl, py::arg("n_arms"), py::arg("sparsity"), py::arg("epsilon"));

  // verify
  m.def(
      "verify",
      [](std::uint64_t seed, const std::string& budget, unsigned threads) {
        if (budget != "quick" && budget != "full") {
          throw Error(ErrorCode::InvalidArgument, "budget must be quick or full");
        }
        std::vector<verify::CheckReport> reports;
        {
          py::gil_scoped_release release;
          reports = verify::run_suite(seed, budget == "full" ? verify::Budget::Full : verify::Budget::Quick, threads);
        }
        py::list rows;
        for (const auto& r : reports) {
          py::dict d;
          d["check_name"] = r.check_name;
          d["module"] = r.module;
          d["cases_run"] = r.cases_run;
          d["max_violation"] = r.max_violation;
          d["tolerance"] = r.tolerance;
          d["passed"] = r.passed;
          d["seed"] = r.seed;
          d["note"] = r.note;
          rows.append(d);
        }
        return rows;
      },
      py::arg("seed") = 0, py::arg("budget") = "quick", py::arg("threads") = 0);
  m.def(
      "verify_json_lines",
      [](std::uint64_t seed) {
        std::vector<verify::CheckReport> reports;
        {
          py::gil_scoped_release release;
          reports = verify::run_suite(seed, verify::Budget::Quick);
        }
        return verify::to_json_lines(reports);
      },
      py::arg("seed") = 0);
}
