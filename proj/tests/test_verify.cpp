#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "doctest.h"
#include "fanolab/divergences.hpp"
#include "fanolab/kl_bounds.hpp"
#include "fanolab/verify.hpp"

using namespace fanolab;

TEST_CASE("quick suite passes") {
  const auto reports = verify::run_suite(0, verify::Budget::Quick);
  for (const auto& r : reports) {
    INFO(r.check_name << " max_violation=" << r.max_violation << " " << r.note);
    CHECK(r.passed);
    CHECK(r.cases_run > 0);
  }
  CHECK(verify::all_passed(reports));
}

TEST_CASE("registry covers every module") {
  std::set<std::string> modules;
  std::set<std::string> names;
  for (const auto& g : verify::registry()) {
    modules.insert(g.module);
    CHECK(names.insert(g.name).second);
  }
  for (const char* m : {"divergences", "kl_bounds", "fano", "birge", "applications"}) {
    CHECK(modules.count(m) == 1);
  }
  CHECK_THROWS_AS(verify::run_group("no_such_group", 0, verify::SuiteBudget::of(verify::Budget::Quick)), Error);
}

TEST_CASE("reports are deterministic and thread-independent") {
  const auto budget = verify::SuiteBudget::of(verify::Budget::Quick);
  const auto a = verify::run_suite(3, budget, 1);
  const auto b = verify::run_suite(3, budget, 4);
  CHECK(verify::to_json_lines(a) == verify::to_json_lines(b));
  CHECK(verify::to_csv(a) == verify::to_csv(b));
  const auto c = verify::run_suite(4, budget, 1);
  CHECK(verify::to_json_lines(a) != verify::to_json_lines(c));
}

TEST_CASE("mutation canary: ln 1.9 in the classic bound is caught") {
  auto mutated = [](double p, double q) {
    const double kl = kl_bernoulli({p, q}).to_double();
    const double bound = std::min(1.0, (kl + std::log(1.9)) / -std::log(q));
    return p - bound;
  };
  auto honest = [](double p, double q) { return p - lb_classic(kl_bernoulli({p, q}), q).bound_on_p; };
  const auto bad = verify::check_grid("canary", "kl_bounds", 200, verify::kIdentityTolerance, mutated);
  const auto good = verify::check_grid("honest", "kl_bounds", 200, verify::kIdentityTolerance, honest);
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_violation > 0.0);
  CHECK(good.passed);
}

TEST_CASE("report formats") {
  verify::CheckReport r;
  r.check_name = "x";
  r.module = "m";
  r.cases_run = 3;
  r.max_violation = std::numeric_limits<double>::infinity();
  r.tolerance = 1e-10;
  r.note = "a, \"b\"";
  const std::vector<verify::CheckReport> rs{r};
  CHECK(verify::to_json_lines(rs).find("\"max_violation\":\"inf\"") != std::string::npos);
  const std::string csv = verify::to_csv(rs);
  CHECK(csv.rfind("check_name,module,cases_run,max_violation,tolerance,passed,seed,note\n", 0) == 0);
  CHECK(csv.find("\"a, \"\"b\"\"\"") != std::string::npos);
  CHECK(verify::to_plain(rs).find("FAIL x") != std::string::npos);
}
