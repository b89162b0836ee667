#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "taxchain/equilibrium_c.hpp"
#include "taxchain/equilibrium_r.hpp"
#include "taxchain/config.hpp"
#include "taxchain/oracle.hpp"

using namespace taxchain;

TEST_SUITE("oracle") {

TEST_CASE("commissionaire grid argmax") {
  Scenario flat = taxfix::commissionaire_base();
  flat.eta = 0.0;
  CHECK(oracle_solve_c(flat, 1000).e == 0.0);
  const auto o = oracle_solve_c(taxfix::commissionaire_base(), 2000);
  CHECK(std::abs(o.e - 4.56) <= o.e_step);
}

TEST_CASE("limited-risk grid argmax") {
  const Scenario s = taxfix::limited_risk_base(0.1, 0.30);
  CHECK(oracle_agent_effort(s, 0.0, 1000) == 0.0);
  const auto o = oracle_solve_r(s, 500, 500);
  // Reported anchors carry two significant digits; allow half a unit on top of the step.
  CHECK(std::abs(o.b - 0.87) <= o.b_step + 0.005);
  CHECK(std::abs(o.e - 6.7) <= o.e_step + 0.05);
  // Same profit form as the solver, reached through the wage-based accounting.
  CHECK(oracle_solve_r(taxfix::limited_risk_base(0.1, 0.10, 0.5), 500, 500).pi_hq ==
        doctest::Approx(9014.6).epsilon(0.005));
}

TEST_CASE("seed 7 matches both solvers") {
  const Scenario s = random_feasible_scenario(7);
  const auto oc = oracle_solve_c(s, 2000);
  CHECK(std::abs(solve_c(s).e_star - oc.e) <= oc.e_step);
  const auto orr = oracle_solve_r(s, 500, 500);
  const auto r = solve_r(s);
  CHECK(std::abs(r.b_star - orr.b) <= orr.b_step);
  CHECK(std::abs(r.e_star - orr.e) <= orr.e_step);
}

TEST_CASE("oracle is deterministic") {
  const Scenario s = random_feasible_scenario(11);
  const auto a = oracle_solve_r(s, 500, 500);
  const auto b = oracle_solve_r(s, 500, 500);
  CHECK(a.b == b.b);
  CHECK(a.e == b.e);
  CHECK(a.pi_hq == b.pi_hq);
  CHECK(oracle_solve_c(s, 1500).e == oracle_solve_c(s, 1500).e);
}

TEST_CASE("refining the grids moves the argmax by at most one original step") {
  for (std::uint64_t seed : {3u, 19u}) {
    const Scenario s = random_feasible_scenario(seed);
    const auto c1 = oracle_solve_c(s, 2000);
    const auto c2 = oracle_solve_c(s, 4000);
    CHECK(std::abs(c1.e - c2.e) <= c1.e_step);
    const auto r1 = oracle_solve_r(s, 500, 500);
    const auto r2 = oracle_solve_r(s, 1000, 1000);
    CHECK(std::abs(r1.b - r2.b) <= r1.b_step);
    CHECK(std::abs(r1.e - r2.e) <= r1.e_step);
  }
}

TEST_CASE("random scenarios are feasible and reproducible") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Scenario s = random_feasible_scenario(seed);
    CHECK_NOTHROW(validate(s));
    CHECK(to_config_text(s) == to_config_text(random_feasible_scenario(seed)));
  }
}

TEST_CASE("solvers agree with the oracle on 100 random scenarios") {
  int failures = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    for (Structure st : {Structure::Commissionaire, Structure::LimitedRisk}) {
      const auto rep = check_oracle_equivalence(random_feasible_scenario(seed), st);
      if (!rep.ok) {
        ++failures;
        MESSAGE("seed " << seed << ' ' << to_string(st) << ": " << rep.detail);
      }
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("failure report carries the scenario") {
  // Starve the solver of refinement so its answer drifts off the oracle's.
  Scenario s = random_feasible_scenario(5);
  s.solver.grid_points = 3;
  s.solver.tol = 1.0;
  const auto rep = check_oracle_equivalence(s, Structure::Commissionaire);
  if (!rep.ok) CHECK(rep.detail.find("[market]") != std::string::npos);
}

}  // TEST_SUITE
