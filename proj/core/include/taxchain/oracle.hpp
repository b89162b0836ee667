#pragma once

#include <cstdint>
#include <string>

#include "taxchain/scenario.hpp"

namespace taxchain {

// Dense-grid reference optimizers. They recompute orders and profits along
// their own code path and never call into the solvers' search loops.

struct OracleC {
  double e = 0.0;
  double y = 0.0;
  double pi_hq = 0.0;
  double e_step = 0.0;
};

/// Argmax of headquarters profit over e_grid_size uniform nodes spanning the
/// feasible effort interval (endpoints included). For eta == 0 the grid spans
/// [0, 1]. Requires e_grid_size >= 1000.
OracleC oracle_solve_c(const Scenario& s, int e_grid_size);

struct OracleR {
  double b = 0.0;
  double e = 0.0;
  double y = 0.0;
  double pi_hq = 0.0;
  double b_step = 0.0;
  double e_step = 0.0;
};

/// For each b on a uniform grid over [0, 1), the agent's payoff
/// b pi_R(y(e), e) - k e^2 / 2 is maximized over an e-grid (the effort is
/// placed at the vertex of the parabola through the best node and its
/// neighbours); headquarters profit with binding participation is evaluated
/// there and the best b is returned. Grids must have >= 500 points.
OracleR oracle_solve_r(const Scenario& s, int b_grid_size, int e_grid_size);

/// Agent's best effort on an n-point grid for intensity b (no sub-grid
/// refinement); used to check incentive compatibility.
double oracle_agent_effort(const Scenario& s, double b, int e_grid_size);

struct EquivalenceReport {
  bool ok = false;
  std::string detail;  // solver vs oracle decisions, and the scenario on failure
};

/// Solves with the structure's solver and the dense-grid oracle and checks the
/// decisions agree within one oracle grid step (C: 2000 e-nodes; R: 500 b-nodes
/// by 500 e-nodes).
EquivalenceReport check_oracle_equivalence(const Scenario& s, Structure structure);

/// Deterministic random feasible scenario for oracle-equivalence checks.
/// Parameters are drawn so equilibria stay inside the feasible effort range.
Scenario random_feasible_scenario(std::uint64_t seed);

}  // namespace taxchain
