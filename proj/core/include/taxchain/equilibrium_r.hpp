#pragma once

#include "taxchain/scenario.hpp"

namespace taxchain {

/// Limited-risk equilibrium. Headquarters sets the incentive intensity b, the
/// agent supplies effort, and the retail division orders last. Participation
/// binds: the fixed wage is set so the agent nets exactly the reservation wage.
struct EquilibriumR {
  double y_star = 0.0;
  double e_star = 0.0;
  double b_star = 0.0;
  double pi_r = 0.0;
  double pi_pc = 0.0;       // agent payoff, equal to the reservation wage
  double pi_hq = 0.0;
  double fixed_wage = 0.0;  // may be negative (a fee paid by the agent)
  double lemma2_b_residual = 0.0;
  bool boundary_b = false;
  bool effort_clamped = false;
  int iterations = 0;
};

/// Upper end of the admissible incentive range [0, 1).
inline constexpr double kMaxIntensity = 1.0 - 1e-6;

struct AgentEffort {
  double effort = 0.0;
  bool clamped = false;
};

/// Agent's best effort for intensity b at order y: b (1+alpha) eta y / k,
/// clamped into the feasible effort interval.
AgentEffort agent_effort(const Scenario& s, double b, double y);

struct InnerSolution {
  double e = 0.0;
  double y = 0.0;
  int iterations = 0;
  bool clamped = false;
};

/// Damped iteration e <- (1-d) e + d * agent_effort(b, y(e)) from e = 0.
/// Throws NonConvergence past max_iter or after 50 consecutive growing steps.
InnerSolution inner_fixed_point(const Scenario& s, double b);

/// Closed-form optimal intensity at order y:
///   [N g(y) + (1-tau0) alpha] / [(1-tau0)(1+alpha) g(y)].
double lemma2_b(const Scenario& s, double y);

/// Headquarters profit at intensity b once the agent and retail respond and
/// participation binds:
///   (1-tau)(1-beta) pi_R + (1-tau0)[beta pi_R - a - k e^2/2 + alpha gamma(e) y].
double hq_profit_r(const Scenario& s, double b);

EquilibriumR solve_r(const Scenario& s);

}  // namespace taxchain
