#include "taxchain/equilibrium_r.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "taxchain/error.hpp"
#include "taxchain/numeric.hpp"

namespace taxchain {

AgentEffort agent_effort(const Scenario& s, double b, double y) {
  const EffortInterval range = feasible_effort_interval(s);
  const double raw = b * (1.0 + s.alpha) * s.eta * y / s.k;
  AgentEffort out;
  out.effort = std::clamp(raw, range.lo, range.hi);
  out.clamped = out.effort != raw;
  return out;
}

InnerSolution inner_fixed_point(const Scenario& s, double b) {
  const EffortInterval range = feasible_effort_interval(s);
  const double damping = s.solver.damping;
  InnerSolution out;
  double e = std::clamp(0.0, range.lo, range.hi);
  double last_step = std::numeric_limits<double>::infinity();
  int growing = 0;
  for (int iter = 1; iter <= s.solver.max_iter; ++iter) {
    const double y = newsvendor_order(s, e);
    const AgentEffort target = agent_effort(s, b, y);
    const double next = (1.0 - damping) * e + damping * target.effort;
    const double step = std::abs(next - e);
    e = next;
    if (step < s.solver.tol) {
      out.e = e;
      out.y = newsvendor_order(s, e);
      out.iterations = iter;
      out.clamped = agent_effort(s, b, out.y).clamped;
      return out;
    }
    growing = step > last_step ? growing + 1 : 0;
    if (growing >= 50) fail(ErrorKind::NonConvergence, "agent effort iteration diverges");
    last_step = step;
  }
  fail(ErrorKind::NonConvergence, "agent effort iteration exceeded max_iter");
}

double lemma2_b(const Scenario& s, double y) {
  const double g = s.demand.gfr(y);
  if (!(g > 0.0)) fail(ErrorKind::TailDegenerate, "generalized failure rate is not positive");
  return (effort_revenue_weight(s) * g + (1.0 - s.tau0) * s.alpha) /
         ((1.0 - s.tau0) * (1.0 + s.alpha) * g);
}

namespace {

struct Evaluation {
  InnerSolution inner;
  double pi_r;
  double pi_hq;
};

Evaluation evaluate(const Scenario& s, double b) {
  Evaluation ev;
  ev.inner = inner_fixed_point(s, b);
  const double e = ev.inner.e;
  const double y = ev.inner.y;
  ev.pi_r = retail_profit(s, y, e);
  ev.pi_hq = (1.0 - s.tau) * ev.pi_r + s.beta * s.tax_difference() * ev.pi_r +
             (1.0 - s.tau0) * (s.alpha * unit_cost(s, e) * y - s.reservation - effort_cost(s, e));
  return ev;
}

}  // namespace

double hq_profit_r(const Scenario& s, double b) { return evaluate(s, b).pi_hq; }

EquilibriumR solve_r(const Scenario& s) {
  validate(s);
  feasible_effort_interval(s);
  EquilibriumR out;
  if (s.eta == 0.0) {
    // Effort cannot move cost, so no intensity beats b = 0.
    out.b_star = 0.0;
    out.boundary_b = true;
  } else {
    int inner_iterations = 0;
    const auto objective = [&](double b) {
      const Evaluation ev = evaluate(s, b);
      inner_iterations += ev.inner.iterations;
      return ev.pi_hq;
    };
    const ScalarMaximum best = maximize_scalar(objective, 0.0, kMaxIntensity, s.solver.grid_points,
                                               s.solver.tol, s.solver.max_iter);
    out.b_star = best.x;
    out.boundary_b = best.at_lower || best.at_upper;
    out.iterations = best.iterations + inner_iterations;
  }
  const Evaluation ev = evaluate(s, out.b_star);
  out.e_star = ev.inner.e;
  out.y_star = ev.inner.y;
  out.effort_clamped = ev.inner.clamped;
  out.pi_r = ev.pi_r;
  out.pi_hq = ev.pi_hq;
  out.pi_pc = s.reservation;
  out.fixed_wage = s.reservation - out.b_star * out.pi_r + effort_cost(s, out.e_star);
  try {
    out.lemma2_b_residual = std::abs(lemma2_b(s, out.y_star) - out.b_star);
  } catch (const Error&) {
    out.lemma2_b_residual = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace taxchain
