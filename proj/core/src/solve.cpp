#include "taxchain/solve.hpp"

namespace taxchain {

Outcome to_outcome(const EquilibriumC& eq) {
  Outcome o;
  o.structure = Structure::Commissionaire;
  o.y = eq.y_star;
  o.e = eq.e_star;
  o.pi_r = eq.pi_r;
  o.pi_hq = eq.pi_hq;
  o.foc_residual = eq.foc_residual;
  o.boundary = eq.boundary();
  o.iterations = eq.iterations;
  return o;
}

Outcome to_outcome(const EquilibriumR& eq) {
  Outcome o;
  o.structure = Structure::LimitedRisk;
  o.y = eq.y_star;
  o.e = eq.e_star;
  o.b = eq.b_star;
  o.pi_r = eq.pi_r;
  o.pi_pc = eq.pi_pc;
  o.pi_hq = eq.pi_hq;
  o.foc_residual = eq.lemma2_b_residual;
  o.boundary = eq.boundary_b || eq.effort_clamped;
  o.iterations = eq.iterations;
  return o;
}

Outcome solve(const Scenario& s, Structure structure) {
  if (structure == Structure::Commissionaire) return to_outcome(solve_c(s));
  return to_outcome(solve_r(s));
}

}  // namespace taxchain
