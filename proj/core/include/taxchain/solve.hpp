#pragma once

#include "taxchain/equilibrium_c.hpp"
#include "taxchain/equilibrium_r.hpp"
#include "taxchain/scenario.hpp"

namespace taxchain {

/// Structure-independent view of a solved equilibrium. For C, b and pi_pc are
/// absent (has_contract == false) and the agent only earns the fixed salary.
struct Outcome {
  Structure structure = Structure::Commissionaire;
  double y = 0.0;
  double e = 0.0;
  double b = 0.0;
  double pi_r = 0.0;
  double pi_pc = 0.0;
  double pi_hq = 0.0;
  double foc_residual = 0.0;  // C: relative effort FOC; R: distance of b* from the closed-form intensity
  bool boundary = false;
  int iterations = 0;

  bool has_contract() const noexcept { return structure == Structure::LimitedRisk; }
};

Outcome to_outcome(const EquilibriumC& eq);
Outcome to_outcome(const EquilibriumR& eq);
Outcome solve(const Scenario& s, Structure structure);

}  // namespace taxchain
