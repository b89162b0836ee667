#pragma once

#include "taxchain/scenario.hpp"

namespace taxchain {

/// Commissionaire equilibrium: headquarters picks effort anticipating the
/// retail division's newsvendor order.
struct EquilibriumC {
  double y_star = 0.0;
  double e_star = 0.0;
  double pi_r = 0.0;
  double pi_hq = 0.0;
  // |effort FOC| divided by the sum of the absolute values of its terms.
  double foc_residual = 0.0;
  bool second_order_ok = false;
  bool at_lower = false;  // e* sits on the lower end of the feasible interval
  bool at_upper = false;
  int iterations = 0;

  bool boundary() const noexcept { return at_lower || at_upper; }
};

double retail_best_response_c(const Scenario& s, double e);

/// Marginal headquarters profit in effort, with the order response folded in:
///   N eta y + (1-tau0) alpha gamma0 y'(e) - [(1-tau0)(alpha eta y'(e) + k) - (tau-tau0) k] e
/// where y'(e) = (1+alpha) eta / (m f(y)). Zero at an interior optimum.
double effort_foc_c(const Scenario& s, double e);

/// Sum of absolute values of the terms of effort_foc_c; the scale against
/// which the residual is judged.
double effort_foc_scale_c(const Scenario& s, double e);

double hq_profit_c(const Scenario& s, double e);

EquilibriumC solve_c(const Scenario& s);

}  // namespace taxchain
