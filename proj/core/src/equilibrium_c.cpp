#include "taxchain/equilibrium_c.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "taxchain/error.hpp"
#include "taxchain/numeric.hpp"

namespace taxchain {

namespace {

struct FocTerms {
  double revenue;   // N eta y
  double markup;    // (1-tau0) alpha gamma0 y'
  double cost;      // [(1-tau0)(alpha eta y' + k) - (tau-tau0) k] e
};

FocTerms foc_terms(const Scenario& s, double e) {
  const double y = retail_best_response_c(s, e);
  double slope = 0.0;
  // At a clamped (zero) order the response is flat.
  if (y > std::max(0.0, s.demand.support_lower())) {
    const double density = s.demand.pdf(y);
    if (density < 1e-15) fail(ErrorKind::DensityVanishes, "f(y) below 1e-15 at the order quantity");
    slope = (1.0 + s.alpha) * s.eta / (s.m * density);
  }
  const double high_bracket = (1.0 - s.tau0) * s.k - (s.tau - s.tau0) * s.k;
  assert(std::abs(high_bracket - (1.0 - s.tau) * s.k) <= 1e-9 * s.k);
  FocTerms t;
  t.revenue = effort_revenue_weight(s) * s.eta * y;
  t.markup = (1.0 - s.tau0) * s.alpha * s.gamma0 * slope;
  t.cost = ((1.0 - s.tau0) * s.alpha * s.eta * slope + high_bracket) * e;
  return t;
}

}  // namespace

double retail_best_response_c(const Scenario& s, double e) { return newsvendor_order(s, e); }

double effort_foc_c(const Scenario& s, double e) {
  const FocTerms t = foc_terms(s, e);
  return t.revenue + t.markup - t.cost;
}

double effort_foc_scale_c(const Scenario& s, double e) {
  const FocTerms t = foc_terms(s, e);
  return std::abs(t.revenue) + std::abs(t.markup) + std::abs(t.cost);
}

double hq_profit_c(const Scenario& s, double e) {
  const double y = retail_best_response_c(s, e);
  const double pi_r = retail_profit(s, y, e);
  // (1-tau)(1-beta) pi + (1-tau0) beta pi == (1-tau) pi + beta (tau-tau0) pi;
  // the right form makes beta drop out exactly when tau == tau0.
  return (1.0 - s.tau) * (pi_r - effort_cost(s, e)) + s.beta * s.tax_difference() * pi_r +
         (1.0 - s.tau0) * (s.alpha * unit_cost(s, e) * y - s.reservation);
}

EquilibriumC solve_c(const Scenario& s) {
  validate(s);
  const EffortInterval range = feasible_effort_interval(s);
  EquilibriumC out;
  if (!range.bounded) {
    // eta == 0: effort only costs money.
    out.e_star = 0.0;
    out.at_lower = true;
  } else {
    const auto objective = [&s](double e) { return hq_profit_c(s, e); };
    const ScalarMaximum best = maximize_scalar(objective, range.lo, range.hi, s.solver.grid_points,
                                               s.solver.tol, s.solver.max_iter);
    out.e_star = best.x;
    out.at_lower = best.at_lower;
    out.at_upper = best.at_upper;
    out.iterations = best.iterations;
  }
  out.y_star = retail_best_response_c(s, out.e_star);
  out.pi_r = retail_profit(s, out.y_star, out.e_star);
  out.pi_hq = hq_profit_c(s, out.e_star);

  const double scale = effort_foc_scale_c(s, out.e_star);
  out.foc_residual = scale > 0.0 ? std::abs(effort_foc_c(s, out.e_star)) / scale : 0.0;

  const double delta = 1e-4 * std::max(1.0, out.e_star);
  bool ok = true;
  if (range.bounded) {
    if (out.e_star - delta >= range.lo) ok = ok && out.pi_hq >= hq_profit_c(s, out.e_star - delta);
    if (out.e_star + delta <= range.hi) ok = ok && out.pi_hq >= hq_profit_c(s, out.e_star + delta);
  } else {
    ok = out.pi_hq >= hq_profit_c(s, delta);
  }
  out.second_order_ok = ok;
  return out;
}

}  // namespace taxchain
