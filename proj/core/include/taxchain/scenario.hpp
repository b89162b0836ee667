#pragma once

#include <limits>
#include <string_view>

#include "taxchain/demand.hpp"

namespace taxchain {

/// Operational structure: commissionaire (headquarters mandates effort) or
/// limited-risk (agent picks effort under a linear incentive contract).
enum class Structure { Commissionaire, LimitedRisk };

std::string_view to_string(Structure s) noexcept;  // "C" / "R"
Structure parse_structure(std::string_view text);   // accepts c, C, r, R

struct SolverSettings {
  double tol = 1e-9;
  int max_iter = 10000;
  int grid_points = 512;
  double damping = 0.5;
};

/// Full model parameterization. The tax difference is always tau - tau0 and is
/// never stored on its own.
struct Scenario {
  double m = 0.0;       // retail price
  double gamma0 = 0.0;  // raw-material price at zero effort
  double eta = 0.0;     // cost reduction per unit of effort
  double k = 0.0;       // effort cost coefficient, c(e) = k e^2 / 2
  double tau = 0.0;     // retail (high) tax rate
  double tau0 = 0.0;    // procurement (low) tax rate
  double alpha = 0.0;   // cost-plus markup
  double beta = 0.0;    // royalty share of retail profit booked in the low-tax region
  double reservation = 0.0;
  DemandDistribution demand = DemandDistribution::normal(220.0, 30.0);
  SolverSettings solver{};

  double tax_difference() const noexcept { return tau - tau0; }
};

/// Throws InvariantViolation naming the first violated invariant.
void validate(const SolverSettings& settings);
void validate(const Scenario& s);

struct EffortInterval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  bool bounded = true;  // false only for eta == 0 (constant unit cost)
};

double unit_cost(const Scenario& s, double e) noexcept;
/// (1 + alpha) * unit_cost; ArmLengthViolation when it exceeds m.
double transfer_price(const Scenario& s, double e);
double effort_cost(const Scenario& s, double e) noexcept;
/// m * s(y) - T(e) * y.
double retail_profit(const Scenario& s, double y, double e);

/// Efforts keeping 0 < T(e) <= m. InfeasibleScenario if empty.
EffortInterval feasible_effort_interval(const Scenario& s);

/// Retail division's newsvendor order at effort e: the critical fractile
/// F^{-1}(1 - T(e)/m), restricted to y >= 0.
double newsvendor_order(const Scenario& s, double e);

/// After-tax weight on the marginal retail revenue of effort:
/// [(1-tau)(1-beta) + (1-tau0) beta](1+alpha) - (1-tau0) alpha.
double effort_revenue_weight(const Scenario& s) noexcept;

}  // namespace taxchain
