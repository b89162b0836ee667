#include "taxchain/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "taxchain/error.hpp"

namespace taxchain {

std::string_view to_string(Structure s) noexcept {
  return s == Structure::Commissionaire ? "C" : "R";
}

Structure parse_structure(std::string_view text) {
  if (text == "c" || text == "C") return Structure::Commissionaire;
  if (text == "r" || text == "R") return Structure::LimitedRisk;
  fail(ErrorKind::UsageError, "unknown structure '" + std::string(text) + "' (expected c or r)");
}

namespace {

void require(bool ok, const char* invariant) {
  if (!ok) fail(ErrorKind::InvariantViolation, invariant);
}

}  // namespace

void validate(const SolverSettings& settings) {
  require(settings.tol > 0.0, "tol > 0");
  require(settings.max_iter >= 1, "max_iter >= 1");
  require(settings.grid_points >= 16, "grid_points >= 16");
  require(settings.damping > 0.0 && settings.damping <= 1.0, "0 < damping <= 1");
}

void validate(const Scenario& s) {
  require(std::isfinite(s.m) && s.m > 0.0, "m > 0");
  require(std::isfinite(s.gamma0) && s.gamma0 > 0.0, "gamma0 > 0");
  require(std::isfinite(s.eta) && s.eta >= 0.0, "eta >= 0");
  require(std::isfinite(s.k) && s.k > 0.0, "k > 0");
  require(s.tau0 >= 0.0, "0 <= tau0");
  require(s.tau0 <= s.tau, "tau0 <= tau");
  require(s.tau < 1.0, "tau < 1");
  require(std::isfinite(s.alpha) && s.alpha >= 0.0, "alpha >= 0");
  require(s.beta >= 0.0 && s.beta < 1.0, "0 <= beta < 1");
  require(std::isfinite(s.reservation) && s.reservation >= 0.0, "a >= 0");
  validate(s.solver);
  // Nonempty feasible effort interval: some e >= 0 with 0 < T(e) < m.
  if (s.eta == 0.0) {
    require((1.0 + s.alpha) * s.gamma0 < s.m, "feasible effort interval nonempty");
  } else {
    const double lo = std::max(0.0, (s.gamma0 - s.m / (1.0 + s.alpha)) / s.eta);
    require(lo < s.gamma0 / s.eta, "feasible effort interval nonempty");
  }
}

double unit_cost(const Scenario& s, double e) noexcept { return s.gamma0 - s.eta * e; }

double transfer_price(const Scenario& s, double e) {
  const double t = (1.0 + s.alpha) * unit_cost(s, e);
  // Rounding slack so the interval endpoint e_lo itself is admissible.
  if (t > s.m * (1.0 + 1e-12)) {
    fail(ErrorKind::ArmLengthViolation, "transfer price exceeds the retail price");
  }
  return t;
}

double effort_cost(const Scenario& s, double e) noexcept { return 0.5 * s.k * e * e; }

double retail_profit(const Scenario& s, double y, double e) {
  return s.m * s.demand.expected_sales(y) - transfer_price(s, e) * y;
}

EffortInterval feasible_effort_interval(const Scenario& s) {
  EffortInterval out;
  if (s.eta == 0.0) {
    if ((1.0 + s.alpha) * s.gamma0 >= s.m) {
      fail(ErrorKind::InfeasibleScenario, "constant transfer price is not below m");
    }
    out.lo = 0.0;
    out.bounded = false;
    return out;
  }
  const double zero_cost = s.gamma0 / s.eta;
  out.lo = std::max(0.0, (s.gamma0 - s.m / (1.0 + s.alpha)) / s.eta);
  out.hi = zero_cost - 1e-9 * zero_cost;
  if (!(out.lo < out.hi)) fail(ErrorKind::InfeasibleScenario, "empty feasible effort interval");
  return out;
}

double newsvendor_order(const Scenario& s, double e) {
  const double ratio = 1.0 - transfer_price(s, e) / s.m;
  const double floor = std::max(0.0, s.demand.support_lower());
  if (ratio <= 0.0) return floor;
  // Orders are nonnegative; the untruncated normal can put the fractile below 0.
  if (s.demand.cdf(0.0) >= ratio) return 0.0;
  return std::max(floor, s.demand.quantile(std::min(ratio, 1.0)));
}

double effort_revenue_weight(const Scenario& s) noexcept {
  return ((1.0 - s.tau) * (1.0 - s.beta) + (1.0 - s.tau0) * s.beta) * (1.0 + s.alpha) -
         (1.0 - s.tau0) * s.alpha;
}

}  // namespace taxchain
