#include "taxchain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "taxchain/config.hpp"
#include "taxchain/equilibrium_c.hpp"
#include "taxchain/equilibrium_r.hpp"
#include "taxchain/error.hpp"
#include <sstream>

namespace taxchain {

namespace {

struct Grid {
  double lo;
  double hi;
  int n;
  double at(int i) const { return i == n - 1 ? hi : lo + (hi - lo) * i / (n - 1); }
  double step() const { return (hi - lo) / (n - 1); }
};

Grid effort_grid(const Scenario& s, int n) {
  validate(s);
  if (s.eta == 0.0) {
    if ((1.0 + s.alpha) * s.gamma0 >= s.m) fail(ErrorKind::InfeasibleScenario, "T >= m at eta = 0");
    return {0.0, 1.0, n};
  }
  const double lo = std::max(0.0, (s.gamma0 - s.m / (1.0 + s.alpha)) / s.eta);
  const double hi = (s.gamma0 / s.eta) * (1.0 - 1e-9);
  if (!(lo < hi)) fail(ErrorKind::InfeasibleScenario, "empty effort range");
  return {lo, hi, n};
}

// Straight-line chain evaluation at effort e: order, retail profit, unit cost.
struct Chain {
  double gamma;
  double y;
  double pi_r;
};

Chain chain_at(const Scenario& s, double e) {
  Chain c;
  c.gamma = s.gamma0 - s.eta * e;
  const double price = (1.0 + s.alpha) * c.gamma;
  const double fractile = 1.0 - price / s.m;
  const auto& d = s.demand;
  if (fractile <= 0.0 || d.cdf(0.0) >= fractile) {
    c.y = std::max(0.0, d.support_lower());
  } else {
    c.y = std::max({0.0, d.support_lower(), d.quantile(std::min(fractile, 1.0))});
  }
  c.pi_r = s.m * d.expected_sales(c.y) - price * c.y;
  return c;
}

double hq_c(const Scenario& s, double e, const Chain& c) {
  return (1.0 - s.tau) * ((1.0 - s.beta) * c.pi_r - 0.5 * s.k * e * e) +
         (1.0 - s.tau0) * (s.beta * c.pi_r - s.reservation + s.alpha * c.gamma * c.y);
}

// Headquarters profit with the fixed wage W = a - b pi_R + k e^2 / 2 that makes
// participation bind, paid out of the low-tax bracket together with the bonus.
double hq_r(const Scenario& s, double b, double e, const Chain& c) {
  const double fixed_wage = s.reservation - b * c.pi_r + 0.5 * s.k * e * e;
  return (1.0 - s.tau) * (1.0 - s.beta) * c.pi_r +
         (1.0 - s.tau0) * (s.beta * c.pi_r - fixed_wage - b * c.pi_r + s.alpha * c.gamma * c.y);
}

}  // namespace

OracleC oracle_solve_c(const Scenario& s, int e_grid_size) {
  if (e_grid_size < 1000) fail(ErrorKind::UsageError, "oracle_solve_c needs >= 1000 grid points");
  const Grid grid = effort_grid(s, e_grid_size);
  OracleC best;
  best.e_step = grid.step();
  bool have = false;
  for (int i = 0; i < grid.n; ++i) {
    const double e = grid.at(i);
    const Chain c = chain_at(s, e);
    const double v = hq_c(s, e, c);
    if (!have || v > best.pi_hq) {
      best.e = e;
      best.y = c.y;
      best.pi_hq = v;
      have = true;
    }
  }
  return best;
}

double oracle_agent_effort(const Scenario& s, double b, int e_grid_size) {
  const Grid grid = effort_grid(s, e_grid_size);
  double best_e = grid.lo;
  double best_v = -INFINITY;
  for (int i = 0; i < grid.n; ++i) {
    const double e = grid.at(i);
    const double v = b * chain_at(s, e).pi_r - 0.5 * s.k * e * e;
    if (v > best_v) {
      best_v = v;
      best_e = e;
    }
  }
  return best_e;
}

OracleR oracle_solve_r(const Scenario& s, int b_grid_size, int e_grid_size) {
  if (b_grid_size < 500 || e_grid_size < 500) {
    fail(ErrorKind::UsageError, "oracle_solve_r needs >= 500 points per grid");
  }
  const Grid grid = effort_grid(s, e_grid_size);
  // Retail profit along the effort grid does not depend on b.
  std::vector<double> retail(grid.n);
  for (int i = 0; i < grid.n; ++i) retail[i] = chain_at(s, grid.at(i)).pi_r;

  OracleR best;
  best.b_step = 1.0 / b_grid_size;
  best.e_step = grid.step();
  bool have = false;
  for (int j = 0; j < b_grid_size; ++j) {
    const double b = static_cast<double>(j) / b_grid_size;
    auto payoff = [&](int i) {
      const double e = grid.at(i);
      return b * retail[i] - 0.5 * s.k * e * e;
    };
    int arg = 0;
    double top = payoff(0);
    for (int i = 1; i < grid.n; ++i) {
      const double v = payoff(i);
      if (v > top) {
        top = v;
        arg = i;
      }
    }
    double e = grid.at(arg);
    if (arg > 0 && arg < grid.n - 1) {
      const double left = payoff(arg - 1);
      const double right = payoff(arg + 1);
      const double curvature = left - 2.0 * top + right;
      if (curvature < 0.0) e += 0.5 * grid.step() * (left - right) / curvature;
    }
    const Chain c = chain_at(s, e);
    const double v = hq_r(s, b, e, c);
    if (!have || v > best.pi_hq) {
      best.b = b;
      best.e = e;
      best.y = c.y;
      best.pi_hq = v;
      have = true;
    }
  }
  return best;
}

EquivalenceReport check_oracle_equivalence(const Scenario& s, Structure structure) {
  EquivalenceReport report;
  std::ostringstream detail;
  detail.precision(8);
  try {
    if (structure == Structure::Commissionaire) {
      const EquilibriumC eq = solve_c(s);
      const OracleC ref = oracle_solve_c(s, 2000);
      report.ok = std::abs(eq.e_star - ref.e) <= ref.e_step;
      detail << "C solver e=" << eq.e_star << " oracle e=" << ref.e << " step=" << ref.e_step;
    } else {
      const EquilibriumR eq = solve_r(s);
      const OracleR ref = oracle_solve_r(s, 500, 500);
      report.ok = std::abs(eq.b_star - ref.b) <= ref.b_step && std::abs(eq.e_star - ref.e) <= ref.e_step;
      detail << "R solver b=" << eq.b_star << " e=" << eq.e_star << " oracle b=" << ref.b
             << " e=" << ref.e << " steps=(" << ref.b_step << ", " << ref.e_step << ")";
    }
  } catch (const Error& err) {
    report.ok = false;
    detail << "error: " << err.what();
  }
  if (!report.ok) detail << "\nscenario:\n" << to_config_text(s);
  report.detail = detail.str();
  return report;
}

Scenario random_feasible_scenario(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&rng](double lo, double hi) {
    return lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
  };
  Scenario s;
  const double family = draw(0.0, 1.0);
  if (family < 0.5) {
    const double mu = draw(150.0, 300.0);
    s.demand = DemandDistribution::normal(mu, mu * draw(0.08, 0.2));
  } else if (family < 0.8) {
    const double lo = draw(0.0, 50.0);
    s.demand = DemandDistribution::uniform(lo, lo + draw(200.0, 500.0));
  } else {
    s.demand = DemandDistribution::exponential(1.0 / draw(100.0, 300.0));
  }
  s.m = draw(60.0, 150.0);
  s.gamma0 = s.m * draw(0.1, 0.35);
  s.alpha = draw(0.0, std::min(0.8, 0.8 * s.m / s.gamma0 - 1.0));
  s.beta = draw(0.0, 0.8);
  s.tau = draw(0.2, 0.45);
  s.tau0 = draw(0.0, s.tau);
  s.reservation = draw(0.0, 3000.0);
  s.eta = draw(0.3, 1.5);
  // Keep the largest plausible effort below half the zero-cost effort.
  const double y_high = s.demand.quantile(0.99);
  s.k = draw(2.0, 4.0) * (1.0 + s.alpha) * s.eta * s.eta * y_high / s.gamma0;
  return s;
}

}  // namespace taxchain
