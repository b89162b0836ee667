#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <string>

#include "cli/commands.hpp"
#include "taxchain/equilibrium_c.hpp"
#include "taxchain/equilibrium_r.hpp"
#include "taxchain/oracle.hpp"
#include "taxchain/solve.hpp"

namespace taxchain::cli {

namespace {

Scenario reference_scenario(Structure structure) {
  Scenario s;
  s.demand = DemandDistribution::normal(220.0, 30.0);
  s.m = 100.0;
  s.gamma0 = 20.0;
  s.eta = 1.0;
  s.tau = 0.35;
  s.alpha = 0.1;
  s.beta = 0.3;
  if (structure == Structure::Commissionaire) {
    s.k = 56.0;
    s.tau0 = 0.30;
  } else {
    s.k = 36.0;
    s.tau0 = 0.10;
    s.reservation = 5100.0;
  }
  return s;
}

struct Tally {
  int checked = 0;
  int failed = 0;
  std::string first_failure;

  void record(bool ok, const std::string& what) {
    ++checked;
    if (!ok) {
      if (failed == 0) first_failure = what;
      ++failed;
    }
  }
};

bool close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

bool run_verify(const VerifyOptions& options, std::ostream& out) {
  bool all_ok = true;
  auto report = [&](const std::string& name, const Tally& t) {
    const bool ok = t.failed == 0 && t.checked > 0;
    all_ok = all_ok && ok;
    if (ok && options.quiet) return;
    out << (ok ? "PASS " : "FAIL ") << name << " (" << t.checked - t.failed << '/' << t.checked
        << ')';
    if (!ok && !t.first_failure.empty()) out << ": " << t.first_failure;
    out << '\n';
  };
  auto guarded = [](Tally& t, const std::string& label, const std::function<bool()>& body) {
    try {
      t.record(body(), label);
    } catch (const std::exception& e) {
      t.record(false, label + ": " + e.what());
    }
  };

  for (Structure st : {Structure::Commissionaire, Structure::LimitedRisk}) {
    const std::string tag(to_string(st));
    Tally oracle;
    Tally stationarity;
    for (int i = 0; i < options.count; ++i) {
      const auto seed = options.seed + static_cast<unsigned long long>(i);
      const std::string label = "seed " + std::to_string(seed);
      Scenario s;
      try {
        s = random_feasible_scenario(seed);
      } catch (const std::exception& e) {
        oracle.record(false, label + ": " + e.what());
        continue;
      }
      try {
        const EquivalenceReport rep = check_oracle_equivalence(s, st);
        oracle.record(rep.ok, label + ": " + rep.detail);
      } catch (const std::exception& e) {
        oracle.record(false, label + ": " + e.what());
      }
      guarded(stationarity, label, [&] {
        if (st == Structure::Commissionaire) {
          const EquilibriumC eq = solve_c(s);
          return eq.boundary() || (eq.foc_residual < 1e-6 && eq.second_order_ok);
        }
        const EquilibriumR eq = solve_r(s);
        const bool participation = close(eq.pi_pc, s.reservation, 1e-9);
        const bool intensity = eq.boundary_b || eq.effort_clamped || std::abs(eq.lemma2_b_residual) < 1e-4;
        return participation && intensity;
      });
    }
    report("oracle_equivalence_" + tag, oracle);
    report("first_order_conditions_" + tag, stationarity);

    Tally invariance;
    Scenario flat = reference_scenario(st);
    flat.tau0 = flat.tau;
    for (double beta : {0.1, 0.5, 0.9}) {
      guarded(invariance, "beta " + std::to_string(beta), [&] {
        Scenario a = flat;
        a.beta = 0.0;
        Scenario b = flat;
        b.beta = beta;
        const auto oa = solve(a, st);
        const auto ob = solve(b, st);
        return close(oa.pi_hq, ob.pi_hq, 1e-9) && close(oa.e, ob.e, 1e-6);
      });
    }
    report("royalty_invariance_at_equal_rates_" + tag, invariance);
  }

  Tally quantiles;
  for (int i = 0; i < options.count; ++i) {
    const auto seed = options.seed + static_cast<unsigned long long>(i);
    guarded(quantiles, "seed " + std::to_string(seed), [&] {
      const DemandDistribution d = random_feasible_scenario(seed).demand;
      for (double p : {0.01, 0.1, 0.5, 0.9, 0.99}) {
        if (std::abs(d.cdf(d.quantile(p)) - p) > 1e-10) return false;
      }
      return true;
    });
  }
  report("demand_quantile_round_trip", quantiles);

  out << (all_ok ? "verify: all checks passed" : "verify: FAILED") << '\n';
  return all_ok;
}

}  // namespace taxchain::cli
