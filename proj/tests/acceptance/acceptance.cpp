// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "taxchain/config.hpp"
#include "taxchain/equilibrium_c.hpp"
#include "taxchain/equilibrium_r.hpp"
#include "taxchain/oracle.hpp"
#include "taxchain/statics.hpp"
#include "taxchain/sweep.hpp"

using namespace taxchain;

namespace {

struct Check {
  std::ostringstream detail;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [" << what << "]";
    }
  }
};

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void effort_anchors(Check& c) {
  const double cases[4][3] = {{0.1, 0.30, 4.56}, {0.1, 0.05, 4.96}, {0.8, 0.30, 4.54}, {0.8, 0.05, 4.25}};
  for (const auto& k : cases) {
    const double e = solve_c(taxfix::commissionaire_base(k[0], k[1])).e_star;
    c.detail << " e(" << k[0] << "," << k[1] << ")=" << fmt(e);
    c.expect(std::abs(e - k[2]) <= 0.05, "e* off by more than 0.05");
  }
}

void decision_anchors(Check& c) {
  struct Row {
    double alpha, tau0, b, e, tol_b, tol_e;
  };
  const Row rows[] = {{0.1, 0.30, 0.87, 6.7, 0.03, 0.2}, {0.1, 0.05, 0.70, 5.4, 0.03, 0.2},
                      {0.1, 0.10, 0.73, 5.5, 0.03, 0.2}, {0.3, 0.10, 0.59, 5.3, 0.03, 0.2},
                      {0.5, 0.10, 0.50, 5.1, 0.03, 0.2}};
  for (const auto& r : rows) {
    const auto eq = solve_r(taxfix::limited_risk_base(r.alpha, r.tau0));
    c.detail << " (a=" << r.alpha << ",dtau=" << fmt(0.35 - r.tau0, 2) << ") b=" << fmt(eq.b_star, 3)
             << " e=" << fmt(eq.e_star, 3);
    c.expect(std::abs(eq.b_star - r.b) <= r.tol_b, "b* out of tolerance");
    c.expect(std::abs(eq.e_star - r.e) <= r.tol_e, "e* out of tolerance");
  }
}

void profit_anchors(Check& c) {
  const double rows[5][3] = {{0.1, 0.3, 8123}, {0.3, 0.3, 8241}, {0.5, 0.3, 8351.5}, {0.1, 0.5, 9014.6}, {0.1, 0.7, 9912}};
  for (const auto& r : rows) {
    const double pi = solve_r(taxfix::limited_risk_base(r[0], 0.10, r[1])).pi_hq;
    c.detail << " pi(" << r[0] << "," << r[1] << ")=" << fmt(pi, 1);
    c.expect(std::abs(pi - r[2]) <= 0.005 * r[2], "profit off by more than 0.5%");
  }
  // The independent oracle reaches the same 9014.6 through the wage-based accounting.
  const double oracle = oracle_solve_r(taxfix::limited_risk_base(0.1, 0.10, 0.5), 500, 500).pi_hq;
  c.detail << " oracle(0.1,0.5)=" << fmt(oracle, 1);
  c.expect(std::abs(oracle - 9014.6) <= 0.005 * 9014.6, "oracle disagrees with 9014.6");
}

void turning_point(Check& c) {
  const auto t = dtau_turning_point(parse_config(taxfix::preset("fig7.ini")), Structure::LimitedRisk);
  c.detail << " dtau#=" << fmt(t.location) << " bracket=[" << fmt(t.lo, 5) << "," << fmt(t.hi, 5) << "]";
  c.expect(std::abs(t.location - 0.18) <= 0.02, "turning point outside 0.18 +- 0.02");
}

void monotonicity(Check& c) {
  const std::vector<double> dtaus = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
  auto pi_c = [](double dtau, double alpha, double beta) {
    Scenario s = taxfix::commissionaire_base(alpha, 0.35 - dtau);
    s.beta = beta;
    return solve_c(s).pi_hq;
  };
  bool profit_monotone = true;
  for (double alpha : {0.1, 0.3, 0.5}) {
    for (double beta : {0.3, 0.5, 0.7}) {
      for (std::size_t i = 1; i < dtaus.size(); ++i) {
        profit_monotone = profit_monotone && pi_c(dtaus[i], alpha, beta) >= pi_c(dtaus[i - 1], alpha, beta);
      }
    }
  }
  for (double d : dtaus) {
    profit_monotone = profit_monotone && pi_c(d, 0.3, 0.3) >= pi_c(d, 0.1, 0.3) && pi_c(d, 0.5, 0.3) >= pi_c(d, 0.3, 0.3);
    profit_monotone = profit_monotone && pi_c(d, 0.1, 0.5) >= pi_c(d, 0.1, 0.3) && pi_c(d, 0.1, 0.7) >= pi_c(d, 0.1, 0.5);
  }
  c.expect(profit_monotone, "C profit not nondecreasing in dtau/alpha/beta");

  bool decreasing = true;
  EquilibriumR prev;
  for (std::size_t i = 0; i < dtaus.size(); ++i) {
    const auto eq = solve_r(taxfix::limited_risk_base(0.1, 0.35 - dtaus[i]));
    if (i > 0) decreasing = decreasing && eq.b_star < prev.b_star && eq.e_star < prev.e_star;
    prev = eq;
  }
  c.expect(decreasing, "R b*, e* not strictly decreasing in dtau");

  auto pi_r = [](double alpha, double beta) { return solve_r(taxfix::limited_risk_base(alpha, 0.10, beta)).pi_hq; };
  c.expect(pi_r(0.1, 0.3) < pi_r(0.3, 0.3) && pi_r(0.3, 0.3) < pi_r(0.5, 0.3), "R profit not increasing in alpha");
  c.expect(pi_r(0.1, 0.3) < pi_r(0.1, 0.5) && pi_r(0.1, 0.5) < pi_r(0.1, 0.7), "R profit not increasing in beta");

  const double up = solve_c(taxfix::commissionaire_base(0.1, 0.05)).e_star - solve_c(taxfix::commissionaire_base(0.1, 0.30)).e_star;
  const double down = solve_c(taxfix::commissionaire_base(0.8, 0.05)).e_star - solve_c(taxfix::commissionaire_base(0.8, 0.30)).e_star;
  c.detail << " de(alpha=0.1)=" << fmt(up) << " de(alpha=0.8)=" << fmt(down);
  c.expect(up > 0 && down < 0, "effort response does not flip sign between alpha 0.1 and 0.8");
}

void oracle_equivalence(Check& c) {
  int failures = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Scenario s = random_feasible_scenario(seed);
    for (Structure st : {Structure::Commissionaire, Structure::LimitedRisk}) {
      const auto rep = check_oracle_equivalence(s, st);
      if (!rep.ok) {
        ++failures;
        std::printf("  seed %llu %s: %s\n", static_cast<unsigned long long>(seed),
                    std::string(to_string(st)).c_str(), rep.detail.c_str());
      }
    }
  }
  c.detail << " 200 comparisons, " << failures << " mismatches";
  c.expect(failures == 0, "solver/oracle mismatch");
}

void invariances(Check& c) {
  double worst = 0.0;
  for (Structure st : {Structure::Commissionaire, Structure::LimitedRisk}) {
    Scenario s = st == Structure::Commissionaire ? taxfix::commissionaire_base() : taxfix::limited_risk_base();
    s.tau0 = s.tau;
    for (double beta : {0.3, 0.5, 0.7, 0.9}) {
      Scenario a = s;
      a.beta = 0.0;
      Scenario b = s;
      b.beta = beta;
      const double pa = solve(a, st).pi_hq;
      const double pb = solve(b, st).pi_hq;
      worst = std::max(worst, std::abs(pa - pb) / std::abs(pa));
    }
  }
  c.detail << " beta spread=" << worst;
  c.expect(worst <= 1e-9, "profit depends on beta at equal rates");

  double foc = 0.0;
  for (double alpha : {0.1, 0.8}) {
    for (double tau0 : {0.30, 0.05}) {
      const auto eq = solve_c(taxfix::commissionaire_base(alpha, tau0));
      if (!eq.boundary()) foc = std::max(foc, eq.foc_residual);
    }
  }
  double formula = 0.0;
  for (double alpha : {0.1, 0.3, 0.5}) {
    for (double tau0 : {0.30, 0.10, 0.05}) {
      const auto eq = solve_r(taxfix::limited_risk_base(alpha, tau0));
      if (!eq.boundary_b) formula = std::max(formula, std::abs(eq.lemma2_b_residual) / eq.b_star);
    }
  }
  c.detail << " effort FOC=" << foc << " intensity formula=" << formula;
  c.expect(foc < 1e-3, "effort FOC residual too large");
  c.expect(formula < 1e-3, "intensity formula residual too large");
}

void dominance(Check& c) {
  const std::vector<double> alphas = linear_grid(0.05, 0.45, 9);
  struct Arm {
    const char* preset;
    Structure st;
    double high_tau0;
    double low_tau0;
  };
  const Arm arms[] = {{"fig8c.ini", Structure::Commissionaire, 0.21, 0.19},
                      {"fig8r.ini", Structure::LimitedRisk, 0.30, 0.10}};
  for (const auto& arm : arms) {
    const Scenario base = parse_config(taxfix::preset(arm.preset));
    const std::string tag(to_string(arm.st));
    int roots = 0;
    for (const auto& p : dominance_boundary(base, arm.st, alphas, 4)) roots += p.status == BoundaryStatus::Root;
    c.detail << " " << tag << ": roots at tau0=" << fmt(base.tau0, 2) << " " << roots << "/" << alphas.size();
    c.expect(roots >= 3, tag + " boundary missing");

    const auto high = dominance_boundary(with_param(base, Param::Tau0, arm.high_tau0), arm.st, alphas, 4);
    const auto low = dominance_boundary(with_param(base, Param::Tau0, arm.low_tau0), arm.st, alphas, 4);
    const double share_high = markup_dominant_share(high);
    const double share_low = markup_dominant_share(low);
    c.detail << ", markup share " << fmt(share_high, 3) << " (tau0=" << fmt(arm.high_tau0, 2) << ") -> "
             << fmt(share_low, 3) << " (tau0=" << fmt(arm.low_tau0, 2) << ")";
    if (arm.st == Structure::Commissionaire) {
      c.expect(share_low < share_high, "C: lowering tau0 does not grow the royalty-dominant region");
    } else {
      c.expect(share_low > share_high, "R: lowering tau0 does not grow the markup-dominant region");
    }
  }
}

void solve_time(Check& c) {
  double worst = 0.0;
  // Best of three runs per solve, so a busy machine does not count against the solver.
  auto time_it = [&](const std::function<void()>& fn) {
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      fn();
      best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    worst = std::max(worst, best);
  };
  for (double tau0 : {0.30, 0.20, 0.10, 0.05}) {
    time_it([&] { solve_c(taxfix::commissionaire_base(0.1, tau0)); });
    time_it([&] { solve_r(taxfix::limited_risk_base(0.1, tau0)); });
  }
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Scenario s = random_feasible_scenario(seed);
    time_it([&] { solve_c(s); });
    time_it([&] { solve_r(s); });
  }
  c.detail << " slowest solve " << fmt(worst, 2) << " ms";
  c.expect(worst < 10.0, "a single solve took 10 ms or more");
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Check&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"1 commissionaire effort anchors", effort_anchors},
      {"2 limited-risk decision anchors", decision_anchors},
      {"3 limited-risk profit anchors", profit_anchors},
      {"4 tax-difference turning point", turning_point},
      {"5 monotonicity", monotonicity},
      {"6 oracle equivalence", oracle_equivalence},
      {"7 algebraic invariances", invariances},
      {"8 dominance boundary shift", dominance},
      {"runtime single solve under 10 ms", solve_time},
  };
  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.ok = false;
      c.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s:%s (%.2fs)\n", c.ok ? "PASS" : "FAIL", cr.name, c.detail.str().c_str(), secs);
    std::fflush(stdout);
    failed += c.ok ? 0 : 1;
  }
  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%s total runtime %.1fs (budget 60s)\n", total < 60.0 ? "PASS" : "FAIL", total);
  if (total >= 60.0) ++failed;
  std::printf("%d of %zu checks failed\n", failed, criteria.size() + 1);
  return failed == 0 ? 0 : 1;
}
