#include "taxchain/statics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "taxchain/error.hpp"
#include "taxchain/numeric.hpp"

namespace taxchain {

std::string_view to_string(Param p) noexcept {
  switch (p) {
    case Param::Tau0: return "tau0";
    case Param::Tau: return "tau";
    case Param::Alpha: return "alpha";
    case Param::Beta: return "beta";
    case Param::K: return "k";
    case Param::Eta: return "eta";
    case Param::M: return "m";
    case Param::Gamma0: return "gamma0";
    case Param::Reservation: return "reservation";
  }
  return "unknown";
}

std::string_view to_string(Metric m) noexcept {
  switch (m) {
    case Metric::Effort: return "e";
    case Metric::Intensity: return "b";
    case Metric::Order: return "y";
    case Metric::HqProfit: return "pi_hq";
  }
  return "unknown";
}

Param parse_param(std::string_view name) {
  for (Param p : {Param::Tau0, Param::Tau, Param::Alpha, Param::Beta, Param::K, Param::Eta,
                  Param::M, Param::Gamma0, Param::Reservation}) {
    if (name == to_string(p)) return p;
  }
  if (name == "a") return Param::Reservation;
  fail(ErrorKind::UsageError, "unknown parameter '" + std::string(name) + "'");
}

Metric parse_metric(std::string_view name) {
  for (Metric m : {Metric::Effort, Metric::Intensity, Metric::Order, Metric::HqProfit}) {
    if (name == to_string(m)) return m;
  }
  fail(ErrorKind::UsageError, "unknown metric '" + std::string(name) + "'");
}

double get_param(const Scenario& s, Param p) noexcept {
  switch (p) {
    case Param::Tau0: return s.tau0;
    case Param::Tau: return s.tau;
    case Param::Alpha: return s.alpha;
    case Param::Beta: return s.beta;
    case Param::K: return s.k;
    case Param::Eta: return s.eta;
    case Param::M: return s.m;
    case Param::Gamma0: return s.gamma0;
    case Param::Reservation: return s.reservation;
  }
  return 0.0;
}

Scenario with_param(Scenario s, Param p, double value) {
  switch (p) {
    case Param::Tau0: s.tau0 = value; break;
    case Param::Tau: s.tau = value; break;
    case Param::Alpha: s.alpha = value; break;
    case Param::Beta: s.beta = value; break;
    case Param::K: s.k = value; break;
    case Param::Eta: s.eta = value; break;
    case Param::M: s.m = value; break;
    case Param::Gamma0: s.gamma0 = value; break;
    case Param::Reservation: s.reservation = value; break;
  }
  return s;
}

double metric_of(const Outcome& o, Metric m) {
  switch (m) {
    case Metric::Effort: return o.e;
    case Metric::Intensity:
      if (!o.has_contract()) fail(ErrorKind::UsageError, "metric b is only defined for structure R");
      return o.b;
    case Metric::Order: return o.y;
    case Metric::HqProfit: return o.pi_hq;
  }
  return 0.0;
}

Sensitivity sensitivity(const Scenario& s, Structure structure, Param param, Metric metric,
                        double rel_step) {
  const double v = get_param(s, param);
  Sensitivity out;
  out.step = rel_step * std::max(1.0, std::abs(v));
  Outcome lo;
  Outcome hi;
  try {
    lo = solve(with_param(s, param, v - out.step), structure);
    hi = solve(with_param(s, param, v + out.step), structure);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::UsageError) throw;
    fail(ErrorKind::FeasibilityLoss, std::string("perturbed solve failed: ") + err.what());
  }
  out.minus_value = metric_of(lo, metric);
  out.plus_value = metric_of(hi, metric);
  out.estimate = (out.plus_value - out.minus_value) / (2.0 * out.step);
  out.boundary = lo.boundary || hi.boundary;
  return out;
}

double alpha_hat(double beta) { return beta / (1.0 - beta); }

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

ThresholdResult dtau_turning_point(const Scenario& s, Structure structure) {
  constexpr int kPoints = 26;
  const double first = 0.01;
  const double last = s.tau - 0.01;
  if (!(last > first)) fail(ErrorKind::NoTurningPoint, "tau leaves no room for a tax difference");
  auto gap_at = [&](int i) { return first + (last - first) * i / (kPoints - 1); };
  auto profit_at = [&](double dtau) {
    return solve(with_param(s, Param::Tau0, s.tau - dtau), structure).pi_hq;
  };

  std::vector<double> profit(kPoints);
  for (int i = 0; i < kPoints; ++i) profit[i] = profit_at(gap_at(i));

  // A turning point sits at node j when the differences around it change sign.
  std::vector<int> turns;
  int previous = 0;
  for (int i = 0; i + 1 < kPoints; ++i) {
    const int sg = sign_of(profit[i + 1] - profit[i]);
    if (sg == 0) continue;
    if (previous != 0 && sg != previous) turns.push_back(i);
    previous = sg;
  }
  if (turns.empty()) fail(ErrorKind::NoTurningPoint, "profit is monotone in the tax difference");
  if (turns.size() > 1) {
    fail(ErrorKind::MultipleTurningPoints,
         std::to_string(turns.size()) + " sign changes in profit differences");
  }

  // d pi / d dtau = -d pi / d tau0.
  auto slope = [&](double dtau) {
    const Scenario at = with_param(s, Param::Tau0, s.tau - dtau);
    return -sensitivity(at, structure, Param::Tau0, Metric::HqProfit).estimate;
  };
  const int j = turns.front();
  const double lo = gap_at(std::max(j - 1, 0));
  const double hi = gap_at(std::min(j + 1, kPoints - 1));
  const Bracket br = bisect_sign_change(slope, lo, hi, 1e-4);

  ThresholdResult out;
  out.lo = br.lo;
  out.hi = br.hi;
  out.location = 0.5 * (br.lo + br.hi);
  out.metric = "pi_hq";
  out.left_sign = sign_of(slope(br.lo));
  out.right_sign = sign_of(slope(br.hi));
  if (br.lo < br.hi && out.left_sign == out.right_sign) {
    fail(ErrorKind::NoTurningPoint, "refined bracket no longer straddles a sign change");
  }
  return out;
}

double dominance_gap(const Scenario& s, Structure structure) {
  return sensitivity(s, structure, Param::Alpha, Metric::HqProfit).estimate -
         sensitivity(s, structure, Param::Beta, Metric::HqProfit).estimate;
}

namespace {

BoundaryPoint boundary_point(const Scenario& base, Structure structure, double alpha) {
  constexpr int kNodes = 12;
  constexpr double kBetaLo = kBoundaryBetaLo;
  constexpr double kBetaHi = kBoundaryBetaHi;
  BoundaryPoint out;
  out.alpha = alpha;
  const Scenario s = with_param(base, Param::Alpha, alpha);
  auto gap = [&](double beta) { return dominance_gap(with_param(s, Param::Beta, beta), structure); };
  try {
    std::vector<double> betas(kNodes);
    std::vector<double> gaps(kNodes);
    for (int i = 0; i < kNodes; ++i) {
      betas[i] = kBetaLo + (kBetaHi - kBetaLo) * i / (kNodes - 1);
      gaps[i] = gap(betas[i]);
    }
    for (int i = 0; i + 1 < kNodes; ++i) {
      if (sign_of(gaps[i]) != sign_of(gaps[i + 1])) {
        const Bracket br = bisect_sign_change(gap, betas[i], betas[i + 1], 1e-4);
        out.beta = 0.5 * (br.lo + br.hi);
        out.status = BoundaryStatus::Root;
        if (i + 2 < kNodes) {
          for (int k = i + 1; k + 1 < kNodes; ++k) {
            if (sign_of(gaps[k]) != sign_of(gaps[k + 1])) out.note = "further crossings above beta";
          }
        }
        return out;
      }
    }
    if (gaps.front() > 0.0) {
      out.status = BoundaryStatus::MarkupEverywhere;
      out.note = "RootNotBracketed: markup dominates over the beta range";
    } else {
      out.status = BoundaryStatus::RoyaltyEverywhere;
      out.note = "RootNotBracketed: royalty dominates over the beta range";
    }
  } catch (const Error& err) {
    out.status = BoundaryStatus::Failed;
    out.note = err.what();
  }
  return out;
}

}  // namespace

double markup_dominant_share(std::span<const BoundaryPoint> curve) {
  double total = 0.0;
  int used = 0;
  for (const BoundaryPoint& p : curve) {
    switch (p.status) {
      case BoundaryStatus::Root:
        total += (*p.beta - kBoundaryBetaLo) / (kBoundaryBetaHi - kBoundaryBetaLo);
        break;
      case BoundaryStatus::MarkupEverywhere: total += 1.0; break;
      case BoundaryStatus::RoyaltyEverywhere: break;
      case BoundaryStatus::Failed: continue;
    }
    ++used;
  }
  return used == 0 ? std::numeric_limits<double>::quiet_NaN() : total / used;
}

std::vector<BoundaryPoint> dominance_boundary(const Scenario& s, Structure structure,
                                              std::span<const double> alpha_grid, int jobs) {
  std::vector<BoundaryPoint> out(alpha_grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < alpha_grid.size(); i = next++) {
      out[i] = boundary_point(s, structure, alpha_grid[i]);
    }
  };
  const int threads = std::clamp<int>(jobs, 1, static_cast<int>(std::max<std::size_t>(1, alpha_grid.size())));
  {
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  return out;
}

}  // namespace taxchain
