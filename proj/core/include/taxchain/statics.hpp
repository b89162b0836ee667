#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taxchain/scenario.hpp"
#include "taxchain/solve.hpp"

namespace taxchain {

enum class Param { Tau0, Tau, Alpha, Beta, K, Eta, M, Gamma0, Reservation };
enum class Metric { Effort, Intensity, Order, HqProfit };

std::string_view to_string(Param p) noexcept;
std::string_view to_string(Metric m) noexcept;
Param parse_param(std::string_view name);
Metric parse_metric(std::string_view name);

double get_param(const Scenario& s, Param p) noexcept;
Scenario with_param(Scenario s, Param p, double value);
double metric_of(const Outcome& o, Metric m);

/// Central difference of a re-solved equilibrium quantity.
struct Sensitivity {
  double estimate = 0.0;
  double minus_value = 0.0;
  double plus_value = 0.0;
  double step = 0.0;
  bool boundary = false;  // either side landed on a boundary solution
};

/// Step h = rel_step * max(1, |param|); both sides are solved from scratch.
/// FeasibilityLoss if either perturbed solve fails.
Sensitivity sensitivity(const Scenario& s, Structure structure, Param param, Metric metric,
                        double rel_step = 1e-4);

/// Markup threshold beta / (1 - beta) separating the two effort responses to
/// the tax difference under C.
double alpha_hat(double beta);

struct ThresholdResult {
  double location = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::string metric;
  int left_sign = 0;
  int right_sign = 0;
};

/// Tax difference at which headquarters profit turns from decreasing to
/// increasing (or back). Scans 26 points of tau - tau0 over [0.01, tau - 0.01],
/// then bisects on the sign of the profit derivative down to width 1e-4.
/// NoTurningPoint / MultipleTurningPoints when the scan is not unimodal.
ThresholdResult dtau_turning_point(const Scenario& s, Structure structure);

enum class BoundaryStatus {
  Root,               // beta holds the crossing
  MarkupEverywhere,   // no crossing; markup derivative larger on the whole beta range
  RoyaltyEverywhere,  // no crossing; royalty derivative larger on the whole beta range
  Failed,             // a solve along the beta scan failed; see note
};

struct BoundaryPoint {
  double alpha = 0.0;
  std::optional<double> beta;  // set only for BoundaryStatus::Root
  BoundaryStatus status = BoundaryStatus::Failed;
  std::string note;
};

inline constexpr double kBoundaryBetaLo = 0.01;
inline constexpr double kBoundaryBetaHi = 0.95;

/// For each alpha, the royalty level where d pi_HQ / d alpha == d pi_HQ / d beta.
/// Below the curve the markup derivative is larger; above it the royalty one.
/// Points run in parallel over `jobs` threads; output order follows alpha_grid.
std::vector<BoundaryPoint> dominance_boundary(const Scenario& s, Structure structure,
                                              std::span<const double> alpha_grid, int jobs = 1);

/// Average share of the scanned beta range lying below the curve (markup
/// dominant). Gaps count as 0 or 1 by their status, failed points are skipped.
/// Returns NaN when no point is usable.
double markup_dominant_share(std::span<const BoundaryPoint> curve);

/// d pi_HQ / d alpha - d pi_HQ / d beta at the scenario's (alpha, beta).
double dominance_gap(const Scenario& s, Structure structure);

}  // namespace taxchain
