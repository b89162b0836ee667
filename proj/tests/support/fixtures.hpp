#pragma once

#include <cmath>
#include <string>

#include "taxchain/scenario.hpp"

namespace taxfix {

using taxchain::DemandDistribution;
using taxchain::Scenario;

// Effort-anchor market, commissionaire structure.
inline Scenario commissionaire_base(double alpha = 0.1, double tau0 = 0.30) {
  Scenario s;
  s.demand = DemandDistribution::normal(220.0, 30.0);
  s.m = 100.0;
  s.gamma0 = 20.0;
  s.eta = 1.0;
  s.k = 56.0;
  s.tau = 0.35;
  s.tau0 = tau0;
  s.alpha = alpha;
  s.beta = 0.3;
  return s;
}

// Limited-risk reproduction market.
inline Scenario limited_risk_base(double alpha = 0.1, double tau0 = 0.10, double beta = 0.3) {
  Scenario s = commissionaire_base(alpha, tau0);
  s.k = 36.0;
  s.beta = beta;
  s.reservation = 5100.0;
  return s;
}

inline std::string preset(const char* name) { return std::string(TAXCHAIN_PRESET_DIR) + "/" + name; }

// Gaussian cumulative from the Taylor series of erf (converges everywhere;
// fine for |z| < 8 in double). Independent of the library's erfc route.
inline double series_normal_cdf(double z) {
  const double x = z / std::sqrt(2.0);
  double term = x;
  double sum = x;
  for (int n = 1; n < 400; ++n) {
    term *= -x * x / n;
    const double add = term / (2 * n + 1);
    sum += add;
    if (std::abs(add) < 1e-18 * std::abs(sum)) break;
  }
  return 0.5 + sum / std::sqrt(M_PI);
}

inline double bisect_normal_quantile(double mu, double sigma, double p) {
  double lo = -8.0;
  double hi = 8.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (series_normal_cdf(mid) < p ? lo : hi) = mid;
  }
  return mu + sigma * 0.5 * (lo + hi);
}

inline bool rel_close(double a, double b, double rel) {
  const double scale = std::fmax(1.0, std::fmax(std::abs(a), std::abs(b)));
  return std::abs(a - b) <= rel * scale;
}

}  // namespace taxfix
