#include "taxchain/demand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "taxchain/error.hpp"
#include "taxchain/numeric.hpp"

namespace taxchain {

namespace stdnormal {

double pdf(double z) noexcept {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

double cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double survival(double z) noexcept { return 0.5 * std::erfc(z / std::numbers::sqrt2); }

namespace {

// Acklam's rational approximation of the lower half, relative error ~1.2e-9.
double acklam_lower(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double quantile(double p) noexcept {
  // Work in the lower half so the Newton correction is computed against the
  // smaller tail probability.
  if (p > 0.5) return -quantile(1.0 - p);
  double z = acklam_lower(p);
  const double density = pdf(z);
  if (density > 0.0) z -= (cdf(z) - p) / density;
  return z;
}

}  // namespace stdnormal

std::string_view to_string(DemandKind kind) noexcept {
  switch (kind) {
    case DemandKind::Normal: return "normal";
    case DemandKind::Uniform: return "uniform";
    case DemandKind::Exponential: return "exponential";
  }
  return "unknown";
}

DemandDistribution DemandDistribution::normal(double mean, double stddev) {
  if (!std::isfinite(mean) || !std::isfinite(stddev) || !(stddev > 0.0)) {
    fail(ErrorKind::InvalidDistribution, "normal demand requires finite mean and sigma > 0");
  }
  return {DemandKind::Normal, mean, stddev};
}

DemandDistribution DemandDistribution::uniform(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    fail(ErrorKind::InvalidDistribution, "uniform demand requires finite lo < hi");
  }
  if (lo < 0.0) fail(ErrorKind::InvalidDistribution, "uniform demand requires lo >= 0");
  return {DemandKind::Uniform, lo, hi};
}

DemandDistribution DemandDistribution::exponential(double rate) {
  if (!std::isfinite(rate) || !(rate > 0.0)) {
    fail(ErrorKind::InvalidDistribution, "exponential demand requires rate > 0");
  }
  return {DemandKind::Exponential, rate, 0.0};
}

double DemandDistribution::mean() const noexcept {
  switch (kind_) {
    case DemandKind::Normal: return p1_;
    case DemandKind::Uniform: return 0.5 * (p1_ + p2_);
    case DemandKind::Exponential: return 1.0 / p1_;
  }
  return 0.0;
}

double DemandDistribution::support_lower() const noexcept {
  switch (kind_) {
    case DemandKind::Normal: return -std::numeric_limits<double>::infinity();
    case DemandKind::Uniform: return p1_;
    case DemandKind::Exponential: return 0.0;
  }
  return 0.0;
}

double DemandDistribution::support_upper() const noexcept {
  switch (kind_) {
    case DemandKind::Normal: return std::numeric_limits<double>::infinity();
    case DemandKind::Uniform: return p2_;
    case DemandKind::Exponential: return std::numeric_limits<double>::infinity();
  }
  return 0.0;
}

double DemandDistribution::pdf(double d) const noexcept {
  switch (kind_) {
    case DemandKind::Normal: return stdnormal::pdf((d - p1_) / p2_) / p2_;
    case DemandKind::Uniform: return (d < p1_ || d > p2_) ? 0.0 : 1.0 / (p2_ - p1_);
    case DemandKind::Exponential: return d < 0.0 ? 0.0 : p1_ * std::exp(-p1_ * d);
  }
  return 0.0;
}

double DemandDistribution::cdf(double d) const noexcept {
  switch (kind_) {
    case DemandKind::Normal: return stdnormal::cdf((d - p1_) / p2_);
    case DemandKind::Uniform:
      if (d <= p1_) return 0.0;
      if (d >= p2_) return 1.0;
      return (d - p1_) / (p2_ - p1_);
    case DemandKind::Exponential: return d <= 0.0 ? 0.0 : -std::expm1(-p1_ * d);
  }
  return 0.0;
}

double DemandDistribution::survival(double d) const noexcept {
  switch (kind_) {
    case DemandKind::Normal: return stdnormal::survival((d - p1_) / p2_);
    case DemandKind::Uniform:
      if (d <= p1_) return 1.0;
      if (d >= p2_) return 0.0;
      return (p2_ - d) / (p2_ - p1_);
    case DemandKind::Exponential: return d <= 0.0 ? 1.0 : std::exp(-p1_ * d);
  }
  return 0.0;
}

double DemandDistribution::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    fail(ErrorKind::InvalidProbability, "probability must lie in [0, 1]");
  }
  switch (kind_) {
    case DemandKind::Normal:
      if (p == 0.0 || p == 1.0) {
        fail(ErrorKind::NormalUnboundedQuantile, "normal quantile at p in {0, 1} is infinite");
      }
      return p1_ + p2_ * stdnormal::quantile(p);
    case DemandKind::Uniform: return p1_ + p * (p2_ - p1_);
    case DemandKind::Exponential:
      if (p == 1.0) return std::numeric_limits<double>::infinity();
      return -std::log1p(-p) / p1_;
  }
  return 0.0;
}

double DemandDistribution::gfr(double y) const {
  const double tail = survival(y);
  if (tail < 1e-12) fail(ErrorKind::TailDegenerate, "1 - F(y) below 1e-12");
  return y * pdf(y) / tail;
}

double DemandDistribution::expected_sales(double y) const {
  if (!(y >= 0.0)) fail(ErrorKind::NegativeOrder, "order quantity must be nonnegative");
  switch (kind_) {
    case DemandKind::Normal: {
      const double z = (y - p1_) / p2_;
      // Lower and upper branches of the same loss-function identity; each
      // avoids cancellation on its side of the mean.
      if (z < 0.0) return y - p2_ * (z * stdnormal::cdf(z) + stdnormal::pdf(z));
      return p1_ - p2_ * (stdnormal::pdf(z) - z * stdnormal::survival(z));
    }
    case DemandKind::Uniform: {
      const double lo = p1_;
      const double hi = p2_;
      if (y <= lo) return y;
      if (y >= hi) return 0.5 * (lo + hi);
      const double w = hi - lo;
      return (y * y - lo * lo) / (2.0 * w) + y * (hi - y) / w;
    }
    case DemandKind::Exponential: return -std::expm1(-p1_ * y) / p1_;
  }
  return 0.0;
}

double DemandDistribution::expected_sales_quadrature(double y, double abs_tol) const {
  if (!(y >= 0.0)) fail(ErrorKind::NegativeOrder, "order quantity must be nonnegative");
  // E[min(D, y)] = base + int_base^y (1 - F(t)) dt when P(D < base) is nil.
  double base = 0.0;
  if (kind_ == DemandKind::Normal) base = std::min(0.0, p1_ - 12.0 * p2_);
  if (y <= base) return y;
  auto tail = [this](double t) { return survival(t); };
  // Split at the kinks of the uniform survival so Simpson sees smooth pieces.
  if (kind_ == DemandKind::Uniform) {
    double total = 0.0;
    double from = base;
    for (double knot : {p1_, p2_}) {
      if (knot > from && knot < y) {
        total += adaptive_simpson(tail, from, knot, abs_tol * 0.5);
        from = knot;
      }
    }
    return base + total + adaptive_simpson(tail, from, y, abs_tol * 0.5);
  }
  return base + adaptive_simpson(tail, base, y, abs_tol);
}

std::string DemandDistribution::describe() const {
  std::ostringstream out;
  out.precision(10);
  out << to_string(kind_) << '(';
  if (kind_ == DemandKind::Exponential) {
    out << "rate=" << p1_;
  } else if (kind_ == DemandKind::Normal) {
    out << "mu=" << p1_ << ", sigma=" << p2_;
  } else {
    out << "lo=" << p1_ << ", hi=" << p2_;
  }
  out << ')';
  return out.str();
}

}  // namespace taxchain
