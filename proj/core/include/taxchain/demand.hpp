#pragma once

#include <string>
#include <string_view>

namespace taxchain {

enum class DemandKind { Normal, Uniform, Exponential };

std::string_view to_string(DemandKind kind) noexcept;

/// Continuous demand distribution with the increasing generalized failure
/// rate property. Immutable value; every member is pure.
///
/// The normal family is used untruncated, so it carries a (tiny) mass below
/// zero. Expected sales are computed for the untruncated variable.
class DemandDistribution {
 public:
  static DemandDistribution normal(double mean, double stddev);
  static DemandDistribution uniform(double lo, double hi);
  static DemandDistribution exponential(double rate);

  DemandKind kind() const noexcept { return kind_; }

  // Raw parameters: (mean, stddev), (lo, hi) or (rate, unused).
  double first() const noexcept { return p1_; }
  double second() const noexcept { return p2_; }

  double mean() const noexcept;
  double support_lower() const noexcept;
  double support_upper() const noexcept;

  double pdf(double d) const noexcept;
  double cdf(double d) const noexcept;
  double survival(double d) const noexcept;

  /// Inverse of cdf. p in {0, 1} returns the support bound, except for the
  /// normal family where the bound is infinite and the call fails.
  double quantile(double p) const;

  /// g(y) = y f(y) / (1 - F(y)).
  double gfr(double y) const;

  /// E[min(D, y)] from the closed form of the family.
  double expected_sales(double y) const;

  /// E[min(D, y)] by adaptive Simpson on the survival function. Used as a
  /// cross-check of the closed forms.
  double expected_sales_quadrature(double y, double abs_tol = 1e-9) const;

  std::string describe() const;

  friend bool operator==(const DemandDistribution&, const DemandDistribution&) = default;

 private:
  DemandDistribution(DemandKind kind, double p1, double p2) : kind_(kind), p1_(p1), p2_(p2) {}

  DemandKind kind_;
  double p1_;
  double p2_;
};

namespace stdnormal {

double pdf(double z) noexcept;
double cdf(double z) noexcept;
double survival(double z) noexcept;
/// Rational approximation refined by one Newton step. Requires 0 < p < 1.
double quantile(double p) noexcept;

}  // namespace stdnormal

}  // namespace taxchain
