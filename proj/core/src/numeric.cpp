#include "taxchain/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "taxchain/error.hpp"

namespace taxchain {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5) - 1) / 2

double finite_or_lowest(double v) {
  return std::isnan(v) ? -std::numeric_limits<double>::infinity() : v;
}

}  // namespace

ScalarMaximum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                 double tol, int max_iter) {
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = finite_or_lowest(f(c));
  double fd = finite_or_lowest(f(d));
  int iter = 0;
  while (b - a > tol) {
    if (++iter > max_iter) {
      fail(ErrorKind::NonConvergence, "golden-section search exceeded max_iter");
    }
    // On ties shrink toward the lower end.
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = finite_or_lowest(f(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = finite_or_lowest(f(d));
    }
  }
  ScalarMaximum out;
  out.x = 0.5 * (a + b);
  out.value = finite_or_lowest(f(out.x));
  out.iterations = iter;
  return out;
}

ScalarMaximum maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              int grid_points, double tol, int max_iter) {
  if (!(hi > lo)) {
    ScalarMaximum out;
    out.x = lo;
    out.value = f(lo);
    out.at_lower = out.at_upper = true;
    return out;
  }
  const int n = std::max(grid_points, 3);
  const double step = (hi - lo) / (n - 1);
  std::vector<double> xs(n);
  std::vector<double> vs(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = (i == n - 1) ? hi : lo + i * step;
    vs[i] = finite_or_lowest(f(xs[i]));
  }
  const double best = *std::max_element(vs.begin(), vs.end());
  if (!std::isfinite(best)) {
    fail(ErrorKind::InfeasibleScenario, "objective is not finite anywhere on the search interval");
  }

  // Local maxima of the grid that tie the best node within tol.
  const double tie = tol * std::max(1.0, std::abs(best));
  std::vector<int> candidates;
  for (int i = 0; i < n; ++i) {
    const bool left_ok = i == 0 || vs[i] >= vs[i - 1];
    const bool right_ok = i == n - 1 || vs[i] >= vs[i + 1];
    if (left_ok && right_ok && best - vs[i] <= tie) candidates.push_back(i);
    if (candidates.size() >= 8) break;
  }

  ScalarMaximum result;
  bool have = false;
  int total_iter = 0;
  for (int i : candidates) {
    const double a = xs[std::max(i - 1, 0)];
    const double b = xs[std::min(i + 1, n - 1)];
    ScalarMaximum local = golden_section_max(f, a, b, tol, max_iter);
    total_iter += local.iterations;
    if (i == 0 && vs[0] >= local.value) {
      local.x = lo;
      local.value = vs[0];
    }
    if (i == n - 1 && vs[n - 1] >= local.value) {
      local.x = hi;
      local.value = vs[n - 1];
    }
    if (!have || local.value > result.value ||
        (local.value == result.value && local.x < result.x)) {
      result = local;
      have = true;
    }
  }
  result.iterations = total_iter;
  result.at_lower = result.x == lo;
  result.at_upper = result.x == hi;
  return result;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

Bracket bisect_sign_change(const std::function<double(double)>& f, double lo, double hi,
                           double width, int max_iter) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return {lo, lo};
  if (fhi == 0.0) return {hi, hi};
  if ((flo > 0.0) == (fhi > 0.0)) {
    fail(ErrorKind::RootNotBracketed, "function has the same sign at both ends");
  }
  for (int i = 0; i < max_iter && hi - lo > width; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return {mid, mid};
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace taxchain
