#pragma once

#include <functional>

namespace taxchain {

struct ScalarMaximum {
  double x = 0.0;
  double value = 0.0;
  int iterations = 0;
  bool at_lower = false;
  bool at_upper = false;
};

/// Maximizes f on [lo, hi]: uniform prescan with grid_points nodes, then
/// golden-section refinement of the bracketing cells until the bracket is
/// narrower than tol. Cells whose grid values tie within tol are all refined;
/// the best refined value wins and exact ties keep the smaller x.
///
/// Throws NonConvergence if a refinement needs more than max_iter steps.
ScalarMaximum maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                              int grid_points, double tol, int max_iter);

/// Golden-section maximization of a unimodal f on [lo, hi].
ScalarMaximum golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                                 double tol, int max_iter);

/// Adaptive Simpson quadrature of f over [a, b] to an absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double abs_tol, int max_depth = 50);

/// Bisection for a sign change of f on [lo, hi]. Requires f(lo) and f(hi) of
/// opposite sign (otherwise RootNotBracketed). Returns the final bracket.
struct Bracket {
  double lo;
  double hi;
};
Bracket bisect_sign_change(const std::function<double(double)>& f, double lo, double hi,
                           double width, int max_iter = 200);

}  // namespace taxchain
