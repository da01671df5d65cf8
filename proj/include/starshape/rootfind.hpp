#pragma once
#include <functional>

namespace starshape {

struct RootResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Scalar root on a bracket [lo, hi] with f(lo) and f(hi) of opposite sign.
/// Newton-type steps with a secant slope, falling back to bisection whenever
/// a step leaves the bracket or fails to shrink the residual (at most three
/// rejected steps in a row before forcing bisection).
/// Throws solver_error if the bracket is invalid.
RootResult safeguarded_root(const std::function<double(double)>& f, double lo, double hi,
                            double xtol = 1e-13, double ftol = 1e-13, int max_iter = 100);

/// Minimum of a convex function on [lo, hi] by golden-section search to the
/// given bracket tolerance, followed by one bisection polish step.
double golden_min(const std::function<double(double)>& f, double lo, double hi,
                  double xtol = 1e-12);

}  // namespace starshape
