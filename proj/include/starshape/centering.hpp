#pragma once
#include <vector>

#include "starshape/radial_geometry.hpp"

namespace starshape {

struct CenteringResult {
    std::vector<double> c0;  // canonical center in R^{n+1}
    int iterations = 0;      // recentering-map evaluations
    double residual = 0.0;   // |Phi(c0)|
    RadialSurface recentred;
    bool converged = false;
};

/// Profile of the same surface seen from the shifted center c: for each grid
/// direction z the ray solve t -> |t z + c| - rho(direction of t z + c)
/// locates the surface point, and f_c(z) = log t. Off-grid rho values come
/// from collocation interpolation of f. Throws solver_error when c is not
/// safely inside the body (bracketing fails).
RadialSurface reradialize(const RadialSurface& s, std::span<const double> c);

/// First-harmonic projection of the shifted profile:
///   Phi(c) = (n+1) * average of z f_c(z) over the sphere.
std::vector<double> phi_map(const RadialSurface& s, std::span<const double> c);

/// Finite-difference Jacobian of Phi at c (central differences, step h).
std::vector<std::vector<double>> phi_jacobian(const RadialSurface& s,
                                              std::span<const double> c, double h = 1e-5);

/// Find c0 with Phi(c0) = 0 by a damped quasi-Newton iteration anchored on
/// the measured local scale of Phi (Jacobian close to -Id near the round
/// sphere), with a finite-difference Jacobian fallback after stagnation.
CenteringResult solve_center(const RadialSurface& s, double tol = 1e-10, int max_iter = 50);

}  // namespace starshape
