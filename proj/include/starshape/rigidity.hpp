#pragma once
#include <vector>

#include "starshape/radial_geometry.hpp"

namespace starshape {

struct AdmissibilityReport {
    bool is_convex = false;
    double min_curvature = 0.0;
    double volume_gap = 0.0;      // |Vol(Sigma) - Vol(S^n)|
    double traceless_norm = 0.0;  // L^p_g norm of A - H g
    double delta = 0.0;
    bool is_admissible = false;
    double p = 2.0;
    double epsilon = 0.0;
    double sup_f = 0.0;
    double sup_grad_f = 0.0;
    double osc_f = 0.0;
};

struct RigidityReport {
    double lambda_star = 0.0;
    double min_norm = 0.0;   // min over lambda of ||A - lambda g||_{L^p_g}
    double h_bar = 0.0;      // dV_g-average of H
    double hbar_norm = 0.0;  // ||A - h_bar g||_{L^p_g}
    double codazzi_residual = 0.0;
    double constant_factor = 0.0;
    double linearized_residual = 0.0;  // ||laplace f + n f||_{L^p_sigma}
    std::vector<double> v_f;           // first-harmonic coefficient vector
    double w2p_distance = 0.0;         // ||f - (v_f, .)||_{W^{2,p}_sigma}
    double traceless_norm = 0.0;
    double ratio = 0.0;  // w2p_distance / traceless_norm, 0 when exactly round
    bool exactly_round = false;
};

// both norms below the round-surface threshold -> ratio reported as 0
inline constexpr double kRoundThreshold = 1e-8;
// volume condition slack used by the admissibility flag
inline constexpr double kVolumeTol = 1e-8;

/// Minimizer of lambda -> ||A - lambda g||_{L^p_g} (convex, bracketed by the
/// range of principal curvatures). Returns {lambda_star, min_norm}.
std::pair<double, double> best_lambda(const GeometryBundle& b, double p);

/// dV_g-average of the mean curvature.
double h_bar(const GeometryBundle& b);
/// ||A - h_bar g||_{L^p_g}.
double hbar_norm(const GeometryBundle& b, double p);

/// L^p_sigma residual of the curvature identity
///   grad H = 1/(n-1) div_sigma Aring + n/(n-1) Aring[grad f]
/// with Aring^i_j = A^i_j - H delta^i_j and div the sigma-covariant
/// divergence of the mixed field. Pure discretization error for smooth f.
double codazzi_residual(const RadialSurface& s, const GeometryBundle& b, double p);

/// Structural factor (1 + sup|grad f|)^{(p+1)/p} exp((n/p) osc f); the
/// abstract leading constant is reported as 1.
double constant_factor(int n, double p, double osc_f, double sup_grad_f);

struct GradientBoundResult {
    bool holds = false;
    double lhs = 0.0;  // sup |grad f|
    double rhs = 0.0;  // sqrt(osc / (1 - 2 osc))
};

/// Convex surfaces with osc(f) < 1/2 satisfy lhs <= rhs; throws
/// std::invalid_argument when osc >= 1/2 (bound vacuous).
GradientBoundResult gradient_bound_check(const RadialSurface& s, const GeometryBundle& b);

AdmissibilityReport admissibility(const RadialSurface& s, const GeometryBundle& b, double p,
                                  double delta, double epsilon);
AdmissibilityReport admissibility(const RadialSurface& s, double p, double delta,
                                  double epsilon);

/// ||laplace f + n f||_{L^p_sigma}.
double linearized_residual(const RadialSurface& s, double p);

/// First-harmonic projection: v_i = (n+1) * average of x_i f; remainder is
/// f - (v, x).
std::pair<std::vector<double>, ScalarField> obata_projection(const ScalarField& f);

RigidityReport stability_ratios(const RadialSurface& s, const GeometryBundle& b, double p,
                                double epsilon);
RigidityReport stability_ratios(const RadialSurface& s, double p, double epsilon);

}  // namespace starshape
