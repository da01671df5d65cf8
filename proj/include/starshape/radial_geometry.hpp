#pragma once
#include <string>
#include <utility>

#include "starshape/calculus.hpp"
#include "starshape/fields.hpp"

namespace starshape {

/// Closed hypersurface given as a radial graph over S^n: the surface point
/// over direction x is exp(f(x)) * x, with f the log-radial profile.
struct RadialSurface {
    GridPtr grid;
    ScalarField f;
    std::string provenance;
};

/// Validates |f| <= 50 at every node (beyond that the W^{1,inf} quantities
/// overflow and the surface is far outside the near-sphere regime).
RadialSurface make_surface(ScalarField f, std::string provenance = "");

/// Every first/second-order geometric quantity of the surface, computed in
/// one pass over nodes.
struct GeometryBundle {
    GridPtr grid;
    TensorField g;             // induced metric (0,2)
    TensorField g_inv;         // (2,0)
    std::vector<double> normal;  // outward unit normal, [node*(n+1)+c]
    TensorField A;             // second fundamental form (0,2)
    TensorField shape_op;      // A^i_j = g^{ik} A_{kj} (1,1)
    ScalarField H;             // mean curvature = tr(shape)/n
    TensorField A_traceless;   // A - H g (0,2)
    ScalarField vol_density;   // dV_g / dV_sigma
    ConnectionField christoffel_g;
    TensorField grad_f;        // (0,1), reused downstream
    ScalarField grad_f_sq;     // |grad f|_sigma^2
    double shape_op_agreement = 0.0;  // max gap between g_inv*A and the closed form

    MetricContext metric_ctx() const { return {&g, &g_inv, &vol_density}; }
};

GeometryBundle compute_geometry(const RadialSurface& s);

std::pair<TensorField, TensorField> metric(const RadialSurface& s);
std::vector<double> unit_normal(const RadialSurface& s);
std::pair<TensorField, TensorField> second_fundamental_form(const RadialSurface& s);
std::pair<ScalarField, TensorField> mean_and_traceless(const RadialSurface& s);
ScalarField volume_density(const RadialSurface& s);
ConnectionField christoffel_g(const RadialSurface& s);

/// Principal curvatures: eigenvalues of the shape operator (A against g),
/// per node, ascending; [node*n + k].
std::vector<double> principal_curvatures(const GeometryBundle& b);

struct ConvexityResult {
    bool is_convex = false;
    double min_eigenvalue = 0.0;
    double tolerance = 0.0;
};

/// Smallest principal curvature over all nodes; convex when it is above
/// -tol with tol = 1e-9 * (1 + sup |curvature|).
ConvexityResult convexity_check(const GeometryBundle& b);
ConvexityResult convexity_check(const RadialSurface& s);

double surface_volume(const RadialSurface& s);
double surface_volume(const GeometryBundle& b);

/// Shift f by the constant making Vol(Sigma) = Vol(S^n) (exact in one Newton
/// step on the log-volume relation).
RadialSurface volume_normalize(const RadialSurface& s);

/// sup |e^f - 1|; equals the Hausdorff distance to the concentric unit
/// sphere for radial graphs.
double hausdorff_to_unit_sphere(const RadialSurface& s);

}  // namespace starshape
