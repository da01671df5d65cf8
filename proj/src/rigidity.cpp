#include "starshape/rigidity.hpp"

#include <cmath>
#include <stdexcept>

#include "starshape/kernels.hpp"
#include "starshape/parallel.hpp"
#include "starshape/rootfind.hpp"

namespace starshape {

namespace {

void check_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("exponent p must lie in (1, infinity)");
}

// ||A - lambda g||_{L^p_g} evaluated from precomputed principal curvatures:
// pointwise |A - lambda g|_g^2 = sum_k (kappa_k - lambda)^2.
double lambda_norm(const SphereGrid& grid, const std::vector<double>& kappa,
                   const std::vector<double>& dens, double p, double lambda) {
    const int n = grid.n;
    std::vector<double> vals(grid.nodes());
    parallel_for(grid.nodes(), [&](std::size_t node) {
        double s = 0.0;
        for (int k = 0; k < n; ++k) {
            const double d = kappa[node * n + k] - lambda;
            s += d * d;
        }
        vals[node] = std::pow(s, 0.5 * p);
    });
    const double total = kernels::dot3(grid.quad_weights, vals, dens);
    return std::pow(std::max(total, 0.0), 1.0 / p);
}

}  // namespace

std::pair<double, double> best_lambda(const GeometryBundle& b, double p) {
    check_p(p);
    const auto& grid = *b.grid;
    const std::vector<double> kappa = principal_curvatures(b);
    double lo = kappa[0], hi = kappa[0];
    for (double k : kappa) {
        lo = std::min(lo, k);
        hi = std::max(hi, k);
    }
    const double pad = 1e-3 * (1.0 + hi - lo);
    lo -= pad;
    hi += pad;
    auto fn = [&](double lambda) {
        return lambda_norm(grid, kappa, b.vol_density.v, p, lambda);
    };
    const double lambda_star = golden_min(fn, lo, hi, 1e-13);
    return {lambda_star, fn(lambda_star)};
}

double h_bar(const GeometryBundle& b) {
    ScalarField one(b.grid, 1.0);
    const double vol = integrate(one, &b.vol_density);
    return integrate(b.H, &b.vol_density) / vol;
}

double hbar_norm(const GeometryBundle& b, double p) {
    check_p(p);
    const std::vector<double> kappa = principal_curvatures(b);
    return lambda_norm(*b.grid, kappa, b.vol_density.v, p, h_bar(b));
}

double codazzi_residual(const RadialSurface& s, const GeometryBundle& b, double p) {
    check_p(p);
    const auto& grid = *s.grid;
    const int n = grid.n;

    // mixed traceless shape operator Aring^i_j = A^i_j - H delta^i_j
    TensorField aring(s.grid, 1, 1);
    parallel_for(grid.nodes(), [&](std::size_t node) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                aring.at(node, i, j) =
                    b.shape_op.at(node, i, j) - (i == j ? b.H.v[node] : 0.0);
    });

    // partial derivatives of each component, taken along the matching axis
    // for the divergence: d_i Aring^i_j
    std::vector<ScalarField> div_parts(n, ScalarField(s.grid));
    for (int i = 0; i < n; ++i) {
        ScalarField comp(s.grid);
        for (int j = 0; j < n; ++j) {
            parallel_for(grid.nodes(),
                         [&](std::size_t node) { comp.v[node] = aring.at(node, i, j); });
            ScalarField d = partial(comp, i);
            parallel_for(grid.nodes(),
                         [&](std::size_t node) { div_parts[j].v[node] += d.v[node]; });
        }
    }

    TensorField grad_h = grad(b.H);
    TensorField residual(s.grid, 1, 0);
    parallel_for(grid.nodes(), [&](std::size_t node) {
        for (int k = 0; k < n; ++k) {
            // sigma-covariant divergence of the mixed field:
            // div_k = d_i Aring^i_k + Gamma^i_{il} Aring^l_k - Gamma^l_{ik} Aring^i_l
            double div = div_parts[k].v[node];
            for (int i = 0; i < n; ++i)
                for (int l = 0; l < n; ++l) {
                    div += grid.gamma(node, i, i, l) * aring.at(node, l, k);
                    div -= grid.gamma(node, l, i, k) * aring.at(node, i, l);
                }
            double transport = 0.0;  // Aring^l_k grad_l f
            for (int l = 0; l < n; ++l) transport += aring.at(node, l, k) * b.grad_f.at(node, l);
            residual.at(node, k) =
                grad_h.at(node, k) - (div + n * transport) / (n - 1.0);
        }
    });
    return lp_norm(residual, p);
}

double constant_factor(int n, double p, double osc_f, double sup_grad_f) {
    if (osc_f < 0.0 || sup_grad_f < 0.0)
        throw std::invalid_argument("constant_factor: arguments must be nonnegative");
    return std::pow(1.0 + sup_grad_f, (p + 1.0) / p) * std::exp(n / p * osc_f);
}

GradientBoundResult gradient_bound_check(const RadialSurface& s, const GeometryBundle& b) {
    const double o = osc(s.f);
    if (o >= 0.5)
        throw std::invalid_argument("gradient bound is vacuous for osc(f) >= 1/2");
    double lhs = 0.0;
    for (double g2 : b.grad_f_sq.v) lhs = std::max(lhs, std::sqrt(g2));
    const double rhs = std::sqrt(o / (1.0 - 2.0 * o));
    return {lhs <= rhs + 1e-12, lhs, rhs};
}

AdmissibilityReport admissibility(const RadialSurface& s, const GeometryBundle& b, double p,
                                  double delta, double epsilon) {
    check_p(p);
    if (!(delta > 0.0)) throw std::invalid_argument("admissibility: delta must be positive");
    if (!(epsilon > 0.0 && epsilon < 0.25))
        throw std::invalid_argument("admissibility: epsilon must lie in (0, 1/4)");

    AdmissibilityReport rep;
    rep.p = p;
    rep.delta = delta;
    rep.epsilon = epsilon;
    const ConvexityResult cx = convexity_check(b);
    rep.is_convex = cx.is_convex;
    rep.min_curvature = cx.min_eigenvalue;
    rep.volume_gap = std::abs(surface_volume(b) - s.grid->sphere_volume());
    rep.traceless_norm = lp_norm(b.A_traceless, p, b.metric_ctx());
    rep.sup_f = sup_norm(s.f);
    double sg = 0.0;
    for (double g2 : b.grad_f_sq.v) sg = std::max(sg, std::sqrt(g2));
    rep.sup_grad_f = sg;
    rep.osc_f = osc(s.f);
    rep.is_admissible =
        rep.is_convex && rep.volume_gap < kVolumeTol && rep.traceless_norm <= delta;
    return rep;
}

AdmissibilityReport admissibility(const RadialSurface& s, double p, double delta,
                                  double epsilon) {
    return admissibility(s, compute_geometry(s), p, delta, epsilon);
}

double linearized_residual(const RadialSurface& s, double p) {
    check_p(p);
    ScalarField lap = laplace(s.f);
    ScalarField res(s.grid);
    const int n = s.grid->n;
    parallel_for(s.grid->nodes(),
                 [&](std::size_t node) { res.v[node] = lap.v[node] + n * s.f.v[node]; });
    return lp_norm(res, p);
}

std::pair<std::vector<double>, ScalarField> obata_projection(const ScalarField& f) {
    const auto& grid = *f.grid;
    const int n = grid.n;
    const double vol = grid.sphere_volume();
    std::vector<double> v(n + 1);
    for (int c = 0; c <= n; ++c) {
        ScalarField xc = coordinate_field(f.grid, c);
        v[c] = (n + 1) * integrate(f, &xc) / vol;
    }
    ScalarField rem(f.grid);
    parallel_for(grid.nodes(), [&](std::size_t node) {
        double lin = 0.0;
        const double* x = grid.node_coords(node);
        for (int c = 0; c <= n; ++c) lin += v[c] * x[c];
        rem.v[node] = f.v[node] - lin;
    });
    return {std::move(v), std::move(rem)};
}

RigidityReport stability_ratios(const RadialSurface& s, const GeometryBundle& b, double p,
                                double epsilon) {
    check_p(p);
    RigidityReport rep;
    auto [ls, mn] = best_lambda(b, p);
    rep.lambda_star = ls;
    rep.min_norm = mn;
    rep.h_bar = h_bar(b);
    rep.hbar_norm = hbar_norm(b, p);
    rep.codazzi_residual = codazzi_residual(s, b, p);
    double sg = 0.0;
    for (double g2 : b.grad_f_sq.v) sg = std::max(sg, std::sqrt(g2));
    rep.constant_factor = constant_factor(s.grid->n, p, osc(s.f), sg);
    rep.linearized_residual = linearized_residual(s, p);
    auto [v, rem] = obata_projection(s.f);
    rep.v_f = v;
    rep.w2p_distance = sobolev_norm(rem, p, 2, SobolevVariant::full);
    rep.traceless_norm = lp_norm(b.A_traceless, p, b.metric_ctx());
    rep.exactly_round =
        rep.traceless_norm < kRoundThreshold && rep.w2p_distance < kRoundThreshold;
    rep.ratio = rep.exactly_round ? 0.0 : rep.w2p_distance / rep.traceless_norm;
    (void)epsilon;
    return rep;
}

RigidityReport stability_ratios(const RadialSurface& s, double p, double epsilon) {
    return stability_ratios(s, compute_geometry(s), p, epsilon);
}

}  // namespace starshape
