#include "starshape/radial_geometry.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

#include "starshape/errors.hpp"
#include "starshape/parallel.hpp"

namespace starshape {

RadialSurface make_surface(ScalarField f, std::string provenance) {
    for (double x : f.v) {
        if (!std::isfinite(x)) throw std::invalid_argument("surface profile must be finite");
        if (std::abs(x) > 50.0)
            throw std::invalid_argument("surface profile out of range (|f| > 50)");
    }
    GridPtr grid = f.grid;
    return RadialSurface{std::move(grid), std::move(f), std::move(provenance)};
}

namespace {
constexpr int kMaxDim = 8;  // per-node scratch bound; grids this large are out of scope
}

GeometryBundle compute_geometry(const RadialSurface& s) {
    const auto& grid = *s.grid;
    const int n = grid.n;
    const int ad = n + 1;
    if (n > kMaxDim) throw std::invalid_argument("compute_geometry: dimension too large");

    GeometryBundle b{
        s.grid,
        TensorField(s.grid, 2, 0, true),
        TensorField(s.grid, 0, 2, true),
        std::vector<double>(grid.nodes() * ad),
        TensorField(s.grid, 2, 0, true),
        TensorField(s.grid, 1, 1),
        ScalarField(s.grid),
        TensorField(s.grid, 2, 0, true),
        ScalarField(s.grid),
        ConnectionField{s.grid, std::vector<double>(grid.nodes() * n * n * n)},
        TensorField(s.grid, 1, 0),
        ScalarField(s.grid),
        0.0};

    b.grad_f = grad(s.f);
    const TensorField hess = hessian(s.f);

    std::vector<double> agreement(grid.nodes());
    parallel_for(grid.nodes(), [&](std::size_t node) {
        const double f = s.f.v[node];
        const double ef = std::exp(f);

        double df[kMaxDim], dfu[kMaxDim];  // covariant / raised gradient components
        double gradsq = 0.0;
        for (int i = 0; i < n; ++i) {
            df[i] = b.grad_f.at(node, i);
            dfu[i] = grid.sigma_inv_diag[node * n + i] * df[i];
            gradsq += df[i] * dfu[i];
        }
        b.grad_f_sq.v[node] = gradsq;
        const double w = 1.0 + gradsq;
        const double sw = std::sqrt(w);

        auto sig = [&](int i, int j) {
            return (i == j) ? grid.sigma_diag[node * n + i] : 0.0;
        };
        auto sig_inv = [&](int i, int j) {
            return (i == j) ? grid.sigma_inv_diag[node * n + i] : 0.0;
        };

        // g_ij = e^{2f} (sigma_ij + df_i df_j),
        // g^{ij} = e^{-2f} (sigma^{ij} - dfu^i dfu^j / (1+|df|^2))
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                b.g.at(node, i, j) = ef * ef * (sig(i, j) + df[i] * df[j]);
                b.g_inv.at(node, i, j) = (sig_inv(i, j) - dfu[i] * dfu[j] / w) / (ef * ef);
            }

        // nu = (x - grad_sigma f) / sqrt(1+|df|^2)
        double* nu = b.normal.data() + node * ad;
        const double* x = grid.node_coords(node);
        for (int c = 0; c < ad; ++c) {
            double gvec = 0.0;
            for (int i = 0; i < n; ++i) gvec += dfu[i] * grid.node_tangent(node, i)[c];
            nu[c] = (x[c] - gvec) / sw;
        }

        // A_ij = e^f / sqrt(1+|df|^2) (sigma_ij + df_i df_j - hess_ij)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                b.A.at(node, i, j) =
                    ef / sw * (sig(i, j) + df[i] * df[j] - hess.at(node, i, j));

        // shape operator: stored as the g_inv * A product, cross-checked
        // against the independent closed form
        double hd[kMaxDim];  // (hess[grad f])_j = hess_jk dfu^k
        for (int j = 0; j < n; ++j) {
            double v = 0.0;
            for (int k = 0; k < n; ++k) v += hess.at(node, j, k) * dfu[k];
            hd[j] = v;
        }
        double local_gap = 0.0;
        double trace = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                double prod = 0.0;
                for (int k = 0; k < n; ++k) prod += b.g_inv.at(node, i, k) * b.A.at(node, k, j);
                double hup = 0.0;  // hess^i_j with a sigma-raised index
                for (int k = 0; k < n; ++k) hup += sig_inv(i, k) * hess.at(node, k, j);
                const double closed =
                    ((i == j ? 1.0 : 0.0) - hup + dfu[i] * hd[j] / w) / (ef * sw);
                b.shape_op.at(node, i, j) = prod;
                local_gap = std::max(local_gap, std::abs(prod - closed));
            }
            trace += b.shape_op.at(node, i, i);
        }
        agreement[node] = local_gap;

        const double h = trace / n;
        b.H.v[node] = h;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                b.A_traceless.at(node, i, j) = b.A.at(node, i, j) - h * b.g.at(node, i, j);

        b.vol_density.v[node] = std::pow(ef, n) * sw;

        // induced-metric Christoffel symbols:
        //   Gamma_g = Gamma_sigma + hess_ij dfu^k / (1+|df|^2)
        //           + df_i delta^k_j + df_j delta^k_i - (g-raised df)^k g_ij
        double dfg[kMaxDim];  // g-raised gradient
        for (int k = 0; k < n; ++k) {
            double v = 0.0;
            for (int l = 0; l < n; ++l) v += b.g_inv.at(node, k, l) * df[l];
            dfg[k] = v;
        }
        double* cg = b.christoffel_g.v.data() + node * n * n * n;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double val = grid.gamma(node, k, i, j) + hess.at(node, i, j) * dfu[k] / w;
                    if (k == j) val += df[i];
                    if (k == i) val += df[j];
                    val -= dfg[k] * b.g.at(node, i, j);
                    cg[(k * n + i) * n + j] = val;
                }
    });

    double max_gap = 0.0, max_shape = 0.0;
    for (std::size_t node = 0; node < grid.nodes(); ++node) {
        max_gap = std::max(max_gap, agreement[node]);
        for (int i = 0; i < n * n; ++i)
            max_shape = std::max(max_shape, std::abs(b.shape_op.v[node * n * n + i]));
    }
    b.shape_op_agreement = max_gap;
    if (max_gap > 1e-6 * (1.0 + max_shape))
        throw solver_error("shape operator closed form and g_inv*A disagree");
    return b;
}

std::pair<TensorField, TensorField> metric(const RadialSurface& s) {
    GeometryBundle b = compute_geometry(s);
    return {std::move(b.g), std::move(b.g_inv)};
}

std::vector<double> unit_normal(const RadialSurface& s) {
    return compute_geometry(s).normal;
}

std::pair<TensorField, TensorField> second_fundamental_form(const RadialSurface& s) {
    GeometryBundle b = compute_geometry(s);
    return {std::move(b.A), std::move(b.shape_op)};
}

std::pair<ScalarField, TensorField> mean_and_traceless(const RadialSurface& s) {
    GeometryBundle b = compute_geometry(s);
    return {std::move(b.H), std::move(b.A_traceless)};
}

ScalarField volume_density(const RadialSurface& s) {
    return compute_geometry(s).vol_density;
}

ConnectionField christoffel_g(const RadialSurface& s) {
    return compute_geometry(s).christoffel_g;
}

std::vector<double> principal_curvatures(const GeometryBundle& b) {
    const auto& grid = *b.grid;
    const int n = grid.n;
    std::vector<double> out(grid.nodes() * n);
    parallel_for(grid.nodes(), [&](std::size_t node) {
        Eigen::MatrixXd a(n, n), g(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                a(i, j) = b.A.at(node, i, j);
                g(i, j) = b.g.at(node, i, j);
            }
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, g);
        for (int k = 0; k < n; ++k) out[node * n + k] = es.eigenvalues()(k);
    });
    return out;
}

ConvexityResult convexity_check(const GeometryBundle& b) {
    const std::vector<double> kappa = principal_curvatures(b);
    double mn = kappa.empty() ? 0.0 : kappa[0];
    double mx_abs = 0.0;
    for (double k : kappa) {
        mn = std::min(mn, k);
        mx_abs = std::max(mx_abs, std::abs(k));
    }
    const double tol = 1e-9 * (1.0 + mx_abs);
    return {mn >= -tol, mn, tol};
}

ConvexityResult convexity_check(const RadialSurface& s) {
    return convexity_check(compute_geometry(s));
}

double surface_volume(const GeometryBundle& b) {
    ScalarField one(b.grid, 1.0);
    return integrate(one, &b.vol_density);
}

double surface_volume(const RadialSurface& s) {
    ScalarField dens = volume_density(s);
    ScalarField one(s.grid, 1.0);
    return integrate(one, &dens);
}

RadialSurface volume_normalize(const RadialSurface& s) {
    const double vol = surface_volume(s);
    const double target = s.grid->sphere_volume();
    // Vol(f + t) = e^{nt} Vol(f): Newton on the log relation solves exactly
    const double t = (std::log(target) - std::log(vol)) / s.grid->n;
    ScalarField f = s.f;
    for (double& x : f.v) x += t;
    return make_surface(std::move(f), s.provenance + "|volume_normalized");
}

double hausdorff_to_unit_sphere(const RadialSurface& s) {
    double d = 0.0;
    for (double f : s.f.v) d = std::max(d, std::abs(std::expm1(f)));
    return d;
}

}  // namespace starshape
