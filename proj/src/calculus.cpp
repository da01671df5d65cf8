#include "starshape/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "starshape/kernels.hpp"
#include "starshape/parallel.hpp"

namespace starshape {

namespace {

void apply_axis(const SphereGrid& grid, int axis, const Eigen::MatrixXd& m,
                const double* in, double* out) {
    // Eigen stores column-major; kernels expect row-major. Differentiation
    // matrices are small, so transpose-copy once per call.
    const int n = m.rows();
    std::vector<double> rm(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rm[static_cast<std::size_t>(i) * n + j] = m(i, j);
    kernels::apply_axis_matrix(rm.data(), n, in, out, grid.outer_extent(axis),
                               grid.inner_extent(axis));
}

void check_p(double p) {
    if (!(p > 1.0) || !std::isfinite(p))
        throw std::invalid_argument("exponent p must lie in (1, infinity)");
}

}  // namespace

ScalarField partial(const ScalarField& f, int axis) {
    const auto& grid = *f.grid;
    if (axis < 0 || axis >= grid.n) throw std::invalid_argument("partial: axis out of range");
    ScalarField out(f.grid);
    apply_axis(grid, axis, grid.axes[axis].d1, f.v.data(), out.v.data());
    return out;
}

TensorField grad(const ScalarField& f) {
    const auto& grid = *f.grid;
    TensorField g(f.grid, 1, 0);
    for (int a = 0; a < grid.n; ++a) {
        ScalarField da = partial(f, a);
        parallel_for(grid.nodes(), [&](std::size_t node) { g.at(node, a) = da.v[node]; });
    }
    return g;
}

TensorField hessian(const ScalarField& f) {
    const auto& grid = *f.grid;
    const int n = grid.n;
    TensorField h(f.grid, 2, 0, true);

    std::vector<ScalarField> d1(n);
    for (int a = 0; a < n; ++a) d1[a] = partial(f, a);

    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            ScalarField dij(f.grid);
            if (i == j) {
                apply_axis(grid, i, grid.axes[i].d2, f.v.data(), dij.v.data());
            } else {
                apply_axis(grid, i, grid.axes[i].d1, d1[j].v.data(), dij.v.data());
            }
            parallel_for(grid.nodes(), [&](std::size_t node) {
                double corr = 0.0;
                for (int k = 0; k < n; ++k) corr += grid.gamma(node, k, i, j) * d1[k].v[node];
                const double val = dij.v[node] - corr;
                h.at(node, i, j) = val;
                h.at(node, j, i) = val;
            });
        }
    }
    return h;
}

ScalarField laplace(const ScalarField& f) {
    const auto& grid = *f.grid;
    const int n = grid.n;
    TensorField h = hessian(f);
    ScalarField out(f.grid);
    parallel_for(grid.nodes(), [&](std::size_t node) {
        double s = 0.0;
        for (int a = 0; a < n; ++a) s += grid.sigma_inv_diag[node * n + a] * h.at(node, a, a);
        out.v[node] = s;
    });
    return out;
}

double integrate(const ScalarField& f, const ScalarField* density) {
    if (density) {
        require_same_grid(f, *density);
        return kernels::dot3(f.grid->quad_weights, f.v, density->v);
    }
    return kernels::dot2(f.grid->quad_weights, f.v);
}

ScalarField tensor_magnitude(const TensorField& t, const MetricContext& ctx) {
    const auto& grid = *t.grid;
    const int n = grid.n;
    ScalarField out(t.grid);
    const TensorField* g = ctx.metric;
    const TensorField* gi = ctx.metric_inv;
    if ((g == nullptr) != (gi == nullptr))
        throw std::invalid_argument("tensor magnitude needs both metric and inverse");

    parallel_for(grid.nodes(), [&](std::size_t node) {
        auto lower = [&](int i, int j) {
            return g ? g->at(node, i, j) : (i == j ? grid.sigma_diag[node * n + i] : 0.0);
        };
        auto raise = [&](int i, int j) {
            return gi ? gi->at(node, i, j) : (i == j ? grid.sigma_inv_diag[node * n + i] : 0.0);
        };
        double s = 0.0;
        if (t.rank() == 1) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double m = (t.cov == 1) ? raise(i, j) : lower(i, j);
                    s += m * t.at(node, i) * t.at(node, j);
                }
        } else {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        for (int l = 0; l < n; ++l) {
                            double m1, m2;
                            if (t.cov == 2) {  // T_ij
                                m1 = raise(i, k);
                                m2 = raise(j, l);
                            } else if (t.con == 2) {  // T^ij
                                m1 = lower(i, k);
                                m2 = lower(j, l);
                            } else {  // T^i_j: lower the first slot, raise the second
                                m1 = lower(i, k);
                                m2 = raise(j, l);
                            }
                            s += m1 * m2 * t.at(node, i, j) * t.at(node, k, l);
                        }
        }
        out.v[node] = std::sqrt(std::max(s, 0.0));
    });
    return out;
}

namespace {

double lp_of_magnitude(const ScalarField& mag, double p, const MetricContext& ctx) {
    const auto& grid = *mag.grid;
    ScalarField powed(mag.grid);
    parallel_for(grid.nodes(), [&](std::size_t node) {
        powed.v[node] = std::pow(std::abs(mag.v[node]), p);
    });
    double total = ctx.density ? kernels::dot3(grid.quad_weights, powed.v, ctx.density->v)
                               : kernels::dot2(grid.quad_weights, powed.v);
    return std::pow(std::max(total, 0.0), 1.0 / p);
}

}  // namespace

double lp_norm(const ScalarField& f, double p, const MetricContext& ctx) {
    check_p(p);
    return lp_of_magnitude(f, p, ctx);
}

double lp_norm(const TensorField& t, double p, const MetricContext& ctx) {
    check_p(p);
    return lp_of_magnitude(tensor_magnitude(t, ctx), p, ctx);
}

double sobolev_norm(const ScalarField& f, double p, int order, SobolevVariant variant) {
    check_p(p);
    if (order < 1 || order > 2) throw std::invalid_argument("sobolev_norm: order must be 1 or 2");
    if (variant == SobolevVariant::alternative) {
        if (order != 2) throw std::invalid_argument("alternative variant is an order-2 norm");
        return lp_norm(f, p) + lp_norm(hessian(f), p);
    }
    double s = lp_norm(f, p) + lp_norm(grad(f), p);
    if (order == 2) s += lp_norm(hessian(f), p);
    return s;
}

double sup_norm(const ScalarField& f) {
    double m = 0.0;
    for (double x : f.v) m = std::max(m, std::abs(x));
    return m;
}

double sup_norm(const TensorField& t, const MetricContext& ctx) {
    ScalarField mag = tensor_magnitude(t, ctx);
    return sup_norm(mag);
}

double osc(const ScalarField& f) {
    auto [lo, hi] = std::minmax_element(f.v.begin(), f.v.end());
    return *hi - *lo;
}

double evaluate(const ScalarField& f, std::span<const double> direction) {
    const auto& grid = *f.grid;
    const int n = grid.n;
    if (static_cast<int>(direction.size()) != n + 1)
        throw std::invalid_argument("evaluate: direction dimension mismatch");
    double norm2 = 0.0;
    for (double c : direction) norm2 += c * c;
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12)
        throw std::invalid_argument("evaluate: direction must be a unit vector");

    const std::vector<double> t = grid.direction_angles(direction);

    // contract axes from the last (stride-1) inward
    std::vector<double> work(f.v);
    std::size_t outer_total = grid.nodes();
    for (int a = n - 1; a >= 0; --a) {
        const std::vector<double> row = grid.axes[a].interp_row(t[a]);
        const int cnt = grid.shape[a];
        outer_total /= cnt;
        std::vector<double> next(outer_total);
        for (std::size_t o = 0; o < outer_total; ++o) {
            double s = 0.0;
            const double* base = work.data() + o * cnt;
            for (int k = 0; k < cnt; ++k) s += row[k] * base[k];
            next[o] = s;
        }
        work.swap(next);
    }
    return work[0];
}

}  // namespace starshape
