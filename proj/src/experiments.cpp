#include "starshape/experiments.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>

#include "starshape/errors.hpp"
#include "starshape/parallel.hpp"

namespace starshape {

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

}  // namespace

double default_epsilon(double sup_f, double sup_grad_f) {
    double eps = std::max(sup_f, 0.25 * sup_grad_f * sup_grad_f);
    return std::clamp(eps, 1e-6, 0.25 - 1e-9);
}

ExperimentResult run_pipeline(const SurfaceSpec& spec, double p,
                              std::optional<double> epsilon, double delta) {
    const double t0 = now_seconds();
    GeneratedSurface gen = generate(spec);
    const double gen_s = now_seconds() - t0;
    ExperimentResult row = analyze_surface(gen.surface, spec, p, epsilon, delta);
    row.timing.generate_s += gen_s;
    return row;
}

ExperimentResult analyze_surface(const RadialSurface& raw, const SurfaceSpec& echo, double p,
                                 std::optional<double> epsilon, double delta) {
    ExperimentResult row;
    row.spec = echo;
    row.p = p;
    row.delta = delta;

    double t0 = now_seconds();
    RadialSurface surf = volume_normalize(raw);
    row.timing.generate_s = now_seconds() - t0;

    t0 = now_seconds();
    GeometryBundle bundle = compute_geometry(surf);
    {
        double sg = 0.0;
        for (double g2 : bundle.grad_f_sq.v) sg = std::max(sg, std::sqrt(g2));
        row.epsilon = epsilon ? *epsilon : default_epsilon(sup_norm(surf.f), sg);
    }
    row.admissibility = admissibility(surf, bundle, p, delta, row.epsilon);
    row.timing.admissibility_s = now_seconds() - t0;

    t0 = now_seconds();
    RadialSurface analysed = surf;
    bool have_surface = true;
    try {
        CenteringResult ctr = solve_center(surf);
        row.centering = CenteringSummary{ctr.c0, ctr.iterations, ctr.residual, ctr.converged};
        analysed = ctr.recentred;
    } catch (const std::exception& e) {
        row.centering_error = e.what();
        have_surface = true;  // fall back to the uncentred surface
    }
    row.timing.centering_s = now_seconds() - t0;

    t0 = now_seconds();
    if (have_surface) {
        try {
            GeometryBundle bundle2 = compute_geometry(analysed);
            row.rigidity = stability_ratios(analysed, bundle2, p, row.epsilon);
        } catch (const std::exception& e) {
            row.rigidity_error = e.what();
        }
    }
    row.timing.rigidity_s = now_seconds() - t0;
    return row;
}

std::vector<ExperimentResult> ratio_sweep(const std::vector<SurfaceSpec>& family,
                                          const std::vector<double>& p_list,
                                          std::optional<double> epsilon, double delta) {
    std::vector<ExperimentResult> rows;
    rows.reserve(family.size() * p_list.size());
    for (const auto& spec : family)
        for (double p : p_list) rows.push_back(run_pipeline(spec, p, epsilon, delta));
    return rows;
}

std::vector<ConvergenceRow> convergence_study(const SurfaceSpec& spec,
                                              const std::vector<std::vector<int>>& shapes,
                                              ConvergenceQuantity quantity) {
    if (shapes.empty()) throw std::invalid_argument("convergence_study: no shapes");
    for (std::size_t i = 1; i < shapes.size(); ++i)
        for (std::size_t a = 0; a < shapes[i].size(); ++a)
            if (shapes[i][a] <= shapes[i - 1][a])
                throw std::invalid_argument("convergence_study: shapes must increase");

    std::vector<ConvergenceRow> rows;
    for (const auto& shape : shapes) {
        SurfaceSpec local = spec;
        local.shape = shape;
        GeneratedSurface gen = generate(local);
        GeometryBundle bundle = compute_geometry(gen.surface);
        double value = 0.0;
        switch (quantity) {
            case ConvergenceQuantity::codazzi:
                value = codazzi_residual(gen.surface, bundle, 2.0);
                break;
            case ConvergenceQuantity::embedding_agreement:
                value = embedding_gap(gen.surface, bundle, gen.profile).max();
                break;
            case ConvergenceQuantity::linearized_kernel: {
                // profile of the Obata kernel: f = (v, x) with a fixed probe v
                std::vector<double> v(local.n + 1, 0.0);
                v[local.n] = 0.1;
                v[0] = 0.05;
                GridPtr grid = gen.surface.grid;
                ScalarField f(grid);
                parallel_for(grid->nodes(), [&](std::size_t node) {
                    const double* x = grid->node_coords(node);
                    double s = 0.0;
                    for (int c = 0; c <= local.n; ++c) s += v[c] * x[c];
                    f.v[node] = s;
                });
                value = linearized_residual(make_surface(std::move(f)), 2.0);
                break;
            }
        }
        rows.push_back({shape, value});
    }
    return rows;
}

CorollarySummary corollary_suite(int count, std::uint64_t seed, double p, int n) {
    if (count < 1) throw std::invalid_argument("corollary_suite: count must be >= 1");
    CorollarySummary summary;
    summary.count = count;
    for (int i = 0; i < count; ++i) {
        SurfaceSpec spec;
        spec.kind = SurfaceKind::random_convex;
        spec.n = n;
        spec.shape = default_shape(n);
        spec.seed = seed + static_cast<std::uint64_t>(i);
        spec.band = 6;
        spec.amplitude_cap = 0.15;

        GeneratedSurface gen = generate(spec);
        RadialSurface surf = volume_normalize(gen.surface);
        GeometryBundle bundle = compute_geometry(surf);

        CorollaryCheck check;
        check.seed = spec.seed;
        auto [ls, mn] = best_lambda(bundle, p);
        check.min_norm = mn;
        check.hbar_norm = hbar_norm(bundle, p);
        const double bound = (n + 1) * mn + 1e-9;
        check.sandwich_slack = bound - check.hbar_norm;
        check.sandwich_ok = check.min_norm <= check.hbar_norm + 1e-12 &&
                            check.hbar_norm <= bound;
        auto [ls2, mn2] = best_lambda(bundle, 2.0);
        check.p2_gap = std::abs(ls2 - h_bar(bundle));

        if (osc(surf.f) < 0.4) {
            check.gradient_checked = true;
            GradientBoundResult gb = gradient_bound_check(surf, bundle);
            check.gradient_margin = gb.rhs - gb.lhs;
            check.gradient_ok = gb.lhs <= gb.rhs + 1e-8;
        }

        const bool ok = check.sandwich_ok && check.gradient_ok && check.p2_gap < 1e-8;
        if (ok)
            ++summary.passed;
        else
            summary.failures.push_back(check);
        summary.all.push_back(check);
    }
    return summary;
}

double EmbeddingGap::max() const { return std::max({metric, normal, second_form}); }

EmbeddingGap embedding_gap(const RadialSurface& s, const GeometryBundle& b,
                           const ProfileFn& profile) {
    const auto& grid = *s.grid;
    const int n = grid.n;
    const int ad = n + 1;

    // embedding at shifted chart angles, from the closed-form profile
    auto psi_at = [&](std::vector<double> t) {
        std::vector<double> x(ad);
        std::vector<double> st(n), ct(n);
        for (int a = 0; a < n; ++a) {
            st[a] = std::sin(t[a]);
            ct[a] = std::cos(t[a]);
        }
        std::vector<double> prefix(n + 1);
        prefix[0] = 1.0;
        for (int a = 0; a < n; ++a) prefix[a + 1] = prefix[a] * st[a];
        x[n] = ct[0];
        for (int k = 1; k < n; ++k) x[n - k] = prefix[k] * ct[k];
        x[0] = prefix[n];
        const double r = std::exp(profile(x));
        for (double& c : x) c *= r;
        return x;
    };

    const double h1 = 3e-6;  // first derivatives
    const double h2 = 3e-4;  // second derivatives

    std::vector<double> gap_g(grid.nodes()), gap_nu(grid.nodes()), gap_a(grid.nodes());
    parallel_for(grid.nodes(), [&](std::size_t node) {
        std::vector<double> t(n);
        for (int a = 0; a < n; ++a) t[a] = grid.angle(node, a);

        // first fundamental form and tangents by central differences
        Eigen::MatrixXd jac(ad, n);
        for (int a = 0; a < n; ++a) {
            std::vector<double> tp = t, tm = t;
            tp[a] += h1;
            tm[a] -= h1;
            const auto pp = psi_at(tp);
            const auto pm = psi_at(tm);
            for (int c = 0; c < ad; ++c) jac(c, a) = (pp[c] - pm[c]) / (2.0 * h1);
        }
        double dg = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double gij = jac.col(i).dot(jac.col(j));
                dg = std::max(dg, std::abs(gij - b.g.at(node, i, j)));
            }
        gap_g[node] = dg;

        // unit normal: kernel of the Jacobian, oriented outward
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac, Eigen::ComputeFullU);
        Eigen::VectorXd nu = svd.matrixU().col(ad - 1);
        const auto p0 = psi_at(t);
        double orient = 0.0;
        for (int c = 0; c < ad; ++c) orient += nu(c) * p0[c];
        if (orient < 0.0) nu = -nu;
        double dn = 0.0;
        for (int c = 0; c < ad; ++c)
            dn = std::max(dn, std::abs(nu(c) - b.normal[node * ad + c]));
        gap_nu[node] = dn;

        // A_ij = -<d2 psi / dt_i dt_j, nu> with second-order central stencils
        double da = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                std::vector<double> d2(ad);
                if (i == j) {
                    std::vector<double> tp = t, tm = t;
                    tp[i] += h2;
                    tm[i] -= h2;
                    const auto pp = psi_at(tp);
                    const auto pm = psi_at(tm);
                    for (int c = 0; c < ad; ++c)
                        d2[c] = (pp[c] - 2.0 * p0[c] + pm[c]) / (h2 * h2);
                } else {
                    std::vector<double> tpp = t, tpm = t, tmp = t, tmm = t;
                    tpp[i] += h2;
                    tpp[j] += h2;
                    tpm[i] += h2;
                    tpm[j] -= h2;
                    tmp[i] -= h2;
                    tmp[j] += h2;
                    tmm[i] -= h2;
                    tmm[j] -= h2;
                    const auto a1 = psi_at(tpp);
                    const auto a2 = psi_at(tpm);
                    const auto a3 = psi_at(tmp);
                    const auto a4 = psi_at(tmm);
                    for (int c = 0; c < ad; ++c)
                        d2[c] = (a1[c] - a2[c] - a3[c] + a4[c]) / (4.0 * h2 * h2);
                }
                double aij = 0.0;
                for (int c = 0; c < ad; ++c) aij -= d2[c] * nu(c);
                da = std::max(da, std::abs(aij - b.A.at(node, i, j)));
            }
        gap_a[node] = da;
    });

    EmbeddingGap gap;
    for (std::size_t node = 0; node < grid.nodes(); ++node) {
        gap.metric = std::max(gap.metric, gap_g[node]);
        gap.normal = std::max(gap.normal, gap_nu[node]);
        gap.second_form = std::max(gap.second_form, gap_a[node]);
    }
    return gap;
}

}  // namespace starshape
