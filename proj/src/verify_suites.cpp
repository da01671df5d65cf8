#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <random>
#include <sstream>

#include "starshape/parallel.hpp"
#include "starshape/verify.hpp"

namespace starshape {

namespace {

std::string fmt(double v, int prec = 3) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    return os.str();
}

VerifyRow below(const std::string& name, double value, double threshold) {
    return {name, value, threshold, value < threshold};
}

ScalarField linear_profile(const GridPtr& grid, std::span<const double> v) {
    ScalarField f(grid);
    parallel_for(grid->nodes(), [&](std::size_t node) {
        const double* x = grid->node_coords(node);
        double s = 0.0;
        for (int c = 0; c <= grid->n; ++c) s += v[c] * x[c];
        f.v[node] = s;
    });
    return f;
}

void exact_sphere_rows(std::vector<VerifyRow>& rows, int n, const std::vector<int>& shape,
                       const std::string& tag) {
    GridPtr grid = make_grid(n, shape);
    rows.push_back(below("quadrature_total_" + tag,
                         std::abs(integrate(ScalarField(grid, 1.0)) - grid->sphere_volume()),
                         grid->sphere_volume() * 1e-12));

    RadialSurface sphere = make_surface(ScalarField(grid, 0.0), "sphere");
    GeometryBundle b = compute_geometry(sphere);
    const MetricContext ctx = b.metric_ctx();

    rows.push_back(below("sphere_traceless_norm_" + tag, lp_norm(b.A_traceless, 2.0, ctx), 1e-10));

    TensorField a_minus_g(grid, 2, 0, true);
    parallel_for(grid->nodes(), [&](std::size_t node) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                a_minus_g.at(node, i, j) = b.A.at(node, i, j) - b.g.at(node, i, j);
    });
    rows.push_back(below("sphere_a_minus_g_" + tag, lp_norm(a_minus_g, 2.0, ctx), 1e-10));
    rows.push_back(below("sphere_hbar_gap_" + tag, std::abs(h_bar(b) - 1.0), 1e-10));

    auto [v, rem] = obata_projection(sphere.f);
    double vnorm = 0.0;
    for (double c : v) vnorm += c * c;
    rows.push_back(below("sphere_vf_" + tag, std::sqrt(vnorm), 1e-10));
    rows.push_back(below("sphere_linearized_" + tag, linearized_residual(sphere, 2.0), 1e-10));
}

}  // namespace

bool all_pass(const std::vector<VerifyRow>& rows) {
    for (const auto& r : rows)
        if (!r.pass) return false;
    return true;
}

std::vector<VerifyRow> verify_identities(std::uint64_t seed) {
    std::vector<VerifyRow> rows;
    exact_sphere_rows(rows, 2, {32, 64}, "n2");
    exact_sphere_rows(rows, 3, {12, 12, 24}, "n3");

    GridPtr grid = make_grid(2, {32, 64});
    const int n = 2, ad = 3;

    // closed-form identities on a gently perturbed surface
    {
        ScalarField f = coordinate_field(grid, 2);
        for (double& x : f.v) x *= 0.1;
        RadialSurface s = make_surface(std::move(f), "0.1*x3");
        GeometryBundle b = compute_geometry(s);

        double inv_gap = 0.0, trace_gap = 0.0, ortho = 0.0, unit_gap = 0.0;
        for (std::size_t node = 0; node < grid->nodes(); ++node) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double prod = 0.0;
                    for (int k = 0; k < n; ++k)
                        prod += b.g.at(node, i, k) * b.g_inv.at(node, k, j);
                    inv_gap = std::max(inv_gap, std::abs(prod - (i == j ? 1.0 : 0.0)));
                }
            double tr = 0.0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    tr += b.g_inv.at(node, i, j) * b.A_traceless.at(node, i, j);
            trace_gap = std::max(trace_gap, std::abs(tr));

            const double ef = std::exp(s.f.v[node]);
            double nn = 0.0;
            for (int c = 0; c < ad; ++c) {
                const double nu = b.normal[node * ad + c];
                nn += nu * nu;
            }
            unit_gap = std::max(unit_gap, std::abs(std::sqrt(nn) - 1.0));
            for (int i = 0; i < n; ++i) {
                double dot = 0.0;
                for (int c = 0; c < ad; ++c) {
                    const double dpsi = ef * (grid->node_tangent(node, i)[c] +
                                              b.grad_f.at(node, i) * grid->node_coords(node)[c]);
                    dot += dpsi * b.normal[node * ad + c];
                }
                ortho = std::max(ortho, std::abs(dot));
            }
        }
        rows.push_back(below("metric_inverse_identity", inv_gap, 1e-10));
        rows.push_back(below("traceless_g_trace", trace_gap, 1e-12));
        rows.push_back(below("normal_unit_length", unit_gap, 1e-12));
        rows.push_back(below("normal_orthogonality", ortho, 1e-8));
    }

    // scaling covariance: f -> f + c scales the shape operator by e^{-c}
    {
        ScalarField f = coordinate_field(grid, 2);
        for (double& x : f.v) x *= 0.05;
        RadialSurface s1 = make_surface(f, "scale-test");
        ScalarField f2 = f;
        const double shift = 0.3;
        for (double& x : f2.v) x += shift;
        RadialSurface s2 = make_surface(std::move(f2), "scale-test-shift");
        GeometryBundle b1 = compute_geometry(s1);
        GeometryBundle b2 = compute_geometry(s2);
        double gap = 0.0;
        const double es = std::exp(-shift);
        const double en = std::exp(n * shift);
        for (std::size_t i = 0; i < b1.shape_op.v.size(); ++i)
            gap = std::max(gap, std::abs(b2.shape_op.v[i] - es * b1.shape_op.v[i]));
        for (std::size_t i = 0; i < b1.vol_density.v.size(); ++i)
            gap = std::max(gap,
                           std::abs(b2.vol_density.v[i] - en * b1.vol_density.v[i]) / en);
        rows.push_back(below("scaling_covariance", gap, 1e-12));
    }

    // volume normalization: idempotent, and exact on shifted spheres
    {
        RadialSurface s = make_surface(ScalarField(grid, 0.37), "sphere shifted");
        RadialSurface norm1 = volume_normalize(s);
        rows.push_back(below("volume_normalize_sphere", sup_norm(norm1.f), 1e-12));
        RadialSurface norm2 = volume_normalize(norm1);
        double gap = 0.0;
        for (std::size_t i = 0; i < norm1.f.v.size(); ++i)
            gap = std::max(gap, std::abs(norm1.f.v[i] - norm2.f.v[i]));
        rows.push_back(below("volume_normalize_idempotent", gap, 1e-12));
    }

    // Obata kernel: linear profiles are annihilated and exactly recovered
    {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, 1.0);
        double worst_res = 0.0, worst_rec = 0.0;
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> v(ad);
            double norm2 = 0.0;
            for (double& c : v) {
                c = gauss(rng);
                norm2 += c * c;
            }
            const double target = 0.05 + 0.15 * (trial / 9.0);
            for (double& c : v) c *= target / std::sqrt(norm2);
            ScalarField f = linear_profile(grid, v);
            worst_res = std::max(worst_res, linearized_residual(make_surface(f), 2.0));
            auto [vf, rem] = obata_projection(f);
            for (int c = 0; c < ad; ++c)
                worst_rec = std::max(worst_rec, std::abs(vf[c] - v[c]));
        }
        rows.push_back(below("obata_kernel_residual", worst_res, 1e-9));
        rows.push_back(below("obata_vector_recovery", worst_rec, 1e-9));
    }

    // centering identities on the translated sphere
    {
        SurfaceSpec spec;
        spec.kind = SurfaceKind::translated_sphere;
        spec.n = 2;
        spec.shape = {32, 64};
        spec.center = {0.1, 0.0, 0.0};
        GeneratedSurface gen = generate(spec);

        CenteringResult ctr = solve_center(gen.surface, 1e-10, 50);
        double gap = 0.0;
        for (int c = 0; c < ad; ++c) gap = std::max(gap, std::abs(ctr.c0[c] - spec.center[c]));
        rows.push_back(below("centering_translated_sphere", gap, 1e-8));
        rows.push_back({"centering_iterations", double(ctr.iterations), 10.0,
                        ctr.converged && ctr.iterations <= 10});
        rows.push_back(below("centering_recentred_profile", sup_norm(ctr.recentred.f), 1e-8));

        const std::vector<double> c = {0.15, -0.05, 0.08};
        RadialSurface shifted = reradialize(gen.surface, c);
        const std::vector<double> back = {-0.15, 0.05, -0.08};
        RadialSurface round_trip = reradialize(shifted, back);
        double rt = 0.0;
        for (std::size_t i = 0; i < round_trip.f.v.size(); ++i)
            rt = std::max(rt, std::abs(round_trip.f.v[i] - gen.surface.f.v[i]));
        rows.push_back(below("reradialize_round_trip", rt, 1e-8));

        // measured local scale of the recentering map (Jacobian ~ -Id)
        const auto jac = phi_jacobian(gen.surface, ctr.c0);
        Eigen::MatrixXd J(ad, ad);
        for (int i = 0; i < ad; ++i)
            for (int j = 0; j < ad; ++j) J(i, j) = jac[i][j];
        Eigen::EigenSolver<Eigen::MatrixXd> es(J);
        double scale_gap = 0.0;
        for (int k = 0; k < ad; ++k)
            scale_gap = std::max(scale_gap, std::abs(es.eigenvalues()(k) - std::complex<double>(-1.0, 0.0)));
        rows.push_back(below("centering_jacobian_scale", scale_gap, 0.2));
    }

    return rows;
}

std::vector<VerifyRow> verify_codazzi() {
    std::vector<VerifyRow> rows;
    SurfaceSpec spec;
    spec.kind = SurfaceKind::harmonic;
    spec.n = 2;
    // f = 0.05 (3 cos^2 t - 1) expressed through the orthonormal Y_2^0
    const double pole[3] = {0.0, 0.0, 1.0};
    const double y2_pole = real_sph_harm(2, 0, pole);
    spec.modes = {{2, 0, 0.1 / y2_pole}};

    const std::vector<std::vector<int>> shapes = {{16, 32}, {32, 64}, {48, 96}};
    const auto table = convergence_study(spec, shapes, ConvergenceQuantity::codazzi);
    for (std::size_t i = 0; i < table.size(); ++i) {
        std::ostringstream name;
        name << "codazzi_residual_" << table[i].shape[0] << "x" << table[i].shape[1];
        if (i == 0)
            rows.push_back({name.str(), table[i].value, 1.0, std::isfinite(table[i].value)});
        else
            rows.push_back(below(name.str(), table[i].value, table[i - 1].value));
    }
    rows.push_back(below("codazzi_residual_finest", table.back().value, 1e-6));
    return rows;
}

std::vector<VerifyRow> verify_corollary(int count, std::uint64_t seed, double p) {
    CorollarySummary summary = corollary_suite(count, seed, p);
    std::vector<VerifyRow> rows;
    for (const auto& check : summary.all) {
        std::ostringstream name;
        name << "convex_surface_seed" << check.seed;
        const bool ok = check.sandwich_ok && check.gradient_ok && check.p2_gap < 1e-8;
        rows.push_back({name.str(), check.sandwich_slack, 0.0, ok && check.sandwich_slack >= 0.0});
    }
    return rows;
}

std::vector<VerifyRow> verify_convergence(std::uint64_t seed) {
    std::vector<VerifyRow> rows;

    {
        SurfaceSpec spec;
        spec.kind = SurfaceKind::harmonic;
        spec.n = 2;
        spec.modes = {{2, 0, 0.1}, {3, 1, 0.02}};
        const std::vector<std::vector<int>> shapes = {{16, 32}, {32, 64}, {48, 96}};
        const auto table = convergence_study(spec, shapes, ConvergenceQuantity::codazzi);
        for (std::size_t i = 1; i < table.size(); ++i) {
            std::ostringstream name;
            name << "codazzi_decrease_" << i;
            rows.push_back(below(name.str(), table[i].value, table[i - 1].value));
        }
    }

    {
        SurfaceSpec spec;
        spec.kind = SurfaceKind::random_convex;
        spec.n = 2;
        spec.seed = seed;
        spec.band = 4;
        spec.amplitude_cap = 0.15;
        const std::vector<std::vector<int>> shapes = {{8, 16}, {16, 32}, {32, 64}};
        const auto table =
            convergence_study(spec, shapes, ConvergenceQuantity::embedding_agreement);
        const double floor = 1e-7;  // finite-difference probe accuracy
        for (std::size_t i = 1; i < table.size(); ++i) {
            std::ostringstream name;
            name << "embedding_decrease_" << i;
            const bool ok = table[i].value < table[i - 1].value ||
                            (table[i].value < floor && table[i - 1].value < floor);
            rows.push_back({name.str(), table[i].value, table[i - 1].value, ok});
        }
        rows.push_back(below("embedding_agreement_finest", table.back().value, 1e-6));
    }

    {
        SurfaceSpec spec;  // kernel profiles: flat residual at the roundoff floor
        spec.kind = SurfaceKind::sphere;
        spec.n = 2;
        const std::vector<std::vector<int>> shapes = {{16, 32}, {24, 48}, {32, 64}};
        const auto table =
            convergence_study(spec, shapes, ConvergenceQuantity::linearized_kernel);
        for (const auto& row : table) {
            std::ostringstream name;
            name << "linearized_kernel_" << row.shape[0] << "x" << row.shape[1];
            rows.push_back(below(name.str(), row.value, 1e-9));
        }
    }

    return rows;
}

std::vector<VerifyRow> verify_ratios(std::uint64_t seed) {
    (void)seed;  // the family is deterministic; the seed is part of the interface
    std::vector<VerifyRow> rows;
    const std::vector<double> eps_list = {0.01, 0.02, 0.05};
    const std::vector<double> p_list = {1.5, 2.0, 3.0};

    std::vector<SurfaceSpec> family;
    for (double e : eps_list) {
        SurfaceSpec spec;
        spec.kind = SurfaceKind::ellipsoid;
        spec.n = 2;
        spec.shape = {32, 64};
        spec.semi_axes = {1.0, 1.0, 1.0 + e};
        family.push_back(spec);
    }
    const auto table = ratio_sweep(family, p_list);

    for (std::size_t pi = 0; pi < p_list.size(); ++pi) {
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (std::size_t fi = 0; fi < family.size(); ++fi) {
            const auto& row = table[fi * p_list.size() + pi];
            const double ratio = row.rigidity ? row.rigidity->ratio : -1.0;
            std::ostringstream name;
            name << "ratio_eps" << fmt(eps_list[fi]) << "_p" << fmt(p_list[pi]);
            rows.push_back({name.str(), ratio, 1e6,
                            row.rigidity.has_value() && std::isfinite(ratio) && ratio > 0.0 &&
                                ratio < 1e6});
            if (first) {
                lo = hi = ratio;
                first = false;
            } else {
                lo = std::min(lo, ratio);
                hi = std::max(hi, ratio);
            }
        }
        std::ostringstream name;
        name << "ratio_spread_p" << fmt(p_list[pi]);
        const double spread = (lo > 0.0) ? hi / lo : 1e9;
        rows.push_back(below(name.str(), spread, 2.0));
    }

    // scale invariance: f -> f + 0.3 then volume-normalize reproduces the report
    {
        SurfaceSpec spec = family.back();
        GeneratedSurface gen = generate(spec);
        ExperimentResult r1 = analyze_surface(gen.surface, spec, 2.0, std::nullopt, 0.5);
        ScalarField f2 = gen.surface.f;
        for (double& x : f2.v) x += 0.3;
        RadialSurface shifted = make_surface(std::move(f2), spec.provenance() + "|+0.3");
        ExperimentResult r2 = analyze_surface(shifted, spec, 2.0, std::nullopt, 0.5);
        rows.push_back(below("scale_invariance_gap", report_field_gap(r1, r2), 1e-9));
    }

    return rows;
}

double report_field_gap(const ExperimentResult& a, const ExperimentResult& b) {
    double gap = 0.0;
    auto acc = [&](double x, double y) { gap = std::max(gap, std::abs(x - y)); };
    if (a.admissibility.has_value() != b.admissibility.has_value()) return 1e9;
    if (a.admissibility) {
        const auto &x = *a.admissibility, &y = *b.admissibility;
        acc(x.min_curvature, y.min_curvature);
        acc(x.volume_gap, y.volume_gap);
        acc(x.traceless_norm, y.traceless_norm);
        acc(x.sup_f, y.sup_f);
        acc(x.sup_grad_f, y.sup_grad_f);
        acc(x.osc_f, y.osc_f);
        acc(x.is_convex ? 1.0 : 0.0, y.is_convex ? 1.0 : 0.0);
        acc(x.is_admissible ? 1.0 : 0.0, y.is_admissible ? 1.0 : 0.0);
    }
    if (a.centering.has_value() != b.centering.has_value()) return 1e9;
    if (a.centering) {
        const auto &x = *a.centering, &y = *b.centering;
        for (std::size_t i = 0; i < x.c0.size(); ++i) acc(x.c0[i], y.c0[i]);
        acc(x.residual, y.residual);
    }
    if (a.rigidity.has_value() != b.rigidity.has_value()) return 1e9;
    if (a.rigidity) {
        const auto &x = *a.rigidity, &y = *b.rigidity;
        acc(x.lambda_star, y.lambda_star);
        acc(x.min_norm, y.min_norm);
        acc(x.h_bar, y.h_bar);
        acc(x.hbar_norm, y.hbar_norm);
        acc(x.codazzi_residual, y.codazzi_residual);
        acc(x.constant_factor, y.constant_factor);
        acc(x.linearized_residual, y.linearized_residual);
        for (std::size_t i = 0; i < x.v_f.size(); ++i) acc(x.v_f[i], y.v_f[i]);
        acc(x.w2p_distance, y.w2p_distance);
        acc(x.traceless_norm, y.traceless_norm);
        acc(x.ratio, y.ratio);
    }
    return gap;
}

std::vector<VerifyRow> run_suite(const std::string& name, std::uint64_t seed, int count,
                                 double p) {
    if (name == "identities") return verify_identities(seed);
    if (name == "codazzi") return verify_codazzi();
    if (name == "corollary") return verify_corollary(count, seed, p);
    if (name == "convergence") return verify_convergence(seed);
    if (name == "ratios") return verify_ratios(seed);
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace starshape
