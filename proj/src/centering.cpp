#include "starshape/centering.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "starshape/errors.hpp"
#include "starshape/parallel.hpp"
#include "starshape/rootfind.hpp"

namespace starshape {

namespace {

double vec_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

RadialSurface reradialize(const RadialSurface& s, std::span<const double> c) {
    const auto& grid = *s.grid;
    const int ad = grid.n + 1;
    if (static_cast<int>(c.size()) != ad)
        throw std::invalid_argument("reradialize: center dimension mismatch");

    const double cnorm = vec_norm(c);
    if (cnorm == 0.0) {
        RadialSurface out = s;
        out.provenance = s.provenance + "|recentred(c=0)";
        return out;
    }

    double rho_min = std::exp(s.f.v[0]), rho_max = rho_min;
    for (double f : s.f.v) {
        rho_min = std::min(rho_min, std::exp(f));
        rho_max = std::max(rho_max, std::exp(f));
    }
    const double t_lo = rho_min - cnorm;
    const double t_hi = rho_max + cnorm;
    if (t_lo <= 0.0)
        throw solver_error("reradialize: center too far from the origin (|c| >= min rho)");

    ScalarField fc(s.grid);
    std::vector<int> failed(grid.nodes(), 0);
    parallel_for(grid.nodes(), [&](std::size_t node) {
        const double* z = grid.node_coords(node);
        std::vector<double> q(ad);
        auto fn = [&](double t) {
            double norm2 = 0.0;
            for (int k = 0; k < ad; ++k) {
                q[k] = t * z[k] + c[k];
                norm2 += q[k] * q[k];
            }
            const double r = std::sqrt(norm2);
            for (int k = 0; k < ad; ++k) q[k] /= r;
            return std::log(r) - evaluate(s.f, q);
        };
        try {
            RootResult rr = safeguarded_root(fn, t_lo, t_hi, 1e-14, 1e-13, 200);
            if (!rr.converged) failed[node] = 1;
            fc.v[node] = std::log(rr.x);
        } catch (const solver_error&) {
            failed[node] = 1;
        }
    });
    for (int bad : failed)
        if (bad) throw solver_error("reradialize: ray solve failed (center outside safe region)");

    RadialSurface out = make_surface(std::move(fc), s.provenance + "|recentred");
    return out;
}

std::vector<double> phi_map(const RadialSurface& s, std::span<const double> c) {
    const RadialSurface shifted = reradialize(s, c);
    const auto& grid = *s.grid;
    const int ad = grid.n + 1;
    const double vol = grid.sphere_volume();
    std::vector<double> phi(ad);
    for (int k = 0; k < ad; ++k) {
        ScalarField xk = coordinate_field(s.grid, k);
        phi[k] = (grid.n + 1) * integrate(shifted.f, &xk) / vol;
    }
    return phi;
}

std::vector<std::vector<double>> phi_jacobian(const RadialSurface& s,
                                              std::span<const double> c, double h) {
    const int ad = s.grid->n + 1;
    std::vector<std::vector<double>> jac(ad, std::vector<double>(ad));
    std::vector<double> cp(c.begin(), c.end()), cm(c.begin(), c.end());
    for (int j = 0; j < ad; ++j) {
        cp[j] += h;
        cm[j] -= h;
        const std::vector<double> pp = phi_map(s, cp);
        const std::vector<double> pm = phi_map(s, cm);
        for (int i = 0; i < ad; ++i) jac[i][j] = (pp[i] - pm[i]) / (2.0 * h);
        cp[j] = c[j];
        cm[j] = c[j];
    }
    return jac;
}

CenteringResult solve_center(const RadialSurface& s, double tol, int max_iter) {
    const int ad = s.grid->n + 1;
    std::vector<double> c(ad, 0.0);
    std::vector<double> phi = phi_map(s, c);
    int evals = 1;
    double res = vec_norm(phi);
    int stagnant = 0;

    while (res >= tol && evals < max_iter) {
        std::vector<double> step(phi);  // quasi-Newton step for Jacobian ~ -Id

        if (stagnant >= 3) {
            // finite-difference Jacobian fallback
            const auto jac = phi_jacobian(s, c);
            Eigen::MatrixXd J(ad, ad);
            Eigen::VectorXd rhs(ad);
            for (int i = 0; i < ad; ++i) {
                rhs(i) = -phi[i];
                for (int j = 0; j < ad; ++j) J(i, j) = jac[i][j];
            }
            Eigen::VectorXd delta = J.fullPivLu().solve(rhs);
            for (int i = 0; i < ad; ++i) step[i] = delta(i);
            stagnant = 0;
        }

        // damping: halve while the residual does not decrease
        const double res_before = res;
        double scale = 1.0;
        bool accepted = false;
        for (int halving = 0; halving <= 6 && !accepted; ++halving) {
            std::vector<double> cand(ad);
            for (int i = 0; i < ad; ++i) cand[i] = c[i] + scale * step[i];
            try {
                std::vector<double> phic = phi_map(s, cand);
                ++evals;
                const double rc = vec_norm(phic);
                if (rc < res) {
                    c = cand;
                    phi = phic;
                    res = rc;
                    accepted = true;
                } else {
                    scale *= 0.5;
                }
            } catch (const solver_error&) {
                ++evals;
                scale *= 0.5;  // candidate left the safe region
            }
            if (evals >= max_iter) break;
        }
        if (!accepted || res > 0.7 * res_before)
            ++stagnant;
        else
            stagnant = 0;
    }

    CenteringResult out{c, evals, res, reradialize(s, c), res < tol};
    return out;
}

}  // namespace starshape
