#include "starshape/grid.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace starshape {

namespace {

constexpr double kPi = std::numbers::pi;

// Gauss-Jacobi nodes/weights for weight (1-u^2)^alpha on (-1,1), via
// Golub-Welsch on the symmetric-Jacobi recurrence. alpha = 0 is Gauss-Legendre.
void gauss_jacobi(int count, double alpha, std::vector<double>& u, std::vector<double>& w) {
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(count, count);
    for (int k = 1; k < count; ++k) {
        const double bk = k * (k + 2.0 * alpha) / (4.0 * (k + alpha) * (k + alpha) - 1.0);
        const double off = std::sqrt(bk);
        jac(k - 1, k) = off;
        jac(k, k - 1) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    const double mu0 = std::sqrt(kPi) * std::tgamma(alpha + 1.0) / std::tgamma(alpha + 1.5);
    u.resize(count);
    w.resize(count);
    for (int k = 0; k < count; ++k) {
        u[k] = es.eigenvalues()(k);
        const double v0 = es.eigenvectors()(0, k);
        w[k] = mu0 * v0 * v0;
    }
}

// basis function b, derivative and second derivative at theta:
// b < cos_count: cos(b*theta); otherwise sin((b - cos_count + 1)*theta)
void trig_basis(int b, int cos_count, double theta, double& f, double& d, double& dd) {
    if (b < cos_count) {
        const double k = b;
        f = std::cos(k * theta);
        d = -k * std::sin(k * theta);
        dd = -k * k * f;
    } else {
        const double k = b - cos_count + 1;
        f = std::sin(k * theta);
        d = k * std::cos(k * theta);
        dd = -k * k * f;
    }
}

void build_polar_axis(GridAxis& ax, int count, double alpha) {
    ax.azimuthal = false;
    ax.count = count;
    ax.jacobi_alpha = alpha;

    std::vector<double> u, w;
    gauss_jacobi(count, alpha, u, w);

    // theta ascending corresponds to u descending
    ax.nodes.resize(count);
    ax.weights.resize(count);
    for (int k = 0; k < count; ++k) {
        ax.nodes[k] = std::acos(std::clamp(u[count - 1 - k], -1.0, 1.0));
        ax.weights[k] = w[count - 1 - k];
    }

    ax.cos_count = (count + 1) / 2;
    ax.sin_count = count - ax.cos_count;
    if (count % 2 == 0) {
        // balanced split: cos 0..N/2-1, sin 1..N/2
        ax.cos_count = count / 2;
        ax.sin_count = count / 2;
    }
    ax.max_degree = std::min(ax.cos_count - 1, ax.sin_count);

    Eigen::MatrixXd v(count, count), v1(count, count), v2(count, count);
    for (int k = 0; k < count; ++k)
        for (int b = 0; b < count; ++b) {
            double f, d, dd;
            trig_basis(b, ax.cos_count, ax.nodes[k], f, d, dd);
            v(k, b) = f;
            v1(k, b) = d;
            v2(k, b) = dd;
        }
    ax.basis_inv = v.partialPivLu().inverse();
    ax.d1 = v1 * ax.basis_inv;
    ax.d2 = v2 * ax.basis_inv;
}

void build_azimuthal_axis(GridAxis& ax, int count) {
    ax.azimuthal = true;
    ax.count = count;
    ax.max_degree = count / 2 - 1;
    const double h = 2.0 * kPi / count;
    ax.nodes.resize(count);
    ax.weights.assign(count, h);
    for (int k = 0; k < count; ++k) ax.nodes[k] = k * h;

    ax.d1.resize(count, count);
    ax.d2.resize(count, count);
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j) {
            if (i == j) {
                ax.d1(i, j) = 0.0;
                ax.d2(i, j) = -kPi * kPi / (3.0 * h * h) - 1.0 / 6.0;
            } else {
                const double delta = 0.5 * (i - j) * h;
                const double sgn = ((i - j) % 2 == 0) ? 1.0 : -1.0;
                ax.d1(i, j) = 0.5 * sgn / std::tan(delta);
                const double s = std::sin(delta);
                ax.d2(i, j) = -sgn / (2.0 * s * s);
            }
        }
}

}  // namespace

std::vector<double> GridAxis::interp_row(double x) const {
    std::vector<double> row(count);
    if (azimuthal) {
        // periodic cardinal functions for even counts
        for (int k = 0; k < count; ++k) {
            double delta = x - nodes[k];
            // reduce to (-pi, pi]
            delta = std::remainder(delta, 2.0 * kPi);
            if (std::abs(delta) < 1e-14) {
                row[k] = 1.0;
            } else {
                row[k] = std::sin(0.5 * count * delta) / (count * std::tan(0.5 * delta));
            }
        }
    } else {
        Eigen::VectorXd b(count);
        for (int j = 0; j < count; ++j) {
            double f, d, dd;
            trig_basis(j, cos_count, x, f, d, dd);
            b(j) = f;
        }
        Eigen::VectorXd r = basis_inv.transpose() * b;
        for (int k = 0; k < count; ++k) row[k] = r(k);
    }
    return row;
}

std::size_t SphereGrid::node_index(std::span<const int> multi) const {
    std::size_t idx = 0;
    for (int a = 0; a < n; ++a) idx = idx * shape[a] + multi[a];
    return idx;
}

void SphereGrid::multi_index(std::size_t node, std::span<int> out) const {
    for (int a = n - 1; a >= 0; --a) {
        out[a] = static_cast<int>(node % shape[a]);
        node /= shape[a];
    }
}

double SphereGrid::angle(std::size_t node, int axis) const {
    std::size_t rem = node;
    for (int a = n - 1; a > axis; --a) rem /= shape[a];
    return axes[axis].nodes[rem % shape[axis]];
}

std::size_t SphereGrid::outer_extent(int axis) const {
    std::size_t e = 1;
    for (int a = 0; a < axis; ++a) e *= shape[a];
    return e;
}

std::size_t SphereGrid::inner_extent(int axis) const {
    std::size_t e = 1;
    for (int a = axis + 1; a < n; ++a) e *= shape[a];
    return e;
}

double SphereGrid::sphere_volume() const { return unit_sphere_volume(n); }

double unit_sphere_volume(int n) {
    return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

std::vector<double> SphereGrid::direction_angles(std::span<const double> direction) const {
    std::vector<double> t(n, 0.0);
    // x_{n+1} (index n) = cos t_0; then peel polar angles, azimuth last
    double r = 1.0;
    for (int a = 0; a < n - 1; ++a) {
        const double c = direction[n - a];
        double cosv = (r > 1e-300) ? c / r : 1.0;
        cosv = std::clamp(cosv, -1.0, 1.0);
        t[a] = std::acos(cosv);
        r *= std::sin(t[a]);
    }
    double phi = std::atan2(direction[0], direction[1]);
    if (phi < 0.0) phi += 2.0 * kPi;
    t[n - 1] = (r > 1e-300) ? phi : 0.0;
    return t;
}

GridPtr make_grid(int n, std::vector<int> shape) {
    if (n < 2) throw std::invalid_argument("make_grid: dimension must be >= 2");
    if (static_cast<int>(shape.size()) != n)
        throw std::invalid_argument("make_grid: shape must list one count per axis");
    for (int a = 0; a < n - 1; ++a)
        if (shape[a] < 4) throw std::invalid_argument("make_grid: polar axes need >= 4 nodes");
    if (shape[n - 1] < 4 || shape[n - 1] % 2 != 0)
        throw std::invalid_argument("make_grid: azimuthal axis needs an even count >= 4");

    auto grid = std::make_shared<SphereGrid>();
    grid->n = n;
    grid->shape = shape;
    grid->axes.resize(n);
    for (int a = 0; a < n - 1; ++a) {
        // axis density sin^m with m = n-1-a, Jacobi exponent (m-1)/2
        const double alpha = 0.5 * (n - 2 - a);
        build_polar_axis(grid->axes[a], shape[a], alpha);
    }
    build_azimuthal_axis(grid->axes[n - 1], shape[n - 1]);

    grid->max_degree = grid->axes[0].max_degree;
    for (const auto& ax : grid->axes) grid->max_degree = std::min(grid->max_degree, ax.max_degree);

    std::size_t total = 1;
    for (int c : shape) total *= static_cast<std::size_t>(c);
    grid->node_count = total;

    const int ad = n + 1;
    grid->quad_weights.resize(total);
    grid->sigma_diag.resize(total * n);
    grid->sigma_inv_diag.resize(total * n);
    grid->christoffel.assign(total * n * n * n, 0.0);
    grid->coords.resize(total * ad);
    grid->tangents.resize(total * n * ad);

    std::vector<int> mi(n);
    std::vector<double> t(n), st(n), ct(n), prefix(n + 1);
    for (std::size_t node = 0; node < total; ++node) {
        grid->multi_index(node, mi);
        double wq = 1.0;
        for (int a = 0; a < n; ++a) {
            t[a] = grid->axes[a].nodes[mi[a]];
            st[a] = std::sin(t[a]);
            ct[a] = std::cos(t[a]);
            wq *= grid->axes[a].weights[mi[a]];
        }
        grid->quad_weights[node] = wq;

        prefix[0] = 1.0;
        for (int a = 0; a < n; ++a) prefix[a + 1] = prefix[a] * st[a];

        for (int a = 0; a < n; ++a) {
            const double s = prefix[a] * prefix[a];
            grid->sigma_diag[node * n + a] = s;
            grid->sigma_inv_diag[node * n + a] = 1.0 / s;
        }

        // ambient point: X[n] = cos t_0, X[n-k] = prefix[k] cos t_k, X[0] = prefix[n]
        double* X = grid->coords.data() + node * ad;
        X[n] = ct[0];
        for (int k = 1; k < n; ++k) X[n - k] = prefix[k] * ct[k];
        X[0] = prefix[n];

        // tangent vectors d X / d t_m
        for (int m = 0; m < n; ++m) {
            double* e = grid->tangents.data() + (node * n + m) * ad;
            std::fill(e, e + ad, 0.0);
            if (m == 0) e[n] = -st[0];
            for (int k = 1; k < n; ++k) {
                if (m < k) {
                    double p = ct[k];
                    for (int j = 0; j < k; ++j) p *= (j == m) ? ct[j] : st[j];
                    e[n - k] = p;
                } else if (m == k) {
                    e[n - k] = -prefix[k] * st[k];
                }
            }
            {
                double p = 1.0;
                for (int j = 0; j < n; ++j) p *= (j == m) ? ct[j] : st[j];
                e[0] = p;
            }
        }

        // Christoffel symbols of the round metric:
        //   Gamma^k_{ik} = Gamma^k_{ki} = cot t_i            (i < k)
        //   Gamma^i_{kk} = -cot t_i sigma_kk / sigma_ii      (i < k)
        double* G = grid->christoffel.data() + node * n * n * n;
        for (int i = 0; i < n; ++i) {
            const double cot = ct[i] / st[i];
            for (int k = i + 1; k < n; ++k) {
                G[(k * n + i) * n + k] = cot;
                G[(k * n + k) * n + i] = cot;
                const double ratio =
                    grid->sigma_diag[node * n + k] * grid->sigma_inv_diag[node * n + i];
                G[(i * n + k) * n + k] = -cot * ratio;
            }
        }
    }
    return grid;
}

}  // namespace starshape
