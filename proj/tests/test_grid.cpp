#include <doctest.h>

#include <cmath>
#include <numbers>

#include "starshape/calculus.hpp"
#include "starshape/generators.hpp"
#include "starshape/grid.hpp"

using namespace starshape;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("grid construction and quadrature totals") {
    GridPtr g2 = make_grid(2, {16, 32});
    CHECK(g2->nodes() == 512);
    double total = 0.0;
    for (double w : g2->quad_weights) total += w;
    CHECK(std::abs(total - 4.0 * kPi) < 4.0 * kPi * 1e-12);

    GridPtr g3 = make_grid(3, {8, 8, 16});
    double total3 = 0.0;
    for (double w : g3->quad_weights) total3 += w;
    CHECK(std::abs(total3 - 2.0 * kPi * kPi) < 2.0 * kPi * kPi * 1e-12);
}

TEST_CASE("grid rejects unusable resolutions") {
    CHECK_THROWS_AS(make_grid(1, {8}), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, {2, 4}), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(2, {8, 7}), std::invalid_argument);   // odd azimuthal
    CHECK_THROWS_AS(make_grid(2, {8}), std::invalid_argument);      // wrong arity
}

TEST_CASE("no node sits on a coordinate pole") {
    GridPtr g = make_grid(3, {8, 8, 16});
    for (int a = 0; a < g->n - 1; ++a)
        for (double t : g->axes[a].nodes) CHECK(std::sin(t) > 1e-3);
}

TEST_CASE("round metric is the standard chart metric") {
    GridPtr g = make_grid(2, {16, 32});
    const int n = g->n;
    for (std::size_t node = 0; node < g->nodes(); ++node) {
        const double theta = g->angle(node, 0);
        CHECK(g->sigma_diag[node * n + 0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(g->sigma_diag[node * n + 1] ==
              doctest::Approx(std::sin(theta) * std::sin(theta)).epsilon(1e-13));
        for (int a = 0; a < n; ++a) {
            const double prod = g->sigma_diag[node * n + a] * g->sigma_inv_diag[node * n + a];
            CHECK(std::abs(prod - 1.0) < 1e-13);
        }
    }
}

TEST_CASE("Christoffel symbols match the S^2 closed form and are symmetric") {
    GridPtr g = make_grid(2, {16, 32});
    for (std::size_t node = 0; node < g->nodes(); ++node) {
        const double theta = g->angle(node, 0);
        CHECK(g->gamma(node, 0, 1, 1) ==
              doctest::Approx(-std::sin(theta) * std::cos(theta)).epsilon(1e-13));
        CHECK(g->gamma(node, 1, 0, 1) ==
              doctest::Approx(std::cos(theta) / std::sin(theta)).epsilon(1e-13));
        CHECK(g->gamma(node, 1, 1, 0) == g->gamma(node, 1, 0, 1));
    }

    GridPtr g3 = make_grid(3, {8, 8, 16});
    for (std::size_t node = 0; node < g3->nodes(); node += 37)
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    CHECK(g3->gamma(node, k, i, j) == g3->gamma(node, k, j, i));
}

TEST_CASE("tangent frame is consistent with the metric and the position") {
    GridPtr g = make_grid(3, {8, 8, 16});
    const int n = g->n, ad = n + 1;
    for (std::size_t node = 0; node < g->nodes(); node += 11) {
        const double* x = g->node_coords(node);
        double r2 = 0.0;
        for (int c = 0; c < ad; ++c) r2 += x[c] * x[c];
        CHECK(std::abs(r2 - 1.0) < 1e-13);
        for (int a = 0; a < n; ++a) {
            const double* e = g->node_tangent(node, a);
            double ex = 0.0;
            for (int c = 0; c < ad; ++c) ex += e[c] * x[c];
            CHECK(std::abs(ex) < 1e-13);
            for (int b = 0; b < n; ++b) {
                const double* eb = g->node_tangent(node, b);
                double dot = 0.0;
                for (int c = 0; c < ad; ++c) dot += e[c] * eb[c];
                const double expected = (a == b) ? g->sigma_diag[node * n + a] : 0.0;
                CHECK(std::abs(dot - expected) < 1e-12);
            }
        }
    }
}

TEST_CASE("azimuthal differentiation of a constant is zero") {
    GridPtr g = make_grid(2, {16, 32});
    ScalarField f(g, 3.25);
    ScalarField d = partial(f, 1);
    for (double x : d.v) CHECK(std::abs(x) < 1e-12);
}

TEST_CASE("harmonics below the band integrate to zero") {
    for (int n : {2, 3}) {
        GridPtr g = make_grid(n, n == 2 ? std::vector<int>{16, 32} : std::vector<int>{8, 8, 16});
        std::vector<double> axis(n + 1, 0.0);
        axis[1] = 1.0 / std::sqrt(2.0);
        axis[n] = 1.0 / std::sqrt(2.0);
        for (int l = 1; l <= g->max_degree; ++l) {
            ScalarField y(g);
            for (std::size_t node = 0; node < g->nodes(); ++node) {
                std::span<const double> x(g->node_coords(node), n + 1);
                y.v[node] = zonal_harmonic(n, l, axis, x);
            }
            CHECK(std::abs(integrate(y)) < 1e-11);
        }
    }
}

TEST_CASE("second moment of a coordinate function") {
    GridPtr g = make_grid(2, {16, 32});
    ScalarField x3 = coordinate_field(g, 2);
    ScalarField sq(g);
    for (std::size_t i = 0; i < sq.v.size(); ++i) sq.v[i] = x3.v[i] * x3.v[i];
    CHECK(std::abs(integrate(sq) - 4.0 * kPi / 3.0) < 1e-10);
    CHECK(std::abs(integrate(x3)) < 1e-12);
}
