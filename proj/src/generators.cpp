#include "starshape/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "starshape/errors.hpp"
#include "starshape/parallel.hpp"

namespace starshape {

namespace {
constexpr double kPi = std::numbers::pi;

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::string join(std::span<const double> v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}
}  // namespace

const char* kind_name(SurfaceKind k) {
    switch (k) {
        case SurfaceKind::sphere: return "sphere";
        case SurfaceKind::translated_sphere: return "translated-sphere";
        case SurfaceKind::ellipsoid: return "ellipsoid";
        case SurfaceKind::harmonic: return "harmonic";
        case SurfaceKind::random_convex: return "random-convex";
    }
    return "unknown";
}

SurfaceKind kind_from_name(const std::string& name) {
    if (name == "sphere") return SurfaceKind::sphere;
    if (name == "translated-sphere" || name == "translated_sphere")
        return SurfaceKind::translated_sphere;
    if (name == "ellipsoid") return SurfaceKind::ellipsoid;
    if (name == "harmonic") return SurfaceKind::harmonic;
    if (name == "random-convex" || name == "random_convex") return SurfaceKind::random_convex;
    throw std::invalid_argument("unknown surface kind: " + name);
}

std::string SurfaceSpec::provenance() const {
    std::ostringstream os;
    os << kind_name(kind) << " n=" << n << " shape=";
    for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "x" : "") << shape[i];
    switch (kind) {
        case SurfaceKind::sphere: os << " scale=" << scale; break;
        case SurfaceKind::translated_sphere: os << " center=" << join(center); break;
        case SurfaceKind::ellipsoid: os << " axes=" << join(semi_axes); break;
        case SurfaceKind::harmonic:
            os << " modes=";
            for (std::size_t i = 0; i < modes.size(); ++i)
                os << (i ? ";" : "") << modes[i].l << "," << modes[i].m << ","
                   << modes[i].amplitude;
            break;
        case SurfaceKind::random_convex:
            os << " seed=" << seed << " band=" << band << " cap=" << amplitude_cap;
            break;
    }
    return os.str();
}

std::vector<int> default_shape(int n) {
    if (n == 2) return {32, 64};
    if (n == 3) return {12, 12, 24};
    std::vector<int> s(n, 8);
    s[n - 1] = 16;
    return s;
}

double assoc_legendre(int l, int m, double x) {
    if (m < 0 || m > l) throw std::invalid_argument("assoc_legendre: need 0 <= m <= l");
    // P_m^m = (2m-1)!! (1-x^2)^{m/2}, then upward recurrence in l
    double pmm = 1.0;
    if (m > 0) {
        const double somx2 = std::sqrt(std::max(0.0, 1.0 - x * x));
        double fact = 1.0;
        for (int i = 1; i <= m; ++i) {
            pmm *= fact * somx2;
            fact += 2.0;
        }
    }
    if (l == m) return pmm;
    double pmmp1 = x * (2.0 * m + 1.0) * pmm;
    if (l == m + 1) return pmmp1;
    double pll = 0.0;
    for (int ll = m + 2; ll <= l; ++ll) {
        pll = ((2.0 * ll - 1.0) * x * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
        pmm = pmmp1;
        pmmp1 = pll;
    }
    return pll;
}

double real_sph_harm(int l, int m, std::span<const double> x) {
    if (x.size() != 3) throw std::invalid_argument("real_sph_harm: defined on S^2");
    const int am = std::abs(m);
    if (am > l) throw std::invalid_argument("real_sph_harm: |m| <= l required");
    const double ct = std::clamp(x[2], -1.0, 1.0);
    const double phi = std::atan2(x[0], x[1]);  // chart convention: x2 ~ cos phi

    double lognum = std::lgamma(l - am + 1.0);
    double logden = std::lgamma(l + am + 1.0);
    const double norm =
        std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) * std::exp(lognum - logden));
    const double plm = assoc_legendre(l, am, ct);
    if (m == 0) return norm * plm;
    const double sq2 = std::sqrt(2.0);
    if (m > 0) return sq2 * norm * plm * std::cos(am * phi);
    return sq2 * norm * plm * std::sin(am * phi);
}

double zonal_harmonic(int n, int l, std::span<const double> axis, std::span<const double> x) {
    const double lambda = 0.5 * (n - 1);
    const double t = std::clamp(dot(axis, x), -1.0, 1.0);
    // Gegenbauer recurrence, normalized by the value at t = 1
    auto gegenbauer = [&](double u) {
        if (l == 0) return 1.0;
        double c0 = 1.0, c1 = 2.0 * lambda * u;
        if (l == 1) return c1;
        double ck = 0.0;
        for (int k = 2; k <= l; ++k) {
            ck = (2.0 * u * (k + lambda - 1.0) * c1 - (k + 2.0 * lambda - 2.0) * c0) / k;
            c0 = c1;
            c1 = ck;
        }
        return ck;
    };
    return gegenbauer(t) / gegenbauer(1.0);
}

ScalarField sample_profile(const GridPtr& grid, const ProfileFn& fn) {
    ScalarField f(grid);
    parallel_for(grid->nodes(), [&](std::size_t node) {
        const double* x = grid->node_coords(node);
        f.v[node] = fn(std::span<const double>(x, grid->n + 1));
    });
    return f;
}

namespace {

ProfileFn sphere_profile(double scale) {
    return [scale](std::span<const double>) { return scale; };
}

ProfileFn translated_sphere_profile(std::vector<double> a) {
    double a2 = dot(a, a);
    return [a = std::move(a), a2](std::span<const double> z) {
        const double za = dot(z, a);
        return std::log(za + std::sqrt(1.0 - a2 + za * za));
    };
}

ProfileFn ellipsoid_profile(std::vector<double> axes) {
    return [axes = std::move(axes)](std::span<const double> z) {
        double s = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) s += z[i] * z[i] / (axes[i] * axes[i]);
        return -0.5 * std::log(s);
    };
}

ProfileFn harmonic_profile(std::vector<HarmonicMode> modes) {
    return [modes = std::move(modes)](std::span<const double> z) {
        double s = 0.0;
        for (const auto& mode : modes) s += mode.amplitude * real_sph_harm(mode.l, mode.m, z);
        return s;
    };
}

struct ZonalTerm {
    int l;
    double coeff;
    std::vector<double> axis;
};

ProfileFn zonal_mixture_profile(int n, std::vector<ZonalTerm> terms, double global_scale) {
    return [n, terms = std::move(terms), global_scale](std::span<const double> z) {
        double s = 0.0;
        for (const auto& t : terms) s += t.coeff * zonal_harmonic(n, t.l, t.axis, z);
        return global_scale * s;
    };
}

}  // namespace

GeneratedSurface generate(const SurfaceSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("surface spec: n must be >= 2");
    GridPtr grid = make_grid(spec.n, spec.shape);
    const int ad = spec.n + 1;

    ProfileFn profile;
    switch (spec.kind) {
        case SurfaceKind::sphere:
            profile = sphere_profile(spec.scale);
            break;
        case SurfaceKind::translated_sphere: {
            if (static_cast<int>(spec.center.size()) != ad)
                throw std::invalid_argument("translated sphere: center must have n+1 entries");
            if (dot(spec.center, spec.center) >= 1.0)
                throw std::invalid_argument("translated sphere: |center| must be < 1");
            profile = translated_sphere_profile(spec.center);
            break;
        }
        case SurfaceKind::ellipsoid: {
            if (static_cast<int>(spec.semi_axes.size()) != ad)
                throw std::invalid_argument("ellipsoid: need n+1 semi-axes");
            for (double a : spec.semi_axes)
                if (!(a > 0.0)) throw std::invalid_argument("ellipsoid: semi-axes must be > 0");
            profile = ellipsoid_profile(spec.semi_axes);
            break;
        }
        case SurfaceKind::harmonic: {
            if (spec.n != 2)
                throw std::invalid_argument("harmonic perturbations use the S^2 basis (n = 2)");
            for (const auto& mode : spec.modes)
                if (mode.l < 0 || std::abs(mode.m) > mode.l)
                    throw std::invalid_argument("harmonic mode out of range");
            profile = harmonic_profile(spec.modes);
            break;
        }
        case SurfaceKind::random_convex: {
            if (spec.band < 1 || spec.band > grid->max_degree)
                throw std::invalid_argument("random convex: band must fit the grid resolution");
            if (!(spec.amplitude_cap > 0.0))
                throw std::invalid_argument("random convex: amplitude cap must be > 0");

            std::mt19937_64 rng(spec.seed);
            std::normal_distribution<double> gauss(0.0, 1.0);
            std::vector<ZonalTerm> terms;
            for (int l = 1; l <= spec.band; ++l) {
                const int directions = 2 * l + 1;
                const double amp = 1.0 / (static_cast<double>(l) * l * l);
                for (int k = 0; k < directions; ++k) {
                    ZonalTerm t;
                    t.l = l;
                    t.coeff = amp * gauss(rng);
                    t.axis.resize(ad);
                    double norm2 = 0.0;
                    for (int c = 0; c < ad; ++c) {
                        t.axis[c] = gauss(rng);
                        norm2 += t.axis[c] * t.axis[c];
                    }
                    const double inv = 1.0 / std::sqrt(norm2);
                    for (double& x : t.axis) x *= inv;
                    terms.push_back(std::move(t));
                }
            }

            // scale to the amplitude cap, then shrink until convex
            ProfileFn raw = zonal_mixture_profile(spec.n, terms, 1.0);
            ScalarField sample = sample_profile(grid, raw);
            const double sup = sup_norm(sample);
            double scale = (sup > 0.0) ? spec.amplitude_cap / sup : 0.0;
            bool convex = false;
            for (int attempt = 0; attempt < 100 && !convex; ++attempt) {
                ProfileFn scaled = zonal_mixture_profile(spec.n, terms, scale);
                ScalarField f = sample_profile(grid, scaled);
                RadialSurface cand = make_surface(std::move(f), spec.provenance());
                if (convexity_check(cand).is_convex) {
                    return {std::move(cand), std::move(scaled)};
                }
                scale *= 0.7;
            }
            throw solver_error("random convex: no convex rescaling found in 100 attempts");
        }
    }

    ScalarField f = sample_profile(grid, profile);
    RadialSurface surf = make_surface(std::move(f), spec.provenance());
    return {std::move(surf), std::move(profile)};
}

}  // namespace starshape
