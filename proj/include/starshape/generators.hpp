#pragma once
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "starshape/radial_geometry.hpp"

namespace starshape {

enum class SurfaceKind { sphere, translated_sphere, ellipsoid, harmonic, random_convex };

const char* kind_name(SurfaceKind k);
SurfaceKind kind_from_name(const std::string& name);

struct HarmonicMode {
    int l = 0;
    int m = 0;
    double amplitude = 0.0;
};

struct SurfaceSpec {
    SurfaceKind kind = SurfaceKind::sphere;
    int n = 2;
    std::vector<int> shape = {32, 64};

    double scale = 0.0;                // sphere: f = scale
    std::vector<double> center;        // translated_sphere: |center| < 1
    std::vector<double> semi_axes;     // ellipsoid: n+1 positive semi-axes
    std::vector<HarmonicMode> modes;   // harmonic (n = 2)
    std::uint64_t seed = 0;            // random_convex
    int band = 6;
    double amplitude_cap = 0.15;

    std::string provenance() const;
};

/// Default shapes used by the experiment drivers: (32,64) for n=2 and
/// (12,12,24) for n=3.
std::vector<int> default_shape(int n);

/// Log-radial profile as a closed-form function of the unit direction.
/// Every kind has one; for random_convex it reflects the final (convexified)
/// coefficients, so it is only available through generate().
using ProfileFn = std::function<double(std::span<const double>)>;

struct GeneratedSurface {
    RadialSurface surface;
    ProfileFn profile;  // evaluable at arbitrary unit directions
};

/// Deterministic for fixed spec (including seed). random_convex surfaces are
/// rescaled until convexity_check passes (error after 100 attempts).
GeneratedSurface generate(const SurfaceSpec& spec);

/// Associated Legendre P_l^m(x), no Condon-Shortley phase.
double assoc_legendre(int l, int m, double x);

/// Real orthonormal spherical harmonic on S^2 (m < 0 selects the sine branch).
double real_sph_harm(int l, int m, std::span<const double> x);

/// Zonal harmonic of degree l with symmetry axis v on S^n: Gegenbauer
/// C_l^{(n-1)/2}(<x,v>) normalized to 1 at <x,v> = 1. Eigenfunction of the
/// sphere Laplacian with eigenvalue -l(l+n-1).
double zonal_harmonic(int n, int l, std::span<const double> axis, std::span<const double> x);

/// Sample a closed-form profile on a grid.
ScalarField sample_profile(const GridPtr& grid, const ProfileFn& fn);

}  // namespace starshape
