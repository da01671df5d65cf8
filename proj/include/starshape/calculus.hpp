#pragma once
#include <span>

#include "starshape/fields.hpp"

namespace starshape {

/// Collocation partial derivative along one chart axis.
ScalarField partial(const ScalarField& f, int axis);

/// Covariant gradient components grad(f)_i = partial_i f ((0,1) tensor).
TensorField grad(const ScalarField& f);

/// Covariant Hessian: hess_ij = partial_i partial_j f - Gamma^k_ij partial_k f.
/// Exactly symmetric (mixed partials computed once per pair).
TensorField hessian(const ScalarField& f);

/// Laplace-Beltrami, trace of the covariant Hessian (negative spectrum:
/// degree-l harmonics map to -l(l+n-1) times themselves).
ScalarField laplace(const ScalarField& f);

/// Quadrature of f (or f * density) against dV_sigma.
double integrate(const ScalarField& f, const ScalarField* density = nullptr);

/// Metric used to form pointwise tensor magnitudes and the volume weight.
/// Defaults (null members) mean the round metric sigma and dV_sigma.
struct MetricContext {
    const TensorField* metric = nullptr;      // (0,2)
    const TensorField* metric_inv = nullptr;  // (2,0)
    const ScalarField* density = nullptr;     // dV/dV_sigma
};

double lp_norm(const ScalarField& f, double p, const MetricContext& ctx = {});
double lp_norm(const TensorField& t, double p, const MetricContext& ctx = {});

/// Pointwise |T| against the context metric, as a field.
ScalarField tensor_magnitude(const TensorField& t, const MetricContext& ctx = {});

enum class SobolevVariant { full, alternative };

/// W^{order,p} norms w.r.t. sigma. `full` sums the L^p norms of f and its
/// covariant derivatives up to `order`; `alternative` is ||f||_p + ||hess f||_p.
double sobolev_norm(const ScalarField& f, double p, int order,
                    SobolevVariant variant = SobolevVariant::full);

double sup_norm(const ScalarField& f);
double sup_norm(const TensorField& t, const MetricContext& ctx = {});
double osc(const ScalarField& f);

/// Interpolate at an arbitrary unit direction using the collocation basis
/// (trigonometric along every axis). Exact on band-limited fields.
double evaluate(const ScalarField& f, std::span<const double> direction);

}  // namespace starshape
