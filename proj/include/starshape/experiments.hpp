#pragma once
#include <optional>
#include <string>
#include <vector>

#include "starshape/centering.hpp"
#include "starshape/generators.hpp"
#include "starshape/rigidity.hpp"

namespace starshape {

struct CenteringSummary {
    std::vector<double> c0;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

struct StageTiming {
    double generate_s = 0.0;
    double admissibility_s = 0.0;
    double centering_s = 0.0;
    double rigidity_s = 0.0;
};

/// One full pipeline run: normalize -> admissibility -> center -> stability
/// ratios on the recentred surface. Stage results are optional; a failed
/// stage records its error instead of aborting the row.
struct ExperimentResult {
    SurfaceSpec spec;
    double p = 2.0;
    double epsilon = 0.1;
    double delta = 0.5;
    std::optional<AdmissibilityReport> admissibility;
    std::optional<CenteringSummary> centering;
    std::string centering_error;
    std::optional<RigidityReport> rigidity;
    std::string rigidity_error;
    StageTiming timing;
};

/// Epsilon default used when the caller passes none:
/// max(sup|f|, (sup|grad f|/2)^2), clamped into (0, 1/4).
double default_epsilon(double sup_f, double sup_grad_f);

ExperimentResult run_pipeline(const SurfaceSpec& spec, double p,
                              std::optional<double> epsilon = std::nullopt,
                              double delta = 0.5);

/// Pipeline on an existing surface (volume-normalize, admissibility,
/// centering, stability ratios on the recentred surface); run_pipeline is
/// generate followed by this.
ExperimentResult analyze_surface(const RadialSurface& raw, const SurfaceSpec& echo, double p,
                                 std::optional<double> epsilon = std::nullopt,
                                 double delta = 0.5);

/// Full pipeline over a family x exponent list; rows in family-major order.
std::vector<ExperimentResult> ratio_sweep(const std::vector<SurfaceSpec>& family,
                                          const std::vector<double>& p_list,
                                          std::optional<double> epsilon = std::nullopt,
                                          double delta = 0.5);

enum class ConvergenceQuantity { codazzi, embedding_agreement, linearized_kernel };

struct ConvergenceRow {
    std::vector<int> shape;
    double value = 0.0;
};

/// Residual of the chosen quantity across increasing grid shapes.
std::vector<ConvergenceRow> convergence_study(const SurfaceSpec& spec,
                                              const std::vector<std::vector<int>>& shapes,
                                              ConvergenceQuantity quantity);

struct CorollaryCheck {
    std::uint64_t seed = 0;
    double min_norm = 0.0;
    double hbar_norm = 0.0;
    double sandwich_slack = 0.0;  // (n+1)*min_norm + tol - hbar_norm
    bool sandwich_ok = false;
    bool gradient_checked = false;
    double gradient_margin = 0.0;  // rhs - lhs
    bool gradient_ok = true;
    double p2_gap = 0.0;  // |best_lambda(p=2) - h_bar|
};

struct CorollarySummary {
    int count = 0;
    int passed = 0;
    std::vector<CorollaryCheck> failures;
    std::vector<CorollaryCheck> all;
};

/// Mean-curvature sandwich + gradient-oscillation bound on `count` seeded
/// random convex surfaces (gradient bound only where osc(f) < 0.4).
CorollarySummary corollary_suite(int count, std::uint64_t seed, double p, int n = 2);

/// Largest componentwise deviation of the closed-form metric, normal and
/// second fundamental form from an extrinsic finite-difference probe of the
/// embedding e^f x (independent of the collocation derivative path).
struct EmbeddingGap {
    double metric = 0.0;
    double normal = 0.0;
    double second_form = 0.0;
    double max() const;
};
EmbeddingGap embedding_gap(const RadialSurface& s, const GeometryBundle& b,
                           const ProfileFn& profile);

}  // namespace starshape
