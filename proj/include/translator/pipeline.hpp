#pragma once

#include <optional>
#include <vector>

#include "translator/approx.hpp"
#include "translator/picard.hpp"
#include "translator/series.hpp"
#include "translator/shooting.hpp"
#include "translator/validation.hpp"

namespace translator {

/// Settings for producing every method's profile of one dimension.
struct PipelineOptions {
    int series_terms = 200;
    int sample_points = 200;  // sample grid i / sample_points * r_max, i = 1..sample_points
    double r_max = 1.0;
    double shooting_horizon = 20.0;
    double a_tol = 1e-12;
    std::vector<double> eps_ladder = default_eps_ladder();
    std::vector<int> k_ladder = default_k_ladder();
    int picard_truncation = 0;  // 0 picks default_truncation(n)
    IntegratorConfig integrator{};
    /// Comparison grid lo + (hi - lo) j / (points - 1).
    double compare_lo = 0.1;
    double compare_hi = 1.0;
    int compare_points = 91;

    std::vector<double> sample_grid() const;
    std::vector<double> comparison_grid() const;
};

struct MethodProfiles {
    Dimension n{2};
    RadialProfile series;
    ShootingResult shooting_result;
    RadialProfile shooting;
    FamilySweep regularized_sweep;
    FamilySweep one_over_k_sweep;
    PicardSolution picard;

    /// series, shooting, regularized limit, 1/k limit.
    std::vector<RadialProfile> comparable() const;
};

MethodProfiles build_profiles(Dimension n, const PipelineOptions& options);

/// Residuals on [compare_lo, r_max], origin limits for all five profiles, the
/// psi-side limits of the shooting trajectory, the expansion fit of the series
/// profile and the pairwise comparison on the comparison grid.
ValidationReport validate_profiles(const MethodProfiles& profiles, const PipelineOptions& options);

}  // namespace translator
