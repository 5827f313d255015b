#include "translator/pipeline.hpp"

namespace translator {

std::vector<double> PipelineOptions::sample_grid() const {
    if (sample_points < 1 || !(r_max > 0.0)) throw DomainError("pipeline: bad sample grid");
    std::vector<double> g;
    // i / m * r_max with one rounding when r_max = 1, so grids of different
    // resolutions share their common nodes bit for bit.
    for (int i = 1; i <= sample_points; ++i) g.push_back(static_cast<double>(i) * r_max / sample_points);
    return g;
}

std::vector<double> PipelineOptions::comparison_grid() const {
    if (compare_points < 2 || !(compare_hi > compare_lo)) throw DomainError("pipeline: bad comparison grid");
    std::vector<double> g;
    const int steps = compare_points - 1;
    for (int j = 0; j <= steps; ++j) g.push_back((compare_lo * (steps - j) + compare_hi * j) / steps);
    return g;
}

std::vector<RadialProfile> MethodProfiles::comparable() const {
    return {series, shooting, regularized_sweep.limit, one_over_k_sweep.limit};
}

MethodProfiles build_profiles(Dimension n, const PipelineOptions& options) {
    n.require_profile_dimension();
    if (!(options.r_max < n.real())) throw DomainError("pipeline: r_max must lie inside the series disc |r| < n");
    MethodProfiles out;
    out.n = n;
    auto grid = options.sample_grid();

    std::vector<double> with_origin{0.0};
    with_origin.insert(with_origin.end(), grid.begin(), grid.end());
    out.series = series_profile(coefficients(n, options.series_terms), with_origin, options.series_terms);

    ShootingConfig sc;
    sc.integrator = options.integrator;
    sc.phi_radii = grid;
    out.shooting_result = bisect_initial(n, options.shooting_horizon, options.a_tol, sc);
    out.shooting = psi_to_phi(out.shooting_result, n);

    SweepOptions so;
    so.integrator = options.integrator;
    out.regularized_sweep = sweep_regularized(n, options.eps_ladder, grid, so);
    out.one_over_k_sweep = sweep_one_over_k(n, options.k_ladder, grid, so);
    out.picard = picard_solve(n, options.picard_truncation > 0 ? options.picard_truncation : default_truncation(n), PicardConfig::defaults_for(n));
    return out;
}

ValidationReport validate_profiles(const MethodProfiles& profiles, const PipelineOptions& options) {
    ValidationReport rep;
    rep.n = profiles.n;
    rep.residual_tol = 1e-5;
    const std::pair<const char*, const RadialProfile*> named[] = {
        {"series", &profiles.series},
        {"shooting", &profiles.shooting},
        {"regularized", &profiles.regularized_sweep.limit},
        {"one_over_k", &profiles.one_over_k_sweep.limit},
        {"picard", &profiles.picard.profile},
    };
    for (const auto& [label, p] : named) {
        const bool is_picard = p->method == Method::picard;
        const double lo = is_picard ? p->r_max() / 8.0 : options.compare_lo;
        rep.residuals.emplace_back(label, ode_residual(*p, lo, options.r_max));
        OriginOptions oo;
        if (is_picard) oo.r_start = p->r_max() / 4.0;
        rep.origin.emplace_back(label, check_origin_regularity(*p, oo));
    }
    rep.psi = check_psi_asymptotics(profiles.shooting_result.psi, profiles.n);
    rep.expansion = check_asymptotic_expansion(profiles.series);
    const auto cg = options.comparison_grid();
    const auto cmp = profiles.comparable();
    rep.comparison = compare_methods(cmp, cg);
    return rep;
}

}  // namespace translator
