#include "translator/validation.hpp"

#include <algorithm>
#include <cmath>

#include "translator/approx.hpp"

namespace translator {

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "unknown";
}

Verdict combine(Verdict a, Verdict b) {
    if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
    if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
    return Verdict::pass;
}

namespace {

// F(r, phi) and its total derivative along a solution.
std::pair<double, double> rhs_and_total_derivative(double n1, double r, double phi) {
    const double a = 1.0 + phi * phi;
    const double b = 1.0 - n1 * phi / r;
    const double f = a * b;
    const double df = 2.0 * phi * f * b - a * n1 * (f * r - phi) / (r * r);
    return {f, df};
}

}  // namespace

ResidualReport ode_residual(const RadialProfile& profile, double r_lo, double r_hi, ResidualMode mode) {
    profile.validate();
    if (mode == ResidualMode::automatic)
        mode = profile.method == Method::series ? ResidualMode::stored : ResidualMode::integral;
    const Dimension n = profile.dimension;
    const double n1 = n.real() - 1.0;
    auto inside = [&](double r) { return r > 0.0 && r >= r_lo && r <= r_hi; };

    ResidualReport rep;
    rep.mode = mode;
    if (mode == ResidualMode::stored) {
        for (Eigen::Index i = 0; i < profile.size(); ++i) {
            const double r = profile.grid(i);
            if (!inside(r)) continue;
            const double res = std::abs(profile.derivs(i) - phi_rhs(n, r, profile.values(i)));
            ++rep.points;
            if (res >= rep.max_residual) {
                rep.max_residual = res;
                rep.at_radius = r;
            }
        }
    } else {
        for (Eigen::Index i = 0; i + 1 < profile.size(); ++i) {
            const double r0 = profile.grid(i), r1 = profile.grid(i + 1);
            if (!inside(r0) || !inside(r1)) continue;
            const double h = r1 - r0;
            const auto [f0, d0] = rhs_and_total_derivative(n1, r0, profile.values(i));
            const auto [f1, d1] = rhs_and_total_derivative(n1, r1, profile.values(i + 1));
            const double defect =
                profile.values(i + 1) - profile.values(i) - 0.5 * h * (f0 + f1) + h * h / 12.0 * (d1 - d0);
            const double res = std::abs(defect) / h;
            ++rep.points;
            if (res >= rep.max_residual) {
                rep.max_residual = res;
                rep.at_radius = 0.5 * (r0 + r1);
            }
        }
    }
    if (rep.points == 0) throw DomainError("ode_residual: no grid points inside the requested range");
    return rep;
}

namespace {

Eigen::Index nearest_node(const Eigen::VectorXd& grid, double r) {
    const auto* begin = grid.data();
    const auto* end = begin + grid.size();
    const auto* it = std::lower_bound(begin, end, r);
    if (it == end) return grid.size() - 1;
    if (it != begin && std::abs(*(it - 1) - r) <= std::abs(*it - r)) --it;
    return static_cast<Eigen::Index>(it - begin);
}

// True when s0 -> s1 -> s2 approaches its limit without turning back.
bool approaches_monotonically(double s_far, double s_mid, double s_near, double noise) {
    const double d1 = s_mid - s_far, d2 = s_near - s_mid;
    if (std::abs(d1) <= noise && std::abs(d2) <= noise) return true;
    if (std::abs(d2) <= noise) return true;
    return d1 * d2 > 0.0 && std::abs(d2) <= std::abs(d1) + noise;
}

}  // namespace

OriginReport check_origin_regularity(const RadialProfile& profile, const OriginOptions& options) {
    profile.validate();
    if (!(options.r_start > 0.0) || !(options.tol > 0.0)) throw DomainError("check_origin_regularity: bad options");
    const double nd = profile.dimension.real();
    double smallest_positive = profile.r_min();
    if (smallest_positive <= 0.0) {
        if (profile.size() < 2) throw DomainError("check_origin_regularity: profile has no positive radii");
        smallest_positive = profile.grid(1);
    }
    const double base = std::min(std::max(options.r_start, smallest_positive), profile.r_max() / 4.0);
    if (base < smallest_positive) throw DomainError("check_origin_regularity: profile too short for r, 2r, 4r");

    OriginReport rep;
    rep.expected = 1.0 / nd;
    std::vector<double> x, q, d;
    Eigen::Index last = -1;
    for (double factor : {4.0, 2.0, 1.0}) {
        const Eigen::Index i = nearest_node(profile.grid, base * factor);
        if (i == last || profile.grid(i) <= 0.0)
            throw DomainError("check_origin_regularity: grid too coarse near r = " + std::to_string(base * factor));
        last = i;
        const double r = profile.grid(i);
        rep.radii.push_back(r);
        x.push_back(r * r);
        q.push_back(profile.values(i) / r);
        d.push_back(profile.derivs(i));
    }
    rep.phi_over_r_estimate = extrapolate_to_zero(x, q);
    rep.phi_prime_estimate = extrapolate_to_zero(x, d);
    rep.discrepancy = std::abs(rep.phi_over_r_estimate - rep.phi_prime_estimate);

    const double noise = 1e-12;
    if (!approaches_monotonically(q[0], q[1], q[2], noise) || !approaches_monotonically(d[0], d[1], d[2], noise)) {
        rep.verdict = Verdict::inconclusive;
        return rep;
    }
    const bool ok = std::abs(rep.phi_over_r_estimate - rep.expected) <= options.tol &&
                    std::abs(rep.phi_prime_estimate - rep.expected) <= options.tol && rep.discrepancy <= options.tol;
    rep.verdict = ok ? Verdict::pass : Verdict::fail;
    return rep;
}

PsiAsymptoticsReport check_psi_asymptotics(const Trajectory& psi, Dimension n, double tol) {
    n.require_profile_dimension();
    if (psi.r.empty() || psi.r.back() < 15.0)
        throw DomainError("check_psi_asymptotics: trajectory must reach r >= 15");
    PsiAsymptoticsReport rep;
    rep.radius = psi.r.back();
    const double e = std::exp(rep.radius);
    rep.w = e * psi.y.back();
    rep.w_prime = e * psi_rhs(n, rep.radius, psi.y.back());
    rep.sum = rep.w + rep.w_prime;
    rep.expected = 1.0 / n.real();
    const bool ok = std::abs(rep.w - rep.expected) <= tol && std::abs(rep.w_prime + rep.expected) <= tol &&
                    std::abs(rep.sum) <= 2.0 * tol;
    rep.verdict = ok ? Verdict::pass : Verdict::fail;
    return rep;
}

Eigen::Vector4d expansion_reference(Dimension n) {
    const double x = n.real();
    const double x3 = x * x * x, x5 = x3 * x * x, x7 = x5 * x * x;
    return {1.0 / x, 1.0 / (x3 * (x + 2.0)), -(x - 3.0) / (x5 * (x * x + 6.0 * x + 8.0)),
            (x3 - 6.0 * x * x - 8.0 * x + 30.0) / (x7 * (x * x3 + 14.0 * x3 + 68.0 * x * x + 136.0 * x + 96.0))};
}

ExpansionFit check_asymptotic_expansion(const RadialProfile& profile, double window) {
    profile.validate();
    ExpansionFit fit;
    fit.window = window > 0.0 ? window : profile.dimension.real() / 4.0;
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < profile.size(); ++i)
        if (profile.grid(i) > 0.0 && profile.grid(i) <= fit.window) rows.push_back(i);
    if (rows.size() < 6) throw DomainError("check_asymptotic_expansion: fewer than 6 points in the fit window");

    const auto m = static_cast<Eigen::Index>(rows.size());
    // The r^7 column absorbs the next term of the expansion; without it the
    // truncation bias lands on c5.
    Eigen::MatrixXd design(m, 4);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const double r = profile.grid(rows[static_cast<std::size_t>(k)]);
        const double r2 = r * r;
        design.row(k) << r, r * r2, r * r2 * r2, r * r2 * r2 * r2;
        rhs(k) = profile.values(rows[static_cast<std::size_t>(k)]);
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(design);
    const auto& sv = svd.singularValues();
    fit.condition_number = sv(0) / sv(sv.size() - 1);
    if (!std::isfinite(fit.condition_number) || fit.condition_number > 1e12)
        throw DomainError("check_asymptotic_expansion: ill-conditioned fit (condition " +
                          std::to_string(fit.condition_number) + "), try a larger window");
    fit.points = static_cast<int>(m);
    fit.fitted = design.colPivHouseholderQr().solve(rhs).head<3>();
    fit.reference = expansion_reference(profile.dimension).head<3>();
    fit.deviation = fit.fitted - fit.reference;
    return fit;
}

double ComparisonMatrix::max_off_diagonal() const {
    double best = 0.0;
    for (Eigen::Index i = 0; i < max_deviation.rows(); ++i)
        for (Eigen::Index j = 0; j < max_deviation.cols(); ++j)
            if (i != j) best = std::max(best, max_deviation(i, j));
    return best;
}

ComparisonMatrix compare_methods(std::span<const RadialProfile> profiles, std::span<const double> grid) {
    if (profiles.size() < 2) throw DomainError("compare_methods: need at least two profiles");
    if (grid.empty()) throw DomainError("compare_methods: empty comparison grid");
    const Dimension n = profiles.front().dimension;
    const auto p = static_cast<Eigen::Index>(profiles.size());
    const auto m = static_cast<Eigen::Index>(grid.size());

    ComparisonMatrix out;
    Eigen::MatrixXd samples(m, p);
    for (Eigen::Index j = 0; j < p; ++j) {
        const auto& prof = profiles[static_cast<std::size_t>(j)];
        std::string label(to_string(prof.method));
        for (const auto& [key, value] : prof.params) {
            if (key == "eps" || key == "k" || key == "truncation") label += " " + key + "=" + std::to_string(value);
        }
        out.labels.push_back(label);
        if (!(prof.dimension == n)) throw DomainError("compare_methods: profile " + label + " has a different n");
        for (Eigen::Index i = 0; i < m; ++i) {
            const double r = grid[static_cast<std::size_t>(i)];
            if (!prof.covers(r))
                throw DomainError("compare_methods: profile " + label + " does not cover r = " + std::to_string(r));
            samples(i, j) = prof.value_at(r);
        }
    }
    out.max_deviation = Eigen::MatrixXd::Zero(p, p);
    for (Eigen::Index a = 0; a < p; ++a)
        for (Eigen::Index b = a + 1; b < p; ++b)
            out.max_deviation(a, b) = out.max_deviation(b, a) = (samples.col(a) - samples.col(b)).cwiseAbs().maxCoeff();
    return out;
}

double ValidationReport::residual_max() const {
    double best = 0.0;
    for (const auto& [label, r] : residuals) best = std::max(best, r.max_residual);
    return best;
}

Verdict ValidationReport::verdict() const {
    Verdict v = Verdict::pass;
    if (residual_max() > residual_tol) v = Verdict::fail;
    for (const auto& [label, o] : origin) v = combine(v, o.verdict);
    if (psi) v = combine(v, psi->verdict);
    if (expansion) {
        const auto& e = *expansion;
        for (int i = 0; i < 3; ++i) {
            const double scale = std::max(std::abs(e.reference(i)), std::abs(e.reference(0)) * 1e-3);
            if (std::abs(e.deviation(i)) > expansion_rel_tol * scale) v = Verdict::fail;
        }
    }
    if (comparison && comparison->max_off_diagonal() > comparison_tol) v = Verdict::fail;
    return v;
}

}  // namespace translator
