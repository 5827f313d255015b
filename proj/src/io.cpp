#include "translator/io.hpp"

#include <cmath>
#include <cstdio>

namespace translator::io {

std::string fmt(double x) {
    if (std::isnan(x)) return "";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_comment(std::ostream& os, const RunInfo& info) {
    os << "#";
    for (const auto& [key, value] : info) os << ' ' << key << '=' << value;
    os << '\n';
}

void write_coefficients_csv(std::ostream& os, const CoefficientTable& table, const RunInfo& info) {
    write_comment(os, info);
    os << "l,numerator,denominator,float_value\n";
    for (int l = 0; l <= table.max_l(); ++l) {
        const auto& a = table[l];
        os << l << ',' << a.get_num().get_str() << ',' << a.get_den().get_str() << ',' << fmt(to_double(a)) << '\n';
    }
}

void write_sums_csv(std::ostream& os, const SumTable& sums, const RunInfo& info) {
    write_comment(os, info);
    os << "l,sigma2,sigma3,sigma2_float,sigma3_float\n";
    for (int l = 0; l <= sums.max_l(); ++l) {
        const auto& s2 = sums.sigma2[static_cast<std::size_t>(l)];
        const auto& s3 = sums.sigma3[static_cast<std::size_t>(l)];
        os << l << ',' << s2.get_str() << ',' << s3.get_str() << ',' << fmt(to_double(s2)) << ','
           << fmt(to_double(s3)) << '\n';
    }
}

void write_profile_csv(std::ostream& os, const RadialProfile& profile, const RunInfo& info) {
    write_comment(os, info);
    os << "r,phi,phi_prime\n";
    for (Eigen::Index i = 0; i < profile.size(); ++i)
        os << fmt(profile.grid(i)) << ',' << fmt(profile.values(i)) << ',' << fmt(profile.derivs(i)) << '\n';
}

void write_psi_csv(std::ostream& os, const Trajectory& psi, Dimension n, const RunInfo& info) {
    write_comment(os, info);
    os << "r,psi,w,upper_barrier\n";
    for (std::size_t i = 0; i < psi.r.size(); ++i) {
        const double r = psi.r[i];
        os << fmt(r) << ',' << fmt(psi.y[i]) << ',' << fmt(std::exp(r) * psi.y[i]) << ','
           << fmt(std::exp(-r) / (n.real() - 1.0)) << '\n';
    }
}

void write_family_csv(std::ostream& os, const FamilySweep& sweep, const RunInfo& info) {
    write_comment(os, info);
    const std::string key = sweep.method == Method::regularized ? "eps=" : "k=";
    os << 'r';
    for (double p : sweep.parameters) os << ',' << key << fmt(p);
    os << ",limit\n";
    for (Eigen::Index i = 0; i < sweep.grid.size(); ++i) {
        const double r = sweep.grid(i);
        os << fmt(r);
        for (Eigen::Index j = 0; j < sweep.values.cols(); ++j) os << ',' << fmt(sweep.values(i, j));
        os << ',' << (sweep.limit.covers(r) ? fmt(sweep.limit.value_at(r)) : std::string());
        os << '\n';
    }
}

void write_curves_csv(std::ostream& os, const std::vector<Curve>& curves, const RunInfo& info) {
    write_comment(os, info);
    os << "curve,parameter,r,y,log10_abs_y\n";
    for (const auto& c : curves) {
        const auto& t = c.trajectory;
        for (std::size_t i = 0; i < t.r.size(); ++i) {
            const double y = t.y[i];
            os << c.label << ',' << fmt(c.parameter) << ',' << fmt(t.r[i]) << ',' << fmt(y) << ','
               << (y != 0.0 ? fmt(std::log10(std::abs(y))) : std::string()) << '\n';
        }
    }
}

namespace {

Json rational_json(const Rational& q) { return Json{{"exact", q.get_str()}, {"value", to_double(q)}}; }

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const SumBoundReport& rep) {
    Json near2 = Json::array(), near3 = Json::array();
    for (const auto& [l, gap] : rep.sigma2_near) near2.push_back({{"l", l}, {"gap", gap.get_str()}});
    for (const auto& [l, gap] : rep.sigma3_near) near3.push_back({{"l", l}, {"gap", gap.get_str()}});
    return {{"max_l", rep.max_l},
            {"sigma2_bounded", rep.sigma2_bounded},
            {"sigma3_bounded", rep.sigma3_bounded},
            {"sigma2_equality", rep.sigma2_equality},
            {"sigma2_violations", rep.sigma2_violations},
            {"sigma3_violations", rep.sigma3_violations},
            {"sigma2_max", rational_json(rep.sigma2_max)},
            {"sigma3_max", rational_json(rep.sigma3_max)},
            {"sigma2_above_4_5", near2},
            {"sigma3_above_9_5", near3}};
}

Json to_json(const DecayReport& rep) {
    return {{"n", rep.n.value()},
            {"max_l", rep.max_l},
            {"violations", rep.violations},
            {"first_violation", rep.first_violation ? Json(*rep.first_violation) : Json(nullptr)},
            {"pass", rep.pass()}};
}

Json to_json(const PicardDiagnostics& diag, const PicardConfig& config, Dimension n) {
    return {{"n", n.value()},
            {"p", config.p},
            {"L", config.lipschitz},
            {"R", config.ball_radius},
            {"S", diag.interval_end},
            {"iters", diag.iters},
            {"final_residual", diag.final_residual},
            {"empirical_contraction_ratio", diag.empirical_contraction_ratio},
            {"ratio_history", diag.ratio_history},
            {"difference_history", diag.difference_history},
            {"iterate_norms", diag.iterate_norms},
            {"initial_defect", diag.initial_defect},
            {"defect_bound", diag.defect_bound},
            {"lipschitz_bound", diag.lipschitz_bound}};
}

Json to_json(const ShootingResult& res) {
    Json brackets = Json::array();
    for (const auto& b : res.bracket_history)
        brackets.push_back({{"anchor", b.anchor}, {"lo", b.lo}, {"hi", b.hi}, {"horizon", b.horizon}});
    Json trace = Json::array();
    for (const auto& s : res.trace)
        trace.push_back({{"anchor", s.anchor},
                         {"value", s.value},
                         {"horizon", s.horizon},
                         {"classification", std::string(to_string(s.classification))},
                         {"exit_radius", s.exit_radius}});
    return {{"n", res.n.value()},
            {"a_star", res.a_star},
            {"final_horizon", res.final_horizon},
            {"anchors", res.anchors},
            {"shots", res.trace.size()},
            {"bracket_history", brackets},
            {"trace", trace}};
}

Json to_json(const BoundCheck& check) {
    return {{"name", check.name},
            {"checked", check.checked},
            {"violations", check.violations},
            {"worst_excess", finite_or_null(check.worst_excess)},
            {"worst_radius", check.worst_radius},
            {"pass", check.pass()}};
}

Json to_json(const FamilySweep& sweep) {
    Json checks = Json::array();
    for (const auto& c : sweep.bound_checks) checks.push_back(to_json(c));
    Json j{{"n", sweep.n.value()},
           {"method", std::string(to_string(sweep.method))},
           {"parameters", sweep.parameters},
           {"successive_differences", sweep.successive_differences},
           {"bound_checks", checks}};
    if (sweep.method == Method::regularized) {
        j["monotonicity"] = {{"checked", sweep.monotone_checked},
                             {"ties", sweep.monotone_ties},
                             {"worst", finite_or_null(sweep.monotone_worst)}};
    }
    return j;
}

Json to_json(const ResidualReport& rep) {
    return {{"max_residual", rep.max_residual},
            {"at_radius", rep.at_radius},
            {"mode", rep.mode == ResidualMode::stored ? "stored" : "integral"},
            {"points", rep.points}};
}

Json to_json(const OriginReport& rep) {
    return {{"phi_over_r_estimate", rep.phi_over_r_estimate},
            {"phi_prime_estimate", rep.phi_prime_estimate},
            {"discrepancy", rep.discrepancy},
            {"expected", rep.expected},
            {"radii", rep.radii},
            {"verdict", std::string(to_string(rep.verdict))}};
}

Json to_json(const PsiAsymptoticsReport& rep) {
    return {{"radius", rep.radius},
            {"w", rep.w},
            {"w_prime", rep.w_prime},
            {"sum", rep.sum},
            {"expected", rep.expected},
            {"verdict", std::string(to_string(rep.verdict))}};
}

Json to_json(const ExpansionFit& fit) {
    auto vec = [](const Eigen::Vector3d& v) { return Json::array({v(0), v(1), v(2)}); };
    return {{"window", fit.window},
            {"points", fit.points},
            {"fitted_c1_c3_c5", vec(fit.fitted)},
            {"reference_c1_c3_c5", vec(fit.reference)},
            {"deviation", vec(fit.deviation)},
            {"condition_number", fit.condition_number}};
}

Json to_json(const ComparisonMatrix& cmp) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < cmp.max_deviation.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index j = 0; j < cmp.max_deviation.cols(); ++j) row.push_back(cmp.max_deviation(i, j));
        rows.push_back(row);
    }
    return {{"labels", cmp.labels}, {"max_deviation", rows}, {"max_off_diagonal", cmp.max_off_diagonal()}};
}

Json to_json(const ValidationReport& rep) {
    Json residuals = Json::object(), origin = Json::object();
    for (const auto& [label, r] : rep.residuals) residuals[label] = to_json(r);
    for (const auto& [label, o] : rep.origin) origin[label] = to_json(o);
    Json j{{"n", rep.n.value()},
           {"residuals", residuals},
           {"residual_max", rep.residual_max()},
           {"origin_limits", origin},
           {"verdict", std::string(to_string(rep.verdict()))}};
    if (rep.psi) j["psi_asymptotics"] = to_json(*rep.psi);
    if (rep.expansion) j["expansion_fit"] = to_json(*rep.expansion);
    if (rep.comparison) j["pairwise_deviations"] = to_json(*rep.comparison);
    return j;
}

}  // namespace translator::io
