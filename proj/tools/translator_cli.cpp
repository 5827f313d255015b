// Command-line front end: coefficient tables, combinatorial sums, profiles by
// each method, shooting dumps, radius estimates, cross-method comparison,
// figure data and the full validation report.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "translator/io.hpp"
#include "translator/pipeline.hpp"

using namespace translator;
namespace tio = translator::io;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_numerical = 1;
constexpr int exit_inconclusive = 2;
constexpr int exit_usage = 64;

/// "5", "2..10" or "2,3,7".
std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    if (const auto dots = text.find(".."); dots != std::string::npos) {
        const int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
        if (hi < lo) throw DomainError("empty range " + text);
        for (int v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    if (out.empty()) throw DomainError("empty list");
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    if (out.empty()) throw DomainError("empty list");
    return out;
}

struct Output {
    std::string path = "-";
    std::string format;

    std::ostream& stream() {
        if (path == "-") return std::cout;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw DomainError("cannot open " + path);
        return *file_;
    }

private:
    std::unique_ptr<std::ofstream> file_;
};

void add_output(CLI::App* cmd, Output& out, const std::string& default_format) {
    out.format = default_format;
    cmd->add_option("-o,--output", out.path, "Output file, - for stdout")->capture_default_str();
    cmd->add_option("--format", out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
}

void add_integrator(CLI::App* cmd, IntegratorConfig& c) {
    cmd->add_option("--abs-tol", c.abs_tol, "Integrator absolute tolerance")->capture_default_str();
    cmd->add_option("--rel-tol", c.rel_tol, "Integrator relative tolerance")->capture_default_str();
    cmd->add_option("--max-step", c.max_step, "Integrator maximum step")->capture_default_str();
    cmd->add_option("--min-step", c.min_step, "Integrator minimum step")->capture_default_str();
    cmd->add_option("--blowup", c.blowup_threshold, "Blow-up threshold on |y|")->capture_default_str();
}

void dump(std::ostream& os, const tio::Json& j) { os << j.dump(2) << '\n'; }

std::string str(double x) { return tio::fmt(x); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rotationally symmetric translating solitons of mean curvature flow"};
    app.require_subcommand(1);
    std::function<int()> action;

    // coeffs -------------------------------------------------------------------
    int co_n = 2, co_max_l = 500, co_lo = 100, co_hi = 450;
    Output co_out;
    auto* coeffs = app.add_subcommand("coeffs", "Exact series coefficients a_l and their bound reports");
    coeffs->add_option("--n", co_n, "Dimension")->capture_default_str();
    coeffs->add_option("--max-l", co_max_l, "Largest index l")->capture_default_str();
    coeffs->add_option("--window-lo", co_lo, "Radius fit window start")->capture_default_str();
    coeffs->add_option("--window-hi", co_hi, "Radius fit window end")->capture_default_str();
    add_output(coeffs, co_out, "csv");
    coeffs->callback([&] {
        action = [&] {
            const Dimension n(co_n);
            const auto table = coefficients(n, co_max_l);
            auto& os = co_out.stream();
            if (co_out.format == "csv") {
                tio::write_coefficients_csv(os, table, {{"command", "coeffs"}, {"n", std::to_string(co_n)},
                                                         {"max_l", std::to_string(co_max_l)}});
                return exit_ok;
            }
            tio::Json j{{"n", co_n}, {"max_l", co_max_l}, {"decay_bound", tio::to_json(check_decay_bound(table))},
                        {"decay_rate", check_decay_rate(table)}};
            if (co_hi <= co_max_l) j["radius_estimate"] = estimate_radius(table, co_lo, co_hi);
            dump(os, j);
            return exit_ok;
        };
    });

    // sums ---------------------------------------------------------------------
    int su_max_l = 500;
    Output su_out;
    auto* sums = app.add_subcommand("sums", "Sigma2/Sigma3 tables and their uniform bounds");
    sums->add_option("--max-l", su_max_l, "Largest l")->capture_default_str();
    add_output(sums, su_out, "json");
    sums->callback([&] {
        action = [&] {
            const auto table = sum_table(su_max_l);
            const auto rep = check_sum_bounds(table);
            auto& os = su_out.stream();
            if (su_out.format == "csv")
                tio::write_sums_csv(os, table, {{"command", "sums"}, {"max_l", std::to_string(su_max_l)}});
            else
                dump(os, tio::to_json(rep));
            return rep.sigma2_bounded && rep.sigma3_bounded ? exit_ok : exit_numerical;
        };
    });

    // solve --------------------------------------------------------------------
    std::string so_method = "series";
    int so_n = 2, so_terms = 200, so_points = 200, so_k = 256, so_truncation = 0;
    double so_r_max = 1.0, so_horizon = 20.0, so_p = 0.0;
    std::optional<double> so_eps, so_initial;
    std::string so_eps_ladder;
    IntegratorConfig so_ic;
    Output so_out;
    auto* solve = app.add_subcommand("solve", "Profile phi by one method");
    solve->add_option("--method", so_method, "series, shooting, regularized, one_over_k or picard")
        ->check(CLI::IsMember({"series", "shooting", "regularized", "one_over_k", "picard"}))
        ->capture_default_str();
    solve->add_option("--n", so_n, "Dimension")->capture_default_str();
    solve->add_option("--r-max", so_r_max, "Largest radius")->capture_default_str();
    solve->add_option("--points", so_points, "Output grid points on (0, r_max]")->capture_default_str();
    solve->add_option("--terms", so_terms, "Series truncation M")->capture_default_str();
    solve->add_option("--horizon", so_horizon, "Shooting horizon in psi coordinates")->capture_default_str();
    solve->add_option("--eps", so_eps, "Single regularization parameter (default: extrapolated ladder)");
    solve->add_option("--eps-ladder", so_eps_ladder, "Comma-separated decreasing eps values");
    solve->add_option("--k", so_k, "1/k problem index")->capture_default_str();
    solve->add_option("--initial-value", so_initial, "Override phi(1/k) (default 1/(nk))");
    solve->add_option("--truncation", so_truncation, "Picard approximant truncation M (0: automatic)")->capture_default_str();
    solve->add_option("--p", so_p, "Picard weight exponent (default n+1)");
    add_integrator(solve, so_ic);
    add_output(solve, so_out, "csv");
    solve->callback([&] {
        action = [&] {
            const Dimension n(so_n);
            n.require_profile_dimension();
            if (so_points < 1) throw DomainError("--points must be >= 1");
            std::vector<double> grid;
            for (int i = 1; i <= so_points; ++i) grid.push_back(static_cast<double>(i) * so_r_max / so_points);
            tio::RunInfo info{{"command", "solve"}, {"method", so_method}, {"n", std::to_string(so_n)},
                              {"r_max", str(so_r_max)}};
            RadialProfile prof;
            std::optional<tio::Json> extra;
            if (so_method == "series") {
                if (!(so_r_max < n.real())) throw DomainError("series needs r_max < n");
                grid.insert(grid.begin(), 0.0);
                prof = series_profile(coefficients(n, so_terms), grid, so_terms);
                info.emplace_back("terms", std::to_string(so_terms));
            } else if (so_method == "shooting") {
                if (!(so_r_max <= 1.0)) throw DomainError("shooting covers radii up to 1");
                ShootingConfig sc;
                sc.integrator = so_ic;
                sc.phi_radii = grid;
                auto res = bisect_initial(n, so_horizon, 1e-12, sc);
                prof = psi_to_phi(res, n);
                info.emplace_back("horizon", str(so_horizon));
            } else if (so_method == "regularized") {
                if (so_eps) {
                    prof = solve_regularized(n, *so_eps, so_r_max, so_ic, grid);
                    info.emplace_back("eps", str(*so_eps));
                } else {
                    const auto ladder = so_eps_ladder.empty() ? default_eps_ladder() : parse_double_list(so_eps_ladder);
                    SweepOptions opt;
                    opt.integrator = so_ic;
                    auto sw = sweep_regularized(n, ladder, grid, opt);
                    extra = tio::to_json(sw);
                    prof = sw.limit;
                    info.emplace_back("eps_ladder", so_eps_ladder.empty() ? "2^-1..2^-10" : so_eps_ladder);
                }
            } else if (so_method == "one_over_k") {
                prof = solve_one_over_k(n, so_k, so_r_max, so_ic, grid, so_initial);
                info.emplace_back("k", std::to_string(so_k));
                if (so_initial) info.emplace_back("initial_value", str(*so_initial));
            } else {
                auto cfg = PicardConfig::defaults_for(n);
                if (so_p > 0.0) cfg.p = so_p;
                const int m = so_truncation > 0 ? so_truncation : default_truncation(n);
                auto sol = picard_solve(n, m, cfg);
                extra = tio::to_json(sol.diagnostics, cfg, n);
                prof = std::move(sol.profile);
                info.emplace_back("truncation", std::to_string(m));
                info.emplace_back("p", str(cfg.p));
            }
            info.emplace_back("abs_tol", str(so_ic.abs_tol));
            info.emplace_back("rel_tol", str(so_ic.rel_tol));
            auto& os = so_out.stream();
            if (so_out.format == "csv") {
                tio::write_profile_csv(os, prof, info);
            } else {
                tio::Json j{{"method", so_method}, {"n", so_n}, {"grid", std::vector<double>(prof.grid.begin(), prof.grid.end())},
                            {"phi", std::vector<double>(prof.values.begin(), prof.values.end())},
                            {"phi_prime", std::vector<double>(prof.derivs.begin(), prof.derivs.end())}};
                if (extra) j["diagnostics"] = *extra;
                dump(os, j);
            }
            return exit_ok;
        };
    });

    // shoot --------------------------------------------------------------------
    int sh_n = 2;
    double sh_horizon = 20.0, sh_a_tol = 1e-12;
    ShootingConfig sh_cfg;
    Output sh_out;
    auto* shoot = app.add_subcommand("shoot", "Bisection for the bounded solution of the psi-equation");
    shoot->add_option("--n", sh_n, "Dimension")->capture_default_str();
    shoot->add_option("--horizon", sh_horizon, "Target horizon")->capture_default_str();
    shoot->add_option("--a-tol", sh_a_tol, "Required width of the initial-value bracket")->capture_default_str();
    shoot->add_option("--horizon-step", sh_cfg.horizon_step, "Horizon growth per surviving shot")->capture_default_str();
    shoot->add_option("--gap-tol", sh_cfg.gap_tol, "Agreement needed to re-anchor the bracket")->capture_default_str();
    add_integrator(shoot, sh_cfg.integrator);
    add_output(shoot, sh_out, "json");
    shoot->callback([&] {
        action = [&] {
            const Dimension n(sh_n);
            auto res = bisect_initial(n, sh_horizon, sh_a_tol, sh_cfg);
            auto& os = sh_out.stream();
            if (sh_out.format == "csv")
                tio::write_psi_csv(os, res.psi, n, {{"command", "shoot"}, {"n", std::to_string(sh_n)},
                                                    {"horizon", str(sh_horizon)}, {"a_star", str(res.a_star)}});
            else
                dump(os, tio::to_json(res));
            return exit_ok;
        };
    });

    // radius -------------------------------------------------------------------
    std::string ra_n = "2..10";
    int ra_lo = 100, ra_hi = 450;
    Output ra_out;
    auto* radius = app.add_subcommand("radius", "Convergence radius estimates from coefficient decay");
    radius->add_option("--n", ra_n, "Dimensions, e.g. 2..10 or 2,5")->capture_default_str();
    radius->add_option("--window-lo", ra_lo, "Fit window start")->capture_default_str();
    radius->add_option("--window-hi", ra_hi, "Fit window end")->capture_default_str();
    add_output(radius, ra_out, "csv");
    radius->callback([&] {
        action = [&] {
            const auto dims = parse_int_list(ra_n);
            std::vector<std::pair<int, double>> rows;
            for (int d : dims) rows.emplace_back(d, estimate_radius(coefficients(Dimension(d), ra_hi), ra_lo, ra_hi));
            auto& os = ra_out.stream();
            if (ra_out.format == "csv") {
                tio::write_comment(os, {{"command", "radius"}, {"n", ra_n}, {"window", std::to_string(ra_lo) + ".." +
                                                                                       std::to_string(ra_hi)}});
                os << "n,radius\n";
                for (const auto& [d, r] : rows) os << d << ',' << tio::fmt(r) << '\n';
            } else {
                tio::Json j = tio::Json::array();
                for (const auto& [d, r] : rows) j.push_back({{"n", d}, {"radius", r}});
                dump(os, j);
            }
            return exit_ok;
        };
    });

    // compare / validate -------------------------------------------------------
    int cm_n = 2;
    double cm_tol = 1e-4;
    PipelineOptions cm_opts;
    Output cm_out;
    auto* compare = app.add_subcommand("compare", "Pairwise deviations of series, shooting, regularized and 1/k");
    compare->add_option("--n", cm_n, "Dimension")->capture_default_str();
    compare->add_option("--tol", cm_tol, "Largest acceptable pairwise deviation")->capture_default_str();
    compare->add_option("--grid-lo", cm_opts.compare_lo, "Comparison grid start")->capture_default_str();
    compare->add_option("--grid-hi", cm_opts.compare_hi, "Comparison grid end")->capture_default_str();
    compare->add_option("--grid-points", cm_opts.compare_points, "Comparison grid size")->capture_default_str();
    add_output(compare, cm_out, "json");
    compare->callback([&] {
        action = [&] {
            const Dimension n(cm_n);
            cm_opts.r_max = std::max(cm_opts.r_max, cm_opts.compare_hi);
            const auto profiles = build_profiles(n, cm_opts);
            const auto cmp = compare_methods(profiles.comparable(), cm_opts.comparison_grid());
            dump(cm_out.stream(), {{"n", cm_n}, {"tol", cm_tol}, {"comparison", tio::to_json(cmp)}});
            return cmp.max_off_diagonal() <= cm_tol ? exit_ok : exit_numerical;
        };
    });

    int va_n = 2;
    PipelineOptions va_opts;
    Output va_out;
    auto* validate = app.add_subcommand("validate", "Full validation report; exit 0 pass, 1 fail, 2 inconclusive");
    validate->add_option("--n", va_n, "Dimension")->capture_default_str();
    add_integrator(validate, va_opts.integrator);
    add_output(validate, va_out, "json");
    validate->callback([&] {
        action = [&] {
            const Dimension n(va_n);
            const auto rep = validate_profiles(build_profiles(n, va_opts), va_opts);
            dump(va_out.stream(), tio::to_json(rep));
            switch (rep.verdict()) {
                case Verdict::pass: return exit_ok;
                case Verdict::inconclusive: return exit_inconclusive;
                case Verdict::fail: return exit_numerical;
            }
            return exit_numerical;
        };
    });

    // figure -------------------------------------------------------------------
    int fi_id = 2, fi_n = 2;
    double fi_eps = 0.5, fi_r_end = 1.0, fi_horizon = 12.0;
    std::string fi_k0 = "3..12", fi_values;
    Output fi_out;
    auto* figure = app.add_subcommand("figure", "Curve families: 1 forward shots, 2 and 3 backward shots");
    figure->add_option("--id", fi_id, "Figure 1, 2 or 3 (3 is 2 for log plots)")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
    figure->add_option("--n", fi_n, "Dimension")->capture_default_str();
    figure->add_option("--eps-step", fi_eps, "Spacing of the backward starting radii")->capture_default_str();
    figure->add_option("--k0", fi_k0, "Starting indices, e.g. 3..12")->capture_default_str();
    figure->add_option("--r-end", fi_r_end, "Backward shots end here")->capture_default_str();
    figure->add_option("--values", fi_values, "Forward initial values phi(1) (default: 11 spread over the trap)");
    figure->add_option("--horizon", fi_horizon, "Forward shot horizon")->capture_default_str();
    add_output(figure, fi_out, "csv");
    figure->callback([&] {
        action = [&] {
            const Dimension n(fi_n);
            n.require_profile_dimension();
            const double n1 = n.real() - 1.0;
            ShootingConfig sc;
            const auto translator = bisect_initial(n, fi_horizon, 1e-12, sc);
            std::vector<Curve> curves;
            tio::RunInfo info{{"command", "figure"}, {"id", std::to_string(fi_id)}, {"n", std::to_string(fi_n)}};
            if (fi_id == 1) {
                std::vector<double> values;
                if (fi_values.empty()) {
                    for (int i = 0; i <= 10; ++i) values.push_back(i / (10.0 * n1));
                } else {
                    values = parse_double_list(fi_values);
                }
                // Forward psi shots become phi curves on (e^-horizon, 1].
                for (auto& c : forward_family(n, values, fi_horizon, sc)) {
                    const auto p = psi_to_phi(c.trajectory, n);
                    Trajectory t;
                    t.r.assign(p.grid.begin(), p.grid.end());
                    t.y.assign(p.values.begin(), p.values.end());
                    curves.push_back({c.label, c.parameter, std::move(t)});
                }
                const auto p = psi_to_phi(translator, n);
                Trajectory t;
                t.r.assign(p.grid.begin(), p.grid.end());
                t.y.assign(p.values.begin(), p.values.end());
                curves.push_back({"translator", translator.a_star, std::move(t)});
                info.emplace_back("horizon", str(fi_horizon));
            } else {
                const auto k0 = parse_int_list(fi_k0);
                curves = backward_family(n, fi_eps, k0, fi_r_end, sc.integrator);
                double r_top = fi_r_end;
                for (int k : k0) r_top = std::max(r_top, fi_eps * k);
                Trajectory barrier, tr;
                for (std::size_t i = 0; i < translator.psi.r.size(); ++i) {
                    const double r = translator.psi.r[i];
                    if (r < fi_r_end || r > r_top) continue;
                    barrier.r.push_back(r);
                    barrier.y.push_back(std::exp(-r) / n1);
                    tr.r.push_back(r);
                    tr.y.push_back(translator.psi.y[i]);
                }
                curves.push_back({"upper_barrier", 0.0, std::move(barrier)});
                curves.push_back({"translator", translator.a_star, std::move(tr)});
                info.emplace_back("eps_step", str(fi_eps));
                info.emplace_back("k0", fi_k0);
                info.emplace_back("r_end", str(fi_r_end));
                info.emplace_back("scale", fi_id == 3 ? "log" : "linear");
            }
            tio::write_curves_csv(fi_out.stream(), curves, info);
            return exit_ok;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }
    try {
        return action();
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
}
