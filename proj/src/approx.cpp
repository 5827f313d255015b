#include "translator/approx.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace translator {

void BoundCheck::record(double r, double lhs, double rhs, double tol) {
    ++checked;
    const double excess = lhs - rhs;
    if (excess > worst_excess) {
        worst_excess = excess;
        worst_radius = r;
    }
    if (excess > tol) ++violations;
}

double barrier_band(const IntegratorConfig& config, double y) {
    return 10.0 * (config.abs_tol + config.rel_tol * std::abs(y));
}

namespace {

std::string describe(const char* what, double r, double y, double bound) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " violated at r = " << r << ": phi = " << y << ", bound " << bound;
    return msg.str();
}

}  // namespace

RadialProfile solve_one_over_k(Dimension n, int k, double r_max, const IntegratorConfig& config,
                               std::span<const double> stops, std::optional<double> initial_value) {
    n.require_profile_dimension();
    if (k < 1) throw DomainError("solve_one_over_k: k must be >= 1");
    const double r0 = 1.0 / k;
    if (!(r_max > r0)) throw DomainError("solve_one_over_k: r_max must exceed 1/k");
    const double y0 = initial_value.value_or(r0 / n.real());
    const double n1 = n.real() - 1.0;

    auto traj = integrate([n](double r, double y) { return phi_rhs(n, r, y); }, r0, y0, r_max, config, {stops});
    if (traj.termination != Termination::reached_end)
        throw NumericalFailure("solve_one_over_k: integration ended with " + std::string(to_string(traj.termination)));
    // Barriers are strict only after the start when the initial value is overridden.
    for (std::size_t i = 0; i < traj.r.size(); ++i) {
        const double r = traj.r[i], y = traj.y[i], tol = barrier_band(config, y);
        if (!initial_value || i > 0) {
            if (!(y > -tol)) throw NumericalFailure(describe("0 < phi_k", r, y, 0.0));
            if (!(y < r / n1 + tol)) throw NumericalFailure(describe("phi_k < r/(n-1)", r, y, r / n1));
        }
    }
    auto p = profile_from_trajectory(traj, n, Method::one_over_k);
    p.params["k"] = k;
    p.params["initial_value"] = y0;
    p.validate();
    return p;
}

std::vector<BoundCheck> check_one_over_k_bounds(const RadialProfile& profile, int k, const IntegratorConfig& config) {
    const double nd = profile.dimension.real(), n1 = nd - 1.0;
    const double r0 = 1.0 / k;
    BoundCheck positive{"phi_k > 0"}, below{"phi_k < r/(n-1)"}, lower{"phi_k > r/n"}, upper{"phi_k < r/n + eps r^2"};
    for (Eigen::Index i = 0; i < profile.size(); ++i) {
        const double r = profile.grid(i), y = profile.values(i), tol = barrier_band(config, y);
        positive.record(r, 0.0, y, tol);
        below.record(r, y, r / n1, tol);
        if (r > r0) {
            lower.record(r, r / nd, y, tol);
            upper.record(r, y, r / nd + r * r * r / (nd * n1 * n1 * n1), tol);
        }
    }
    return {positive, below, lower, upper};
}

RadialProfile solve_regularized(Dimension n, double eps, double r_max, const IntegratorConfig& config,
                                std::span<const double> stops) {
    n.require_profile_dimension();
    if (!(eps > 0.0)) throw DomainError("solve_regularized: eps must be positive");
    if (!(r_max > 0.0)) throw DomainError("solve_regularized: r_max must be positive");
    const double n1 = n.real() - 1.0;
    auto traj = integrate([n, eps](double r, double y) { return phi_eps_rhs(n, eps, r, y); }, 0.0, 0.0, r_max, config,
                          {stops});
    if (traj.termination != Termination::reached_end)
        throw NumericalFailure("solve_regularized: integration ended with " + std::string(to_string(traj.termination)));
    for (std::size_t i = 0; i < traj.r.size(); ++i) {
        const double r = traj.r[i], y = traj.y[i], tol = barrier_band(config, y);
        if (!(y >= -tol)) throw NumericalFailure(describe("0 <= phi_eps", r, y, 0.0));
        if (!(y <= (r + eps) / n1 + tol)) throw NumericalFailure(describe("phi_eps <= (r+eps)/(n-1)", r, y, (r + eps) / n1));
    }
    auto p = profile_from_trajectory(traj, n, Method::regularized);
    p.params["eps"] = eps;
    p.validate();
    return p;
}

std::vector<BoundCheck> check_regularized_barriers(const RadialProfile& profile, double eps,
                                                   const IntegratorConfig& config) {
    const double nd = profile.dimension.real(), n1 = nd - 1.0;
    BoundCheck envelope_lo{"phi_eps >= 0"}, envelope_hi{"phi_eps <= (r+eps)/(n-1)"};
    BoundCheck lower{"phi_eps >= r/n"}, upper{"phi_eps <= x + x^2, x = (r+eps)/n"};
    for (Eigen::Index i = 0; i < profile.size(); ++i) {
        const double r = profile.grid(i), y = profile.values(i), tol = barrier_band(config, y);
        envelope_lo.record(r, 0.0, y, tol);
        envelope_hi.record(r, y, (r + eps) / n1, tol);
        lower.record(r, r / nd, y, tol);
        if (eps <= nd / 3.0 && r <= nd / 3.0) {
            const double x = (r + eps) / nd;
            upper.record(r, y, x + x * x, tol);
        }
    }
    return {envelope_lo, envelope_hi, lower, upper};
}

double extrapolate_to_zero(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty()) throw DomainError("extrapolate_to_zero: need matching nonempty samples");
    std::vector<double> p(y.begin(), y.end());
    const std::size_t m = x.size();
    for (std::size_t level = 1; level < m; ++level) {
        for (std::size_t i = 0; i + level < m; ++i) {
            const double xi = x[i], xj = x[i + level];
            if (xi == xj) throw DomainError("extrapolate_to_zero: repeated abscissa");
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    return p[0];
}

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

Eigen::VectorXd sorted_grid(std::span<const double> r_grid) {
    std::vector<double> g(r_grid.begin(), r_grid.end());
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    if (g.empty()) throw DomainError("sweep: empty evaluation grid");
    if (g.front() < 0.0) throw DomainError("sweep: grid radii must be non-negative");
    return Eigen::Map<Eigen::VectorXd>(g.data(), static_cast<Eigen::Index>(g.size()));
}

void fill_differences(FamilySweep& sw) {
    for (Eigen::Index j = 1; j < sw.values.cols(); ++j) {
        double d = 0.0;
        for (Eigen::Index i = 0; i < sw.values.rows(); ++i) {
            const double a = sw.values(i, j - 1), b = sw.values(i, j);
            if (std::isnan(a) || std::isnan(b)) continue;
            d = std::max(d, std::abs(b - a));
        }
        sw.successive_differences.push_back(d);
    }
}

}  // namespace

FamilySweep sweep_regularized(Dimension n, std::span<const double> eps_list, std::span<const double> r_grid,
                              const SweepOptions& options) {
    n.require_profile_dimension();
    if (eps_list.empty()) throw DomainError("sweep_regularized: empty eps list");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1])) throw DomainError("sweep_regularized: eps list must strictly decrease");
    const int levels = options.extrapolation_levels;
    if (levels < 1 || levels > static_cast<int>(eps_list.size()))
        throw DomainError("sweep_regularized: extrapolation_levels must lie in [1, ladder length]");

    FamilySweep sw;
    sw.n = n;
    sw.method = Method::regularized;
    sw.parameters.assign(eps_list.begin(), eps_list.end());
    sw.grid = sorted_grid(r_grid);
    const Eigen::Index m = sw.grid.size();
    const auto members = static_cast<Eigen::Index>(eps_list.size());
    sw.values.resize(m, members);
    Eigen::MatrixXd derivs(m, members);
    const double r_max = sw.grid(m - 1);
    if (!(r_max > 0.0)) throw DomainError("sweep_regularized: grid must contain a positive radius");
    const std::span<const double> stops(sw.grid.data(), static_cast<std::size_t>(m));

    for (Eigen::Index j = 0; j < members; ++j) {
        const double eps = eps_list[static_cast<std::size_t>(j)];
        auto p = solve_regularized(n, eps, r_max, options.integrator, stops);
        for (Eigen::Index i = 0; i < m; ++i) {
            const double r = sw.grid(i);
            sw.values(i, j) = p.value_at(r);
            derivs(i, j) = phi_eps_rhs(n, eps, r, sw.values(i, j));
        }
        for (auto& c : check_regularized_barriers(p, eps, options.integrator)) sw.bound_checks.push_back(std::move(c));
        sw.profiles.push_back(std::move(p));
    }
    fill_differences(sw);

    // phi_{eps_{j}} > phi_{eps_{j+1}} at every r > 0.
    for (Eigen::Index j = 1; j < members; ++j) {
        for (Eigen::Index i = 0; i < m; ++i) {
            const double r = sw.grid(i);
            if (r <= 0.0) continue;
            const double big = sw.values(i, j - 1), small = sw.values(i, j);
            const double tol = barrier_band(options.integrator, big);
            ++sw.monotone_checked;
            sw.monotone_worst = std::max(sw.monotone_worst, small - big);
            if (small - big > tol) {
                std::ostringstream msg;
                msg.precision(17);
                msg << "sweep_regularized: monotonicity in eps fails at r = " << r << ": phi(" << eps_list[j]
                    << ") = " << small << " > phi(" << eps_list[j - 1] << ") = " << big;
                throw NumericalFailure(msg.str());
            }
            if (small - big > -tol) ++sw.monotone_ties;
        }
    }

    // Limit on r > 0 from the `levels` smallest eps.
    std::vector<double> xs(eps_list.end() - levels, eps_list.end());
    std::vector<double> ys(static_cast<std::size_t>(levels)), ds(static_cast<std::size_t>(levels));
    std::vector<double> gr, gv, gd;
    for (Eigen::Index i = 0; i < m; ++i) {
        if (sw.grid(i) <= 0.0) continue;
        for (int l = 0; l < levels; ++l) {
            ys[static_cast<std::size_t>(l)] = sw.values(i, members - levels + l);
            ds[static_cast<std::size_t>(l)] = derivs(i, members - levels + l);
        }
        gr.push_back(sw.grid(i));
        gv.push_back(extrapolate_to_zero(xs, ys));
        gd.push_back(extrapolate_to_zero(xs, ds));
    }
    auto& lim = sw.limit;
    const auto lm = static_cast<Eigen::Index>(gr.size());
    lim.grid = Eigen::Map<Eigen::VectorXd>(gr.data(), lm);
    lim.values = Eigen::Map<Eigen::VectorXd>(gv.data(), lm);
    lim.derivs = Eigen::Map<Eigen::VectorXd>(gd.data(), lm);
    lim.dimension = n;
    lim.method = Method::regularized;
    lim.params = {{"eps", eps_list.back()}, {"extrapolation_levels", levels}};
    lim.validate();
    return sw;
}

FamilySweep sweep_one_over_k(Dimension n, std::span<const int> k_list, std::span<const double> r_grid,
                             const SweepOptions& options) {
    n.require_profile_dimension();
    if (k_list.empty()) throw DomainError("sweep_one_over_k: empty k list");
    for (std::size_t i = 0; i < k_list.size(); ++i) {
        if (k_list[i] < 1) throw DomainError("sweep_one_over_k: k must be >= 1");
        if (i > 0 && !(k_list[i] > k_list[i - 1])) throw DomainError("sweep_one_over_k: k list must strictly increase");
    }

    FamilySweep sw;
    sw.n = n;
    sw.method = Method::one_over_k;
    for (int k : k_list) sw.parameters.push_back(k);
    sw.grid = sorted_grid(r_grid);
    const Eigen::Index m = sw.grid.size();
    const auto members = static_cast<Eigen::Index>(k_list.size());
    sw.values.setConstant(m, members, nan);
    const double r_max = sw.grid(m - 1);
    const std::span<const double> stops(sw.grid.data(), static_cast<std::size_t>(m));

    for (Eigen::Index j = 0; j < members; ++j) {
        const int k = k_list[static_cast<std::size_t>(j)];
        auto p = solve_one_over_k(n, k, r_max, options.integrator, stops, options.initial_value);
        for (Eigen::Index i = 0; i < m; ++i)
            if (p.covers(sw.grid(i))) sw.values(i, j) = p.value_at(sw.grid(i));
        if (!options.initial_value)
            for (auto& c : check_one_over_k_bounds(p, k, options.integrator)) sw.bound_checks.push_back(std::move(c));
        sw.profiles.push_back(std::move(p));
    }
    fill_differences(sw);

    // Limit candidate: the largest k on its part of the grid.
    const Eigen::Index last = members - 1;
    std::vector<double> gr, gv, gd;
    for (Eigen::Index i = 0; i < m; ++i) {
        const double v = sw.values(i, last);
        if (std::isnan(v)) continue;
        gr.push_back(sw.grid(i));
        gv.push_back(v);
        gd.push_back(phi_rhs(n, sw.grid(i), v));
    }
    auto& lim = sw.limit;
    const auto lm = static_cast<Eigen::Index>(gr.size());
    if (lm == 0) throw DomainError("sweep_one_over_k: no grid point lies in [1/k, r_max]");
    lim.grid = Eigen::Map<Eigen::VectorXd>(gr.data(), lm);
    lim.values = Eigen::Map<Eigen::VectorXd>(gv.data(), lm);
    lim.derivs = Eigen::Map<Eigen::VectorXd>(gd.data(), lm);
    lim.dimension = n;
    lim.method = Method::one_over_k;
    lim.params = {{"k", k_list.back()}};
    lim.validate();
    return sw;
}

std::vector<double> default_eps_ladder() {
    std::vector<double> out;
    for (int j = 1; j <= 10; ++j) out.push_back(std::ldexp(1.0, -j));
    return out;
}

std::vector<int> default_k_ladder() { return {4, 16, 64, 256}; }

}  // namespace translator
