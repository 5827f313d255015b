#include "translator/picard.hpp"

#include <cmath>
#include <sstream>

namespace translator {

PicardConfig PicardConfig::defaults_for(Dimension n) {
    n.require_profile_dimension();
    PicardConfig c;
    c.lipschitz = n.real();
    c.p = n.real() + 1.0;
    c.ball_radius = 1.1 / n.real();
    return c;
}

int default_truncation(Dimension n) { return std::max(3, (n.value() + 3) / 2); }

void PicardConfig::validate() const {
    if (!(p > std::max(lipschitz, 1.0))) throw DomainError("picard: need p > max{L, 1}");
    if (!(interval_end > 0.0 && interval_end <= 1.0)) throw DomainError("picard: need S in (0, 1]");
    if (!(ball_radius > 0.0)) throw DomainError("picard: need R > 0");
    if (grid_size < 2) throw DomainError("picard: grid_size must be >= 2");
    if (!(grid_span > 0.0 && grid_span < 1.0)) throw DomainError("picard: grid_span must lie in (0, 1)");
    if (max_iters < 1) throw DomainError("picard: max_iters must be >= 1");
    if (!(fixed_point_tol > 0.0)) throw DomainError("picard: fixed_point_tol must be positive");
}

Eigen::VectorXd geometric_grid(double interval_end, int size, double span) {
    Eigen::VectorXd g(size);
    const double log_lo = std::log(span);
    for (int i = 0; i < size; ++i) {
        const double t = size == 1 ? 0.0 : static_cast<double>(i) / (size - 1);
        g(i) = interval_end * std::exp(log_lo * (1.0 - t));
    }
    g(size - 1) = interval_end;
    return g;
}

double weighted_norm(const WeightedGridFunction& f) {
    double best = 0.0;
    for (Eigen::Index i = 0; i < f.grid.size(); ++i)
        best = std::max(best, std::abs(f.values(i)) * std::pow(f.grid(i), -f.p));
    return best;
}

namespace {

struct StepContext {
    Polynomial<double> h;
    Polynomial<double> residual;  // G(h)
    double n_minus_1;
};

StepContext make_context(const ApproxPolynomial& h, Dimension n) {
    return {to_double(h.h), to_double(residual_polynomial(h)), n.real() - 1.0};
}

// f(s, a0 + d) - f(s, a0) without forming the O(1) values.
double f_increment(double s, double a0, double d, double n_minus_1) {
    const double s2 = s * s;
    return s2 * (2.0 * a0 * d + d * d) * (1.0 - n_minus_1 * (a0 + d)) - (1.0 + s2 * a0 * a0) * n_minus_1 * d;
}

double f_value(double s, double a, double n_minus_1) { return (1.0 + s * s * a * a) * (1.0 - n_minus_1 * a); }

WeightedGridFunction step_impl(const WeightedGridFunction& phi, const StepContext& ctx, const PicardConfig& config) {
    const Eigen::Index m = phi.grid.size();
    WeightedGridFunction out{phi.grid, Eigen::VectorXd(m), phi.p};
    const double two_r = 2.0 * config.ball_radius;
    double prev_s = 0.0, prev_g = 0.0, acc = 0.0;  // integrand vanishes at s = 0
    for (Eigen::Index i = 0; i < m; ++i) {
        const double s = phi.grid(i);
        const double a0 = ctx.h.evaluate(s) / s;
        const double d = phi.values(i) / s;
        if (std::abs(a0 + d) > two_r * (1.0 + 1e-12)) {
            std::ostringstream msg;
            msg << "picard_step: |(h+phi)(s)/s| = " << std::abs(a0 + d) << " leaves the ball of radius 2R = " << two_r
                << " at s = " << s;
            throw NumericalFailure(msg.str());
        }
        const double g = -ctx.residual.evaluate(s) + f_increment(s, a0, d, ctx.n_minus_1);
        acc += 0.5 * (s - prev_s) * (g + prev_g);
        out.values(i) = acc;
        prev_s = s;
        prev_g = g;
    }
    return out;
}

}  // namespace

WeightedGridFunction picard_step(const WeightedGridFunction& phi, const ApproxPolynomial& h, Dimension n,
                                 const PicardConfig& config) {
    config.validate();
    const double norm = weighted_norm(phi);
    if (norm > config.ball_radius * (1.0 + 1e-12))
        throw NumericalFailure("picard_step: ||phi|| = " + std::to_string(norm) + " exceeds R = " +
                               std::to_string(config.ball_radius));
    return step_impl(phi, make_context(h, n), config);
}

PicardSolution picard_solve(Dimension n, int truncation, PicardConfig config) {
    n.require_profile_dimension();
    config.validate();
    const ApproxPolynomial h = approx_polynomial(n, truncation);
    const StepContext ctx = make_context(h, n);
    const double n1 = n.real() - 1.0;
    const double R = config.ball_radius;
    const double defect_bound = (config.p - config.lipschitz) / config.p * R;

    // Hypothesis search: halve S until every bound holds on the grid.
    std::string last_violation;
    WeightedGridFunction zero;
    WeightedGridFunction t0;
    double lip = 0.0;
    bool ok = false;
    for (int halving = 0; halving <= config.max_halvings; ++halving, config.interval_end *= 0.5) {
        const double S = config.interval_end;
        lip = n1 + 2.0 * S * S * (2.0 * R) + 3.0 * n1 * S * S * (2.0 * R) * (2.0 * R);
        if (lip > config.lipschitz) {
            last_violation = "Lipschitz bound " + std::to_string(lip) + " > L = " + std::to_string(config.lipschitz);
            continue;
        }
        zero = {geometric_grid(S, config.grid_size, config.grid_span), Eigen::VectorXd::Zero(config.grid_size),
                config.p};
        bool h_in_ball = true;
        for (Eigen::Index i = 0; i < zero.grid.size(); ++i)
            if (std::abs(ctx.h.evaluate(zero.grid(i)) / zero.grid(i)) > R) h_in_ball = false;
        if (!h_in_ball) {
            last_violation = "|h(s)/s| exceeds R";
            continue;
        }
        t0 = step_impl(zero, ctx, config);
        const double defect = weighted_norm(t0);
        if (defect > defect_bound) {
            last_violation = "||T(0)|| = " + std::to_string(defect) + " > (p-L)/p R = " + std::to_string(defect_bound);
            continue;
        }
        ok = true;
        break;
    }
    if (!ok) throw NumericalFailure("picard_solve: approximate-solution hypothesis fails: " + last_violation);

    PicardDiagnostics diag;
    diag.interval_end = config.interval_end;
    diag.initial_defect = weighted_norm(t0);
    diag.defect_bound = defect_bound;
    diag.lipschitz_bound = lip;

    WeightedGridFunction current = t0;  // phi_1 = T(phi_0), phi_0 = 0
    double prev_diff = weighted_norm(t0);
    diag.difference_history.push_back(prev_diff);
    diag.iterate_norms.push_back(weighted_norm(current));
    diag.iters = 1;
    bool converged = prev_diff < config.fixed_point_tol;
    while (!converged && diag.iters < config.max_iters) {
        if (diag.iterate_norms.back() > R)
            throw NumericalFailure("picard_solve: iterate left the ball of radius R");
        WeightedGridFunction next = step_impl(current, ctx, config);
        WeightedGridFunction delta{next.grid, next.values - current.values, config.p};
        const double diff = weighted_norm(delta);
        diag.ratio_history.push_back(prev_diff > 0.0 ? diff / prev_diff : 0.0);
        diag.difference_history.push_back(diff);
        current = std::move(next);
        diag.iterate_norms.push_back(weighted_norm(current));
        ++diag.iters;
        prev_diff = diff;
        converged = diff < config.fixed_point_tol;
    }
    diag.final_residual = prev_diff;
    for (double q : diag.ratio_history) diag.empirical_contraction_ratio = std::max(diag.empirical_contraction_ratio, q);
    if (!converged) {
        throw NumericalFailure("picard_solve: no convergence in " + std::to_string(config.max_iters) +
                               " iterations, last ratio " +
                               std::to_string(diag.ratio_history.empty() ? 0.0 : diag.ratio_history.back()));
    }

    const Eigen::Index m = current.grid.size();
    RadialProfile prof;
    prof.grid.resize(m + 1);
    prof.values.resize(m + 1);
    prof.derivs.resize(m + 1);
    prof.grid(0) = 0.0;
    prof.values(0) = 0.0;
    prof.derivs(0) = 1.0 / n.real();
    for (Eigen::Index i = 0; i < m; ++i) {
        const double s = current.grid(i);
        const double u = ctx.h.evaluate(s) + current.values(i);
        prof.grid(i + 1) = s;
        prof.values(i + 1) = u;
        prof.derivs(i + 1) = f_value(s, u / s, n1);
    }
    prof.dimension = n;
    prof.method = Method::picard;
    prof.params = {{"p", config.p},
                   {"L", config.lipschitz},
                   {"R", R},
                   {"S", config.interval_end},
                   {"truncation", truncation}};
    prof.validate();
    return {std::move(prof), std::move(current), std::move(diag)};
}

}  // namespace translator
