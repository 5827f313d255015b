#include "translator/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace translator {

std::string_view to_string(ShotClass c) {
    switch (c) {
        case ShotClass::exceeded_upper: return "exceeded_upper";
        case ShotClass::dropped_below_zero: return "dropped_below_zero";
        case ShotClass::alive: return "alive";
    }
    return "unknown";
}

void ShootingConfig::validate() const {
    integrator.validate();
    if (!(horizon_step > 0.0)) throw DomainError("shooting: horizon_step must be positive");
    if (!(band >= 0.0)) throw DomainError("shooting: band must be non-negative");
    if (!(gap_tol > 0.0)) throw DomainError("shooting: gap_tol must be positive");
    if (max_shots < 1) throw DomainError("shooting: max_shots must be >= 1");
}

namespace {

ShotClass classify_point(double n_minus_1, double band, double r, double psi) {
    const double e = std::exp(-r);
    if (psi < -band * e) return ShotClass::dropped_below_zero;
    if (n_minus_1 * psi - e > band * e) return ShotClass::exceeded_upper;
    return ShotClass::alive;
}

}  // namespace

ShotOutcome shoot_from(Dimension n, double r0, double value, double horizon, const ShootingConfig& config,
                       std::span<const double> stops) {
    n.require_profile_dimension();
    config.validate();
    if (!(horizon > r0)) throw DomainError("shoot: horizon must exceed the starting radius");
    const double n1 = n.real() - 1.0;

    ShotOutcome out;
    if (const auto c = classify_point(n1, config.band, r0, value); c != ShotClass::alive) {
        out.classification = c;
        out.exit_radius = r0;
        out.trajectory.r = {r0};
        out.trajectory.y = {value};
        out.trajectory.dy = {psi_rhs(n, r0, value)};
        out.trajectory.termination = Termination::halted;
        return out;
    }

    // psi is of size e^-r at the far end, so the absolute tolerance must be too.
    IntegratorConfig ic = config.integrator;
    ic.abs_tol = std::min(ic.abs_tol, ic.rel_tol * std::exp(-horizon) / n1);
    IntegrateOptions opts;
    opts.stops = stops;
    opts.stop_when = [&](double r, double y) { return classify_point(n1, config.band, r, y) != ShotClass::alive; };
    out.trajectory = integrate([n](double r, double y) { return psi_rhs(n, r, y); }, r0, value, horizon, ic, opts);

    const auto& t = out.trajectory;
    out.exit_radius = t.back_r();
    switch (t.termination) {
        case Termination::reached_end: out.classification = ShotClass::alive; break;
        case Termination::blew_up_positive: out.classification = ShotClass::exceeded_upper; break;
        case Termination::blew_up_negative: out.classification = ShotClass::dropped_below_zero; break;
        case Termination::halted: out.classification = classify_point(n1, config.band, t.back_r(), t.back_y()); break;
        case Termination::step_underflow: {
            std::ostringstream msg;
            msg << "shoot: step underflow at r = " << t.back_r() << " before classification (start " << value
                << " at r = " << r0 << ")";
            throw NumericalFailure(msg.str());
        }
    }
    return out;
}

ShotOutcome shoot_once(Dimension n, double a, double horizon, const ShootingConfig& config) {
    return shoot_from(n, 0.0, a, horizon, config);
}

namespace {

// Appends the points of `t` with last_r < r <= r_end.
void append_segment(Trajectory& acc, const Trajectory& t, double r_end) {
    for (std::size_t i = 0; i < t.r.size() && t.r[i] <= r_end; ++i) {
        if (!acc.r.empty() && t.r[i] <= acc.r.back()) continue;
        acc.r.push_back(t.r[i]);
        acc.y.push_back(t.y[i]);
        acc.dy.push_back(t.dy[i]);
    }
}

// y of `t` at a radius it was forced to land on.
double landed_value(const Trajectory& t, double r) {
    const auto it = std::lower_bound(t.r.begin(), t.r.end(), r);
    if (it == t.r.end() || *it != r) return t.value_at(r);
    return t.y[static_cast<std::size_t>(it - t.r.begin())];
}

}  // namespace

ShootingResult bisect_initial(Dimension n, double target_horizon, double a_tol, const ShootingConfig& config) {
    n.require_profile_dimension();
    config.validate();
    if (!(target_horizon > 0.0)) throw DomainError("bisect_initial: target horizon must be positive");
    if (!(a_tol > 0.0)) throw DomainError("bisect_initial: a_tol must be positive");

    const double n1 = n.real() - 1.0;
    const double step = config.horizon_step;
    // A shot still inside the trap this far past the target agrees with the
    // bounded solution to about e^{-30} at the target.
    const double cap = target_horizon + std::ceil(30.0 / n.real() / step) * step;
    std::vector<double> schedule;
    for (int k = 1; k * step <= cap + 1e-12; ++k) schedule.push_back(k * step);
    std::vector<double> stops = schedule;
    for (double rho : config.phi_radii) {
        if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("bisect_initial: phi_radii must lie in (0, 1]");
        stops.push_back(-std::log(rho));
    }

    ShootingResult res;
    res.n = n;
    res.final_horizon = target_horizon;
    int shots = 0;
    auto shoot = [&](double anchor, double value, double horizon) {
        if (++shots > config.max_shots)
            throw NumericalFailure("bisect_initial: exceeded max_shots = " + std::to_string(config.max_shots));
        auto s = shoot_from(n, anchor, value, horizon, config, stops);
        res.trace.push_back({anchor, value, horizon, s.classification, s.exit_radius});
        return s;
    };

    double anchor = 0.0, lo = 0.0, hi = 1.0 / n1;
    bool first_phase = true;
    while (true) {
        res.anchors.push_back(anchor);
        ShotOutcome lo_shot = shoot(anchor, lo, cap);
        ShotOutcome hi_shot = shoot(anchor, hi, cap);
        if (lo_shot.classification != ShotClass::dropped_below_zero ||
            hi_shot.classification != ShotClass::exceeded_upper) {
            std::ostringstream msg;
            msg << "bisect_initial: bracket [" << lo << ", " << hi << "] at r = " << anchor
                << " does not straddle the bounded solution (" << to_string(lo_shot.classification) << ", "
                << to_string(hi_shot.classification) << ")";
            throw NumericalFailure(msg.str());
        }
        double horizon = std::min(cap, anchor + step);
        res.bracket_history.push_back({anchor, lo, hi, horizon});

        std::optional<ShotOutcome> survivor;
        while (true) {
            const double mid = 0.5 * (lo + hi);
            if (!(mid > lo && mid < hi)) break;
            ShotOutcome s = shoot(anchor, mid, horizon);
            if (s.classification == ShotClass::alive) {
                if (horizon >= cap) {
                    survivor = std::move(s);
                    lo = hi = mid;
                    break;
                }
                horizon = std::min(cap, horizon + step);
                continue;
            }
            if (s.classification == ShotClass::dropped_below_zero) {
                lo = mid;
                lo_shot = std::move(s);
            } else {
                hi = mid;
                hi_shot = std::move(s);
            }
            res.bracket_history.push_back({anchor, lo, hi, horizon});
        }

        if (first_phase) {
            res.a_star = 0.5 * (lo + hi);
            if (hi - lo >= a_tol) {
                std::ostringstream msg;
                msg << "bisect_initial: initial-value bracket width " << hi - lo << " exceeds a_tol " << a_tol;
                throw NumericalFailure(msg.str());
            }
            first_phase = false;
        }

        if (survivor) {
            append_segment(res.psi, survivor->trajectory, target_horizon);
            break;
        }

        // Furthest schedule point up to which the bracketing shots agree.
        const double reach = std::min(lo_shot.exit_radius, hi_shot.exit_radius);
        double trusted = anchor;
        for (double t : schedule) {
            if (t <= anchor) continue;
            if (t > reach) break;
            const double gap =
                n1 * std::exp(t) * std::abs(landed_value(hi_shot.trajectory, t) - landed_value(lo_shot.trajectory, t));
            if (gap > config.gap_tol) break;
            trusted = t;
        }
        if (trusted >= target_horizon) {
            append_segment(res.psi, lo_shot.trajectory, target_horizon);
            break;
        }
        if (trusted <= anchor) {
            std::ostringstream msg;
            msg << "bisect_initial: bracket collapsed at r = " << anchor << " without reaching " << target_horizon
                << " (shots exit at " << lo_shot.exit_radius << " and " << hi_shot.exit_radius << ")";
            throw NumericalFailure(msg.str());
        }
        append_segment(res.psi, lo_shot.trajectory, trusted);
        lo = landed_value(lo_shot.trajectory, trusted);
        hi = landed_value(hi_shot.trajectory, trusted);
        anchor = trusted;
    }

    if (res.psi.r.empty() || res.psi.r.back() < target_horizon)
        throw NumericalFailure("bisect_initial: accepted trajectory stops short of the target horizon");
    res.psi.termination = Termination::reached_end;
    return res;
}

RadialProfile psi_to_phi(const Trajectory& psi, Dimension n) {
    const auto m = static_cast<Eigen::Index>(psi.r.size());
    if (m == 0) throw DomainError("psi_to_phi: empty trajectory");
    RadialProfile p;
    p.grid.resize(m);
    p.values.resize(m);
    p.derivs.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto j = static_cast<std::size_t>(m - 1 - i);
        const double r = psi.r[j];
        p.grid(i) = std::exp(-r);
        p.values(i) = psi.y[j];
        p.derivs(i) = -std::exp(r) * psi.dy[j];
    }
    p.dimension = n;
    p.method = Method::shooting;
    p.validate();
    return p;
}

RadialProfile psi_to_phi(const ShootingResult& result, Dimension n) {
    RadialProfile p = psi_to_phi(result.psi, n);
    p.params["a_star"] = result.a_star;
    p.params["horizon"] = result.final_horizon;
    return p;
}

std::vector<Curve> forward_family(Dimension n, std::span<const double> initial_values, double horizon,
                                  const ShootingConfig& config) {
    std::vector<Curve> out;
    for (double a : initial_values) {
        auto shot = shoot_once(n, a, horizon, config);
        std::ostringstream label;
        label << "a=" << a << ":" << to_string(shot.classification);
        out.push_back({label.str(), a, std::move(shot.trajectory)});
    }
    return out;
}

std::vector<Curve> backward_family(Dimension n, double eps, std::span<const int> k0_values, double r_end,
                                   const IntegratorConfig& config) {
    n.require_profile_dimension();
    if (!(eps > 0.0)) throw DomainError("backward_family: eps must be positive");
    const double n1 = n.real() - 1.0;
    auto rhs = [n](double r, double y) { return psi_rhs(n, r, y); };
    std::vector<Curve> out;
    for (int k0 : k0_values) {
        const double r = eps * k0;
        if (!(r > r_end)) throw DomainError("backward_family: eps * k0 must exceed r_end");
        IntegratorConfig ic = config;
        ic.abs_tol = std::min(ic.abs_tol, ic.rel_tol * std::exp(-r) / n1);
        out.push_back({"minus k0=" + std::to_string(k0), r, integrate(rhs, r, 0.0, r_end, ic)});
        out.push_back({"plus k0=" + std::to_string(k0), r, integrate(rhs, r, std::exp(-r) / n1, r_end, ic)});
    }
    return out;
}

}  // namespace translator
