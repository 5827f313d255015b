#include "translator/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace translator {

void IntegratorConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw DomainError("integrator tolerances must be positive");
    if (!(min_step > 0.0) || !(min_step <= max_step))
        throw DomainError("integrator steps must satisfy 0 < min_step <= max_step");
    if (!(blowup_threshold > 0.0)) throw DomainError("blow-up threshold must be positive");
}

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::reached_end: return "reached_end";
        case Termination::blew_up_positive: return "blew_up_positive";
        case Termination::blew_up_negative: return "blew_up_negative";
        case Termination::step_underflow: return "step_underflow";
        case Termination::halted: return "halted";
    }
    return "unknown";
}

std::string_view to_string(Method m) {
    switch (m) {
        case Method::series: return "series";
        case Method::shooting: return "shooting";
        case Method::regularized: return "regularized";
        case Method::one_over_k: return "one_over_k";
        case Method::picard: return "picard";
    }
    return "unknown";
}

namespace {

double interpolate(std::span<const double> xs, std::span<const double> ys, double x) {
    const bool increasing = xs.front() <= xs.back();
    const double lo = increasing ? xs.front() : xs.back();
    const double hi = increasing ? xs.back() : xs.front();
    if (x < lo || x > hi) throw DomainError("interpolation point outside the sampled range");
    if (xs.size() == 1) return ys.front();
    std::size_t j;
    if (increasing) {
        j = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
    } else {
        j = static_cast<std::size_t>(
            std::upper_bound(xs.begin(), xs.end(), x, std::greater<>()) - xs.begin());
    }
    j = std::clamp<std::size_t>(j, 1, xs.size() - 1);
    const double x0 = xs[j - 1], x1 = xs[j];
    if (x1 == x0) return ys[j];
    const double t = (x - x0) / (x1 - x0);
    return (1.0 - t) * ys[j - 1] + t * ys[j];
}

}  // namespace

double Trajectory::value_at(double radius) const { return interpolate(r, y, radius); }

bool RadialProfile::covers(double r) const {
    return grid.size() > 0 && r >= r_min() && r <= r_max();
}

double RadialProfile::value_at(double r) const {
    if (!covers(r)) {
        throw DomainError("radius " + std::to_string(r) + " outside " + std::string(to_string(method)) +
                          " profile range [" + std::to_string(r_min()) + ", " + std::to_string(r_max()) + "]");
    }
    return interpolate({grid.data(), static_cast<std::size_t>(grid.size())},
                       {values.data(), static_cast<std::size_t>(values.size())}, r);
}

void RadialProfile::validate() const {
    if (grid.size() == 0) throw DomainError("profile grid is empty");
    if (values.size() != grid.size() || derivs.size() != grid.size())
        throw DomainError("profile values/derivs length differs from grid");
    for (Eigen::Index i = 1; i < grid.size(); ++i)
        if (!(grid(i) > grid(i - 1))) throw DomainError("profile grid not strictly increasing");
    if (grid(0) == 0.0 && values(0) != 0.0) throw DomainError("profile value at r = 0 must be 0");
}

// Dormand-Prince 5(4) tableau.
namespace dp {
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
}  // namespace dp

Trajectory integrate(const ScalarField& rhs, double r0, double y0, double r1,
                     const IntegratorConfig& config, const IntegrateOptions& options) {
    config.validate();
    const double dir = r1 >= r0 ? 1.0 : -1.0;
    // Work in s = dir * r so that s always increases.
    auto f = [&](double s, double y) { return dir * rhs(dir * s, y); };
    const double s0 = dir * r0, s1 = dir * r1;

    std::vector<double> targets;
    for (double stop : options.stops) {
        const double s = dir * stop;
        if (s > s0 && s < s1) targets.push_back(s);
    }
    targets.push_back(s1);
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

    Trajectory out;
    double s = s0, y = y0;
    double k1 = f(s, y);
    out.r.push_back(r0);
    out.y.push_back(y0);
    out.dy.push_back(dir * k1);
    if (s0 == s1) return out;

    auto scale = [&](double a, double b) {
        return config.abs_tol + config.rel_tol * std::max(std::abs(a), std::abs(b));
    };

    // Starting step (Hairer, Norsett & Wanner II.4).
    double h;
    {
        const double sc = scale(y, y);
        const double d0 = std::abs(y) / sc, d1 = std::abs(k1) / sc;
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, s1 - s0);
        const double y1 = y + h0 * k1;
        const double d2 = std::abs(f(s + h0, y1) - k1) / sc / h0;
        const double h1 = std::max(d1, d2) <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                                    : std::pow(0.01 / std::max(d1, d2), 1.0 / 5.0);
        h = std::min({100.0 * h0, h1, config.max_step, s1 - s0});
        h = std::max(h, config.min_step);
    }

    std::size_t target_idx = 0;
    double err_prev = 1e-4;
    constexpr double safety = 0.9, alpha = 0.7 / 5.0, beta = 0.4 / 5.0;
    constexpr double fac_min = 0.2, fac_max = 5.0;

    while (true) {
        const double target = targets[target_idx];
        bool landing = false;
        double step = std::min(h, config.max_step);
        if (s + step >= target || (target - (s + step)) < 1e-12 * std::max(1.0, std::abs(target))) {
            step = target - s;
            landing = true;
        }

        using namespace dp;
        const double k2 = f(s + c2 * step, y + step * a21 * k1);
        const double k3 = f(s + c3 * step, y + step * (a31 * k1 + a32 * k2));
        const double k4 = f(s + c4 * step, y + step * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = f(s + c5 * step, y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 = f(s + step, y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double k7 = f(s + step, y_new);
        const double err_est = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double err = std::abs(err_est) / scale(y, y_new);

        if (!std::isfinite(err) || !std::isfinite(y_new) || err > 1.0) {
            const double fac = std::isfinite(err) ? std::max(fac_min, safety * std::pow(err, -alpha)) : fac_min;
            h = step * std::min(1.0, fac);
            if (h < config.min_step) {
                out.termination = Termination::step_underflow;
                return out;
            }
            continue;
        }

        s = landing ? target : s + step;
        y = y_new;
        k1 = k7;
        out.r.push_back(dir * s);
        out.y.push_back(y);
        out.dy.push_back(dir * k7);

        if (std::abs(y) > config.blowup_threshold) {
            out.termination = y > 0 ? Termination::blew_up_positive : Termination::blew_up_negative;
            return out;
        }
        if (options.stop_when && options.stop_when(dir * s, y)) {
            out.termination = Termination::halted;
            return out;
        }
        if (landing) {
            if (++target_idx == targets.size()) {
                out.termination = Termination::reached_end;
                return out;
            }
        }

        double fac = safety * std::pow(std::max(err, 1e-10), -alpha) * std::pow(err_prev, beta);
        fac = std::clamp(fac, fac_min, fac_max);
        err_prev = std::max(err, 1e-4);
        // A landing step may be artificially short; do not let it shrink h.
        h = landing ? std::max(h, step * fac) : step * fac;
        h = std::min(h, config.max_step);
    }
}

std::pair<double, double> extension_bounds(Dimension n, double r0, double a, double r) {
    n.require_profile_dimension();
    if (!(r0 > 0.0) || r < r0) throw DomainError("extension_bounds requires r >= r0 > 0");
    return {std::min(0.0, a), std::max(r / (n.real() - 1.0), a)};
}

RadialProfile profile_from_trajectory(const Trajectory& traj, Dimension n, Method method) {
    RadialProfile p;
    const auto m = static_cast<Eigen::Index>(traj.r.size());
    p.grid.resize(m);
    p.values.resize(m);
    p.derivs.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        p.grid(i) = traj.r[static_cast<std::size_t>(i)];
        p.values(i) = traj.y[static_cast<std::size_t>(i)];
        p.derivs(i) = traj.dy[static_cast<std::size_t>(i)];
    }
    p.dimension = n;
    p.method = method;
    return p;
}

}  // namespace translator
