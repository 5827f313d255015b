#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "translator/errors.hpp"

namespace translator {

/// Ambient dimension n of the hypersurface. n = 1 is only meaningful as the
/// grim reaper test case; every profile method needs n >= 2.
class Dimension {
public:
    explicit Dimension(int n) : n_(n) {
        if (n < 1) throw DomainError("dimension must be >= 1, got " + std::to_string(n));
    }

    int value() const noexcept { return n_; }
    double real() const noexcept { return static_cast<double>(n_); }

    /// Throws unless n >= 2.
    void require_profile_dimension() const {
        if (n_ < 2) throw DomainError("this method requires n >= 2, got " + std::to_string(n_));
    }

    friend bool operator==(Dimension, Dimension) = default;

private:
    int n_;
};

struct IntegratorConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    double max_step = 0.1;
    double min_step = 1e-14;
    double blowup_threshold = 1e6;

    void validate() const;
};

enum class Termination {
    reached_end,
    blew_up_positive,
    blew_up_negative,
    step_underflow,
    halted,  // stop predicate fired
};

std::string_view to_string(Termination t);

/// Accepted steps of a scalar ODE solve, in integration order.
struct Trajectory {
    std::vector<double> r;
    std::vector<double> y;
    std::vector<double> dy;
    Termination termination = Termination::reached_end;

    double back_r() const { return r.back(); }
    double back_y() const { return y.back(); }
    /// Linear interpolation in r; r must lie within the covered range.
    double value_at(double radius) const;
};

enum class Method { series, shooting, regularized, one_over_k, picard };

std::string_view to_string(Method m);

/// Sampled profile phi(r) on an increasing grid.
struct RadialProfile {
    Eigen::VectorXd grid;
    Eigen::VectorXd values;
    Eigen::VectorXd derivs;
    Dimension dimension{2};
    Method method = Method::series;
    std::map<std::string, double> params;

    Eigen::Index size() const { return grid.size(); }
    double r_min() const { return grid(0); }
    double r_max() const { return grid(grid.size() - 1); }
    bool covers(double r) const;
    /// Linear interpolation; throws DomainError outside the grid.
    double value_at(double r) const;

    /// Checks grid monotonicity, matching lengths and phi(0) = 0.
    void validate() const;
};

// Right-hand sides ----------------------------------------------------------

/// (1 + phi^2)(1 - (n-1) phi / r), the radial translator equation.
template <typename Scalar>
Scalar phi_rhs(Dimension n, Scalar r, Scalar phi) {
    if (!(r > Scalar(0))) throw DomainError("phi_rhs: r must be positive (r = 0 is singular)");
    return (Scalar(1) + phi * phi) * (Scalar(1) - Scalar(n.value() - 1) * phi / r);
}

/// (1 + psi^2)((n-1) psi - e^{-r}), the equation for psi(r) = phi(e^{-r}).
template <typename Scalar>
Scalar psi_rhs(Dimension n, Scalar r, Scalar psi) {
    using std::exp;
    return (Scalar(1) + psi * psi) * (Scalar(n.value() - 1) * psi - exp(-r));
}

/// (1 + phi^2)(1 - (n-1) phi / (r + eps)), regular at r = 0 for eps > 0.
template <typename Scalar>
Scalar phi_eps_rhs(Dimension n, Scalar eps, Scalar r, Scalar phi) {
    if (!(eps > Scalar(0))) throw DomainError("phi_eps_rhs: eps must be positive");
    if (r < Scalar(0)) throw DomainError("phi_eps_rhs: r must be non-negative");
    return (Scalar(1) + phi * phi) * (Scalar(1) - Scalar(n.value() - 1) * phi / (r + eps));
}

// Integrator ----------------------------------------------------------------

using ScalarField = std::function<double(double r, double y)>;
using StopPredicate = std::function<bool(double r, double y)>;

struct IntegrateOptions {
    /// Radii the solver must land on exactly (any order; those outside the
    /// integration interval are ignored).
    std::span<const double> stops{};
    /// Evaluated after each accepted step; returning true ends the solve
    /// with Termination::halted.
    StopPredicate stop_when{};
};

/// Adaptive Dormand-Prince 5(4) solve of y' = rhs(r, y) from (r0, y0) to r1.
/// r1 < r0 integrates backwards. Blow-up and step underflow are reported in
/// the trajectory's termination, never thrown.
Trajectory integrate(const ScalarField& rhs, double r0, double y0, double r1,
                     const IntegratorConfig& config, const IntegrateOptions& options = {});

/// Envelope min{0, a} <= phi(r) <= max{r/(n-1), a} for the phi-equation
/// started at phi(r0) = a, valid for r >= r0 > 0.
std::pair<double, double> extension_bounds(Dimension n, double r0, double a, double r);

/// Builds a profile from a trajectory of the phi-equation (already in
/// increasing r).
RadialProfile profile_from_trajectory(const Trajectory& traj, Dimension n, Method method);

}  // namespace translator
