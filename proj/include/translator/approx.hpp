#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "translator/ode.hpp"

namespace translator {

/// Outcome of checking one inequality at every sample of a profile.
struct BoundCheck {
    std::string name;
    int checked = 0;
    int violations = 0;
    double worst_excess = -std::numeric_limits<double>::infinity();  // max of (lhs - rhs), <= 0 when satisfied
    double worst_radius = 0.0;

    bool pass() const { return violations == 0; }
    /// Records lhs <= rhs + tol at radius r.
    void record(double r, double lhs, double rhs, double tol);
};

/// Tolerance band used for all barrier assertions: 10 (abs_tol + rel_tol |y|).
double barrier_band(const IntegratorConfig& config, double y);

// 1/k problems ----------------------------------------------------------------

/// phi-equation from phi(1/k) = initial_value (default 1/(nk)) to r_max.
/// Throws NumericalFailure if 0 < phi < r/(n-1) fails beyond barrier_band
/// at an accepted step.
RadialProfile solve_one_over_k(Dimension n, int k, double r_max, const IntegratorConfig& config,
                               std::span<const double> stops = {}, std::optional<double> initial_value = {});

/// 0 < phi_k < r/(n-1) and, for r > 1/k, r/n < phi_k < r/n + r^3/(n (n-1)^3)
/// (the sandwich with the smallest admissible eps = r/(n(n-1)^3)).
std::vector<BoundCheck> check_one_over_k_bounds(const RadialProfile& profile, int k, const IntegratorConfig& config);

// eps-regularized problems ----------------------------------------------------

/// phi' = (1+phi^2)(1 - (n-1) phi/(r+eps)) from phi(0) = 0 to r_max. Throws
/// NumericalFailure if 0 <= phi <= (r+eps)/(n-1) fails beyond barrier_band.
RadialProfile solve_regularized(Dimension n, double eps, double r_max, const IntegratorConfig& config,
                                std::span<const double> stops = {});

/// phi_eps >= r/n everywhere, and phi_eps <= (r+eps)/n + ((r+eps)/n)^2 for
/// r <= n/3 when eps <= n/3.
std::vector<BoundCheck> check_regularized_barriers(const RadialProfile& profile, double eps,
                                                   const IntegratorConfig& config);

// Families --------------------------------------------------------------------

struct FamilySweep {
    Dimension n{2};
    Method method = Method::regularized;
    std::vector<double> parameters;  // eps or k, in ladder order
    Eigen::VectorXd grid;            // common evaluation grid
    Eigen::MatrixXd values;          // grid x member; NaN where a member is undefined
    std::vector<RadialProfile> profiles;
    /// Max over shared grid points of |member i+1 - member i|.
    std::vector<double> successive_differences;
    /// Monotonicity in eps (regularized only): comparisons made, pairs that
    /// tie within tolerance, and the largest phi_{small eps} - phi_{large eps}.
    int monotone_checked = 0;
    int monotone_ties = 0;
    double monotone_worst = -std::numeric_limits<double>::infinity();
    std::vector<BoundCheck> bound_checks;  // per member, in order
    RadialProfile limit;
};

struct SweepOptions {
    IntegratorConfig integrator{};
    /// Number of smallest-eps members fitted by a polynomial in eps and
    /// evaluated at eps = 0. 1 returns the smallest-eps member itself.
    int extrapolation_levels = 3;
    std::optional<double> initial_value{};  // 1/k problems only
};

/// Solves each eps (strictly decreasing), verifies phi_{eps_1} < phi_{eps_2}
/// for eps_1 < eps_2 at every grid r > 0 (error beyond tolerance), and
/// extrapolates the limit to eps = 0 on the grid points r > 0.
FamilySweep sweep_regularized(Dimension n, std::span<const double> eps_list, std::span<const double> r_grid,
                              const SweepOptions& options = {});

/// Solves each k (strictly increasing) on the grid points r >= 1/k and
/// reports the successive differences; the limit candidate is the largest k.
FamilySweep sweep_one_over_k(Dimension n, std::span<const int> k_list, std::span<const double> r_grid,
                             const SweepOptions& options = {});

/// Default ladders: eps = 2^-1 .. 2^-10 and k = 4, 16, 64, 256.
std::vector<double> default_eps_ladder();
std::vector<int> default_k_ladder();

/// Value at 0 of the polynomial through (x_i, y_i) (Neville).
double extrapolate_to_zero(std::span<const double> x, std::span<const double> y);

}  // namespace translator
