#pragma once

#include <vector>

#include <Eigen/Dense>

#include "translator/ode.hpp"
#include "translator/series.hpp"

namespace translator {

/// Parameters of the weighted fixed-point construction on [0, S].
struct PicardConfig {
    double p = 3.0;               // weight exponent, p > max{L, 1}
    double lipschitz = 2.0;       // L
    double ball_radius = 0.55;    // R
    double interval_end = 1.0;    // S in (0, 1]; halved by picard_solve until the hypotheses hold
    int grid_size = 4000;         // positive grid points
    double grid_span = 1e-6;      // smallest grid radius as a fraction of S
    int max_iters = 200;
    double fixed_point_tol = 1e-14;
    int max_halvings = 30;

    /// L = n, p = n + 1, R = 1.1 / n.
    static PicardConfig defaults_for(Dimension n);
    void validate() const;
};

/// Samples of u in C^0_{-p}([0, S]) on 0 < r_1 < ... < r_m = S; u(0) = 0 is implicit.
struct WeightedGridFunction {
    Eigen::VectorXd grid;
    Eigen::VectorXd values;
    double p = 1.0;
};

/// r_1 = span * S, ..., r_m = S, geometrically spaced.
Eigen::VectorXd geometric_grid(double interval_end, int size, double span);

/// max_i r_i^-p |u(r_i)|.
double weighted_norm(const WeightedGridFunction& f);

/// T(phi)(r) = int_0^r f(s, (h + phi)(s)/s) ds - h(r) with
/// f(s, a) = (1 + s^2 a^2)(1 - (n-1) a), by the composite trapezoid rule.
/// The integrand is evaluated as -G(h)(s) + [f(s, (h+phi)/s) - f(s, h/s)] so
/// that no O(1) terms cancel.
WeightedGridFunction picard_step(const WeightedGridFunction& phi, const ApproxPolynomial& h, Dimension n,
                                 const PicardConfig& config);

struct PicardDiagnostics {
    int iters = 0;
    double final_residual = 0.0;               // last ||phi_{k+1} - phi_k||
    double empirical_contraction_ratio = 0.0;  // max over ratio_history
    std::vector<double> ratio_history;
    std::vector<double> difference_history;
    std::vector<double> iterate_norms;
    double interval_end = 0.0;                 // S actually used
    double initial_defect = 0.0;               // ||T(0)||
    double defect_bound = 0.0;                 // (p - L)/p * R
    double lipschitz_bound = 0.0;              // bound on |df/da| over [0,S] x B_2R
};

struct PicardSolution {
    RadialProfile profile;  // u = h + phi on {0} and the grid, tagged picard
    WeightedGridFunction fixed_point;
    PicardDiagnostics diagnostics;
};

/// Solves u' = f(r, u/r) near the origin by iterating picard_step from
/// phi = 0, with h = approx_polynomial(n, truncation). S is halved from
/// config.interval_end until the Lipschitz bound, |h/s| <= R and
/// ||T(0)|| <= (p-L)/p R all hold on the grid.
/// Smallest truncation M >= 3 whose residual order 2M+2 exceeds p = n+1 by
/// at least two, so the weighted defect stays well inside the ball.
int default_truncation(Dimension n);

PicardSolution picard_solve(Dimension n, int truncation, PicardConfig config);

}  // namespace translator
