#pragma once

#include <string_view>
#include <vector>

#include "translator/ode.hpp"

namespace translator {

enum class ShotClass { exceeded_upper, dropped_below_zero, alive };

std::string_view to_string(ShotClass c);

/// One forward solve of the psi-equation, classified against the trapping
/// region 0 <= psi <= e^-r / (n-1).
struct ShotOutcome {
    ShotClass classification = ShotClass::alive;
    double exit_radius = 0.0;  // where the classification fired, or the horizon
    Trajectory trajectory;
};

struct ShootingConfig {
    IntegratorConfig integrator{};
    double horizon_step = 0.5;  // horizon growth per surviving shot
    /// Relative width of the band around the barriers that a shot must cross
    /// before it is classified, in units of e^-r.
    double band = 1e-10;
    /// Two bracketing trajectories are trusted where (n-1) e^r |psi_hi - psi_lo|
    /// stays below this.
    double gap_tol = 1e-8;
    int max_shots = 20000;
    /// phi-radii in (0, 1] that every shot, and so the accepted trajectory,
    /// lands on exactly (as psi-radii -log r).
    std::vector<double> phi_radii{};

    void validate() const;
};

/// Shoots from psi(r0) = value towards horizon. shoot_once is the r0 = 0 case.
/// `stops` are radii the trajectory must contain exactly.
ShotOutcome shoot_from(Dimension n, double r0, double value, double horizon, const ShootingConfig& config,
                       std::span<const double> stops = {});

ShotOutcome shoot_once(Dimension n, double a, double horizon, const ShootingConfig& config);

/// A bracket on psi(anchor): shots from below drop under zero, shots from
/// above cross the upper barrier. anchor = 0 brackets the initial value a.
struct BracketRecord {
    double anchor;
    double lo;
    double hi;
    double horizon;
};

struct ShotRecord {
    double anchor;
    double value;
    double horizon;
    ShotClass classification;
    double exit_radius;
};

struct ShootingResult {
    Dimension n{2};
    double a_star = 0.0;
    std::vector<BracketRecord> bracket_history;
    std::vector<ShotRecord> trace;
    std::vector<double> anchors;  // radii where the bracket was re-seeded
    double final_horizon = 0.0;
    Trajectory psi;  // accepted trajectory on [0, final_horizon]
};

/// Nested bisection for the bounded solution of the psi-equation.
///
/// Bisects a = psi(0) on [0, 1/(n-1)] until the bracket hits the floating
/// point floor, growing the horizon by horizon_step whenever the midpoint
/// survives. A double cannot resolve a well enough to reach large radii
/// (nearby solutions separate like e^{nr}), so once the floor is reached the
/// bracket is carried to the furthest schedule point where the two bracketing
/// trajectories still agree to gap_tol and bisection restarts on psi there.
/// Throws NumericalFailure if the bracket cannot be advanced or the final
/// a-bracket is wider than a_tol.
ShootingResult bisect_initial(Dimension n, double target_horizon, double a_tol, const ShootingConfig& config);

/// phi(e^-r) = psi(r), phi'(e^-r) = -e^r psi'(r), on increasing radii.
RadialProfile psi_to_phi(const ShootingResult& result, Dimension n);
RadialProfile psi_to_phi(const Trajectory& psi, Dimension n);

// Figure data ----------------------------------------------------------------

struct Curve {
    std::string label;
    double parameter;
    Trajectory trajectory;
};

/// Forward psi shots from the given initial values (phi(1) = a), each cut at
/// its classification point.
std::vector<Curve> forward_family(Dimension n, std::span<const double> initial_values, double horizon,
                                  const ShootingConfig& config);

/// psi through (eps k0, 0) and (eps k0, e^{-eps k0}/(n-1)) for each k0,
/// integrated backwards to r_end.
std::vector<Curve> backward_family(Dimension n, double eps, std::span<const int> k0_values, double r_end,
                                   const IntegratorConfig& config);

}  // namespace translator
