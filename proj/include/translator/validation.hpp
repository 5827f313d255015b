#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "translator/ode.hpp"

namespace translator {

enum class Verdict { pass, fail, inconclusive };

std::string_view to_string(Verdict v);

/// Worst of two verdicts (fail > inconclusive > pass).
Verdict combine(Verdict a, Verdict b);

// Residuals ----------------------------------------------------------------

enum class ResidualMode {
    automatic,  // stored for series profiles, integral otherwise
    stored,     // |phi'_i - F(r_i, phi_i)| with the profile's own derivatives
    integral,   // defect of the corrected trapezoid rule on each grid interval
};

struct ResidualReport {
    double max_residual = 0.0;
    double at_radius = 0.0;
    ResidualMode mode = ResidualMode::stored;
    int points = 0;
};

/// Max deviation of a profile from phi' = (1+phi^2)(1-(n-1)phi/r) on grid
/// points inside [r_lo, r_hi] (r = 0 excluded).
///
/// Integrator profiles store F(r, phi) as their derivative, so the stored
/// residual would vanish identically; for them the residual is taken in
/// integral form, per interval [r_i, r_{i+1}] of length h,
///   |phi_{i+1} - phi_i - h/2 (F_i + F_{i+1}) + h^2/12 (F'_{i+1} - F'_i)| / h,
/// with F recomputed from the values and F' its total derivative along the
/// solution. The quadrature part of this defect is O(h^4).
ResidualReport ode_residual(const RadialProfile& profile, double r_lo = 0.0,
                            double r_hi = std::numeric_limits<double>::infinity(),
                            ResidualMode mode = ResidualMode::automatic);

// Origin regularity ----------------------------------------------------------

struct OriginOptions {
    double r_start = 0.1;  // smallest sampling radius; nodes near r, 2r, 4r are used
    double tol = 1e-4;
};

struct OriginReport {
    double phi_over_r_estimate = 0.0;
    double phi_prime_estimate = 0.0;
    double discrepancy = 0.0;  // |phi_over_r_estimate - phi_prime_estimate|
    double expected = 0.0;     // 1/n
    std::vector<double> radii;
    Verdict verdict = Verdict::inconclusive;
};

/// Extrapolates phi(r)/r and phi'(r) to r = 0 through three grid nodes, as
/// polynomials in r^2. Passes when both limits match 1/n and each other
/// within tol; inconclusive when the samples do not approach their limit
/// monotonically.
OriginReport check_origin_regularity(const RadialProfile& profile, const OriginOptions& options = {});

// psi-side regularity ------------------------------------------------------

struct PsiAsymptoticsReport {
    double radius = 0.0;
    double w = 0.0;        // e^r psi
    double w_prime = 0.0;  // e^r psi'
    double sum = 0.0;
    double expected = 0.0;  // 1/n
    Verdict verdict = Verdict::fail;
};

/// e^r psi and e^r psi' at the last point of a psi trajectory (which must
/// reach r >= 15); they should tend to 1/n and -1/n.
PsiAsymptoticsReport check_psi_asymptotics(const Trajectory& psi, Dimension n, double tol = 1e-3);

// Expansion near the origin ---------------------------------------------------

struct ExpansionFit {
    double window = 0.0;
    int points = 0;
    Eigen::Vector3d fitted = Eigen::Vector3d::Zero();     // c1, c3, c5
    Eigen::Vector3d reference = Eigen::Vector3d::Zero();  // closed forms
    Eigen::Vector3d deviation = Eigen::Vector3d::Zero();  // fitted - reference
    double condition_number = 0.0;
};

/// 1/n, 1/(n^3 (n+2)), -(n-3)/(n^5 (n^2+6n+8)), (n^3-6n^2-8n+30)/(n^7 (n^4+14n^3+68n^2+136n+96)).
Eigen::Vector4d expansion_reference(Dimension n);

/// Least-squares fit phi ~ c1 r + c3 r^3 + c5 r^5 + c7 r^7 (c7 is a nuisance term) on the grid points in
/// (0, window]; window defaults to n/4. Throws DomainError if the fit is
/// ill-conditioned or has fewer than 6 points.
ExpansionFit check_asymptotic_expansion(const RadialProfile& profile, double window = 0.0);

// Cross-method comparison -----------------------------------------------------

struct ComparisonMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd max_deviation;  // symmetric, zero diagonal

    double max_off_diagonal() const;
};

/// Pairwise max over `grid` of |p_i(r) - p_j(r)|, linear interpolation inside
/// each profile. Throws DomainError naming a profile that misses a radius.
ComparisonMatrix compare_methods(std::span<const RadialProfile> profiles, std::span<const double> grid);

// Aggregate -----------------------------------------------------------------------

struct ValidationReport {
    Dimension n{2};
    std::vector<std::pair<std::string, ResidualReport>> residuals;
    std::vector<std::pair<std::string, OriginReport>> origin;
    std::optional<PsiAsymptoticsReport> psi;
    std::optional<ExpansionFit> expansion;
    std::optional<ComparisonMatrix> comparison;
    double comparison_tol = 1e-4;
    double residual_tol = 1e-6;
    double expansion_rel_tol = 1e-2;

    double residual_max() const;
    Verdict verdict() const;
};

}  // namespace translator
