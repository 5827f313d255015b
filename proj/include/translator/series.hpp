#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "translator/ode.hpp"
#include "translator/polynomial.hpp"

namespace translator {

/// Exact fraction, always in canonical form (reduced, positive denominator).
using Rational = mpq_class;

/// num/den in canonical form (mpq_class's two-argument constructor does not
/// canonicalize).
inline Rational fraction(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

double to_double(const Rational& q);
/// Natural log of |q| without overflowing doubles for huge numerators or
/// denominators. q must be nonzero.
double log_abs(const Rational& q);
std::string to_string(const Rational& q);

// Reciprocal convolution sums ----------------------------------------------

/// Sum over i, j >= 1 with i + j = l of 1/(ij).
Rational sigma2(int l);

/// Sum over i, j, k >= 1 with i + j + k = l of 1/(ijk).
Rational sigma3(int l);

/// Sigma2 and Sigma3 for l = 0..max_l. Sigma3 is obtained by convolving 1/i
/// with the memoized Sigma2 values.
struct SumTable {
    std::vector<Rational> sigma2;
    std::vector<Rational> sigma3;

    int max_l() const { return static_cast<int>(sigma2.size()) - 1; }
};

SumTable sum_table(int max_l);

struct SumBoundReport {
    int max_l = 0;
    bool sigma2_bounded = true;           // Sigma2^l <= 1 for all l
    bool sigma3_bounded = true;           // Sigma3^l <= 2 for all l >= 3
    std::vector<int> sigma2_equality;     // l with Sigma2^l == 1
    std::vector<int> sigma2_violations;
    std::vector<int> sigma3_violations;
    Rational sigma2_max;
    Rational sigma3_max;
    /// l with Sigma2^l >= 4/5 and the gap 1 - Sigma2^l, then l with
    /// Sigma3^l >= 9/5 and the gap 2 - Sigma3^l.
    std::vector<std::pair<int, Rational>> sigma2_near;
    std::vector<std::pair<int, Rational>> sigma3_near;
};

SumBoundReport check_sum_bounds(const SumTable& sums);

// Coefficients ---------------------------------------------------------------

/// a_0..a_L of the odd series psi(x) = sum a_l x^(2l+1), phi(r) = psi(r/n).
struct CoefficientTable {
    Dimension n{2};
    std::vector<Rational> coeffs;

    int max_l() const { return static_cast<int>(coeffs.size()) - 1; }
    const Rational& operator[](int l) const { return coeffs[static_cast<std::size_t>(l)]; }
};

/// Recursion with the cancellations built in:
/// (2l+n) a_l = -(n-1) T_{l-1} + (3-2n) P_{l-1} + (3-n) a_{l-1},
/// where P and T are the pair and triple sums over indices >= 1.
CoefficientTable coefficients(Dimension n, int max_l);

/// Recursion straight from matching powers, indices running from 0:
/// (2l+n) a_l = n sum_{i+j=l-1} a_i a_j - (n-1) sum_{i+j+k=l-1} a_i a_j a_k.
CoefficientTable coefficients_uncancelled(Dimension n, int max_l);

struct SeriesValue {
    double phi;
    double phi_prime;
};

/// phi(r) = sum_{i<=M} a_i (r/n)^(2i+1) and its termwise derivative.
SeriesValue eval_series(const CoefficientTable& table, double r, int truncation);

/// Samples the truncated series on a grid (tagged Method::series).
RadialProfile series_profile(const CoefficientTable& table, std::span<const double> grid, int truncation);

struct DecayReport {
    Dimension n{2};
    int max_l = 0;
    std::vector<int> violations;  // l with |a_l| > 1/(4l)
    std::optional<int> first_violation;

    bool pass() const { return violations.empty(); }
};

/// Exact check of |a_l| <= 1/(4l) for every stored l >= 1.
DecayReport check_decay_bound(const CoefficientTable& table);

/// Least-squares slope of -log|a_l| against l over [l_min, l_max] (zero
/// coefficients skipped), turned into the root-test radius n exp(slope/2).
double estimate_radius(const CoefficientTable& table, int l_min, int l_max);

/// Largest lambda with |a_l| <= exp(-lambda l) for all 1 <= l <= max_l.
double check_decay_rate(const CoefficientTable& table);

// Polynomial approximate solutions ------------------------------------------

struct ApproxPolynomial {
    Dimension n{2};
    Polynomial<Rational> h;
    int declared_order = 0;

    double operator()(double r) const;
    double derivative(double r) const;
};

/// h(r) = sum_{i<=M} a_i (r/n)^(2i+1); G(h) vanishes to order 2M+2.
ApproxPolynomial approx_polynomial(Dimension n, int truncation);

/// G(h)(r) = h'(r) - (1 + h^2)(1 - (n-1) h / r), expanded exactly.
Polynomial<Rational> residual_polynomial(const ApproxPolynomial& h);

/// Lowest exponent of G(h). Throws DomainError if G(h) has an r^-1 term
/// (i.e. h(0) != 0). Throws NumericalFailure if it disagrees with the
/// declared order.
int residual_order(const ApproxPolynomial& h);

Polynomial<double> to_double(const Polynomial<Rational>& p);

}  // namespace translator
