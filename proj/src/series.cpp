#include "translator/series.hpp"

#include <cmath>
#include <limits>

namespace translator {

double to_double(const Rational& q) { return q.get_d(); }

double log_abs(const Rational& q) {
    if (sgn(q) == 0) throw DomainError("log_abs of zero");
    auto log_mpz = [](const mpz_class& z) {
        long exp2 = 0;
        const double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
        return std::log(std::abs(mant)) + static_cast<double>(exp2) * std::log(2.0);
    };
    return log_mpz(q.get_num()) - log_mpz(q.get_den());
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational sigma2(int l) {
    Rational total = 0;
    for (int i = 1; i < l; ++i) total += fraction(1, static_cast<long>(i) * (l - i));
    return total;
}

Rational sigma3(int l) {
    Rational total = 0;
    for (int i = 1; i <= l - 2; ++i) total += fraction(1, i) * sigma2(l - i);
    return total;
}

SumTable sum_table(int max_l) {
    if (max_l < 0) throw DomainError("sum_table: max_l must be non-negative");
    SumTable t;
    t.sigma2.reserve(static_cast<std::size_t>(max_l) + 1);
    t.sigma3.reserve(static_cast<std::size_t>(max_l) + 1);
    for (int l = 0; l <= max_l; ++l) t.sigma2.push_back(sigma2(l));
    for (int l = 0; l <= max_l; ++l) {
        Rational total = 0;
        for (int i = 1; i <= l - 2; ++i)
            total += fraction(1, i) * t.sigma2[static_cast<std::size_t>(l - i)];
        t.sigma3.push_back(total);
    }
    return t;
}

SumBoundReport check_sum_bounds(const SumTable& sums) {
    SumBoundReport rep;
    rep.max_l = sums.max_l();
    const Rational one(1), two(2), four_fifths = fraction(4, 5), nine_fifths = fraction(9, 5);
    for (int l = 0; l <= rep.max_l; ++l) {
        const Rational& s2 = sums.sigma2[static_cast<std::size_t>(l)];
        if (s2 > rep.sigma2_max) rep.sigma2_max = s2;
        if (s2 > one) {
            rep.sigma2_bounded = false;
            rep.sigma2_violations.push_back(l);
        }
        if (s2 == one) rep.sigma2_equality.push_back(l);
        if (s2 > four_fifths) rep.sigma2_near.emplace_back(l, one - s2);
    }
    for (int l = 3; l <= rep.max_l; ++l) {
        const Rational& s3 = sums.sigma3[static_cast<std::size_t>(l)];
        if (s3 > rep.sigma3_max) rep.sigma3_max = s3;
        if (s3 > two) {
            rep.sigma3_bounded = false;
            rep.sigma3_violations.push_back(l);
        }
        if (s3 > nine_fifths) rep.sigma3_near.emplace_back(l, two - s3);
    }
    return rep;
}

CoefficientTable coefficients(Dimension n, int max_l) {
    n.require_profile_dimension();
    if (max_l < 0) throw DomainError("coefficients: max_l must be non-negative");
    const long nn = n.value();
    CoefficientTable t{n, {}};
    auto& a = t.coeffs;
    a.reserve(static_cast<std::size_t>(max_l) + 1);
    a.emplace_back(1);
    if (max_l >= 1) a.push_back(fraction(1, nn + 2));
    if (max_l < 2) return t;

    // Integer bookkeeping over a shared denominator D: a_i = num[i] / D for
    // 1 <= i < l, and pair[m] / D^2 = sum_{i+j=m, i,j>=1} a_i a_j. Only the
    // new coefficient is reduced, once per step.
    mpz_class D = a[1].get_den();
    std::vector<mpz_class> num(static_cast<std::size_t>(max_l) + 1);
    std::vector<mpz_class> pair(static_cast<std::size_t>(max_l) + 1);
    num[1] = a[1].get_num();

    for (int l = 2; l <= max_l; ++l) {
        const int m = l - 1;
        mpz_class p = 0;
        for (int i = 1; i < m - i; ++i) p += num[static_cast<std::size_t>(i)] * num[static_cast<std::size_t>(m - i)];
        p *= 2;
        if (m % 2 == 0) p += num[static_cast<std::size_t>(m / 2)] * num[static_cast<std::size_t>(m / 2)];
        pair[static_cast<std::size_t>(m)] = p;
        mpz_class triple = 0;  // over D^3
        for (int i = 1; i <= m - 2; ++i) triple += num[static_cast<std::size_t>(i)] * pair[static_cast<std::size_t>(m - i)];

        mpz_class top = -(nn - 1) * triple + (3 - 2 * nn) * p * D + (3 - nn) * num[static_cast<std::size_t>(l - 1)] * D * D;
        Rational next(top, D * D * D * (2 * l + nn));
        next.canonicalize();

        if (l < max_l) {
            const mpz_class den = next.get_den();
            mpz_class new_d;
            mpz_lcm(new_d.get_mpz_t(), D.get_mpz_t(), den.get_mpz_t());
            if (new_d != D) {
                const mpz_class f = new_d / D;
                const mpz_class f2 = f * f;
                for (int i = 1; i < l; ++i) num[static_cast<std::size_t>(i)] *= f;
                for (int j = 2; j < l; ++j) pair[static_cast<std::size_t>(j)] *= f2;
                D = new_d;
            }
            num[static_cast<std::size_t>(l)] = next.get_num() * (D / den);
        }
        a.push_back(std::move(next));
    }
    return t;
}

CoefficientTable coefficients_uncancelled(Dimension n, int max_l) {
    n.require_profile_dimension();
    if (max_l < 0) throw DomainError("coefficients_uncancelled: max_l must be non-negative");
    const long nn = n.value();
    CoefficientTable t{n, {}};
    auto& a = t.coeffs;
    a.emplace_back(1);
    // pair0[m] = sum_{i+j=m, i,j>=0} a_i a_j.
    std::vector<Rational> pair0;
    for (int l = 1; l <= max_l; ++l) {
        const int m = l - 1;
        Rational p = 0;
        for (int i = 0; i <= m; ++i) p += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(m - i)];
        pair0.push_back(p);
        Rational triple = 0;
        for (int i = 0; i <= m; ++i) triple += a[static_cast<std::size_t>(i)] * pair0[static_cast<std::size_t>(m - i)];
        Rational next = Rational(nn) * p - Rational(nn - 1) * triple;
        next /= Rational(2 * l + nn);
        a.push_back(std::move(next));
    }
    return t;
}

SeriesValue eval_series(const CoefficientTable& table, double r, int truncation) {
    if (truncation < 0 || truncation > table.max_l())
        throw DomainError("eval_series: truncation " + std::to_string(truncation) + " exceeds table length " +
                          std::to_string(table.max_l()));
    const double nd = table.n.real();
    const double x = r / nd, t = x * x;
    double acc = 0.0, dacc = 0.0;
    for (int i = truncation; i >= 0; --i) {
        const double ai = to_double(table[i]);
        acc = acc * t + ai;
        dacc = dacc * t + (2.0 * i + 1.0) * ai;
    }
    return {x * acc, dacc / nd};
}

RadialProfile series_profile(const CoefficientTable& table, std::span<const double> grid, int truncation) {
    RadialProfile p;
    const auto m = static_cast<Eigen::Index>(grid.size());
    p.grid.resize(m);
    p.values.resize(m);
    p.derivs.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double r = grid[static_cast<std::size_t>(i)];
        const auto v = eval_series(table, r, truncation);
        p.grid(i) = r;
        p.values(i) = v.phi;
        p.derivs(i) = v.phi_prime;
    }
    p.dimension = table.n;
    p.method = Method::series;
    p.params["truncation"] = truncation;
    p.validate();
    return p;
}

DecayReport check_decay_bound(const CoefficientTable& table) {
    DecayReport rep;
    rep.n = table.n;
    rep.max_l = table.max_l();
    for (int l = 1; l <= table.max_l(); ++l) {
        if (abs(table[l]) > fraction(1, 4L * l)) {
            rep.violations.push_back(l);
            if (!rep.first_violation) rep.first_violation = l;
        }
    }
    return rep;
}

double estimate_radius(const CoefficientTable& table, int l_min, int l_max) {
    if (l_min < 1 || l_max > table.max_l() || l_min > l_max)
        throw DomainError("estimate_radius: window [" + std::to_string(l_min) + ", " + std::to_string(l_max) +
                          "] not inside table of length " + std::to_string(table.max_l()));
    std::vector<double> ls, ys;
    for (int l = l_min; l <= l_max; ++l) {
        if (sgn(table[l]) == 0) continue;
        ls.push_back(l);
        ys.push_back(-log_abs(table[l]));
    }
    if (ls.size() < 4) throw DomainError("estimate_radius: fewer than 4 nonzero coefficients in window");
    Eigen::MatrixXd design(static_cast<Eigen::Index>(ls.size()), 2);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(ls.size()));
    for (std::size_t i = 0; i < ls.size(); ++i) {
        design(static_cast<Eigen::Index>(i), 0) = 1.0;
        design(static_cast<Eigen::Index>(i), 1) = ls[i];
        rhs(static_cast<Eigen::Index>(i)) = ys[i];
    }
    const Eigen::Vector2d fit = design.colPivHouseholderQr().solve(rhs);
    return table.n.real() * std::exp(fit(1) / 2.0);
}

double check_decay_rate(const CoefficientTable& table) {
    double lambda = std::numeric_limits<double>::infinity();
    for (int l = 1; l <= table.max_l(); ++l) {
        if (sgn(table[l]) == 0) continue;
        lambda = std::min(lambda, -log_abs(table[l]) / l);
    }
    return lambda;
}

double ApproxPolynomial::operator()(double r) const { return to_double(h).evaluate(r); }

double ApproxPolynomial::derivative(double r) const { return to_double(h.derivative()).evaluate(r); }

Polynomial<double> to_double(const Polynomial<Rational>& p) {
    if (p.is_zero()) return {};
    std::vector<double> c;
    for (int e = p.low(); e <= p.high(); ++e) c.push_back(p.coeff(e).get_d());
    return Polynomial<double>(std::move(c), p.low());
}

ApproxPolynomial approx_polynomial(Dimension n, int truncation) {
    n.require_profile_dimension();
    if (truncation < 0) throw DomainError("approx_polynomial: truncation must be non-negative");
    const auto table = coefficients(n, truncation);
    std::vector<Rational> c(static_cast<std::size_t>(2 * truncation + 2), Rational(0));
    mpz_class npow = n.value();  // n^(2i+1)
    for (int i = 0; i <= truncation; ++i) {
        c[static_cast<std::size_t>(2 * i + 1)] = table[i] / Rational(npow);
        npow *= n.value() * n.value();
    }
    return {n, Polynomial<Rational>(std::move(c), 0), 2 * truncation + 2};
}

Polynomial<Rational> residual_polynomial(const ApproxPolynomial& h) {
    using P = Polynomial<Rational>;
    const P one = P::constant(Rational(1));
    const P over_r = h.h.shifted(-1);
    return h.h.derivative() - (one + h.h * h.h) * (one - Rational(h.n.value() - 1) * over_r);
}

int residual_order(const ApproxPolynomial& h) {
    if (h.h.coeff(0) != 0) throw DomainError("residual_order: h(0) != 0, G(h) has a pole at r = 0");
    const auto g = residual_polynomial(h);
    const int order = g.order();
    if (order < 0) throw DomainError("residual_order: G(h) has a pole at r = 0");
    if (order < h.declared_order)
        throw NumericalFailure("residual_order: G(h) vanishes only to order " + std::to_string(order) +
                               ", declared " + std::to_string(h.declared_order));
    return order;
}

}  // namespace translator
