#include <doctest.h>

#include <cmath>

#include "translator/series.hpp"
#include "translator/shooting.hpp"
#include "translator/validation.hpp"

using namespace translator;

namespace {

std::vector<double> uniform_grid(double lo, double hi, int m) {
    std::vector<double> g;
    for (int i = 0; i <= m; ++i) g.push_back(lo + (hi - lo) * i / m);
    return g;
}

RadialProfile series_on(Dimension n, double hi, int m, int terms) {
    return series_profile(coefficients(n, terms), uniform_grid(0.0, hi, m), terms);
}

RadialProfile from_function(Dimension n, const std::vector<double>& grid, double (*f)(double), double (*df)(double)) {
    RadialProfile p;
    const auto m = static_cast<Eigen::Index>(grid.size());
    p.grid = Eigen::Map<const Eigen::VectorXd>(grid.data(), m);
    p.values = p.grid.unaryExpr(f);
    p.derivs = p.grid.unaryExpr(df);
    p.dimension = n;
    p.method = Method::regularized;
    return p;
}

}  // namespace

TEST_CASE("series residual is tiny inside the disc") {
    const auto p = series_on(Dimension(2), 1.0, 200, 60);
    const auto rep = ode_residual(p, 0.05, 1.0);
    CHECK(rep.mode == ResidualMode::stored);
    CHECK(rep.max_residual <= 1e-9);
    CHECK(ode_residual(p, 0.05, 1.0, ResidualMode::integral).max_residual <= 1e-7);
}

TEST_CASE("corrupted profile is caught") {
    auto p = series_on(Dimension(2), 1.0, 200, 60);
    p.values(120) += 1e-3;
    CHECK(ode_residual(p, 0.05, 1.0).max_residual >= 1e-4);
    CHECK(ode_residual(p, 0.05, 1.0, ResidualMode::integral).max_residual >= 1e-4);
}

TEST_CASE("zero profile has residual one") {
    const auto p = from_function(Dimension(3), uniform_grid(0.0, 1.0, 10), [](double) { return 0.0; },
                                 [](double) { return 0.0; });
    const auto rep = ode_residual(p, 0.0, 1.0, ResidualMode::stored);
    CHECK(rep.max_residual == doctest::Approx(1.0));
    CHECK(rep.points == 10);
}

TEST_CASE("origin limits") {
    const auto rep = check_origin_regularity(series_on(Dimension(2), 1.0, 200, 60));
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.phi_over_r_estimate == doctest::Approx(0.5).epsilon(2e-6));
    CHECK(rep.phi_prime_estimate == doctest::Approx(0.5).epsilon(2e-6));
    CHECK(rep.expected == 0.5);

    const auto wrong = from_function(Dimension(2), uniform_grid(0.0, 1.0, 100), [](double r) { return r; },
                                     [](double) { return 1.0; });
    const auto bad = check_origin_regularity(wrong);
    CHECK(bad.verdict == Verdict::fail);
    CHECK(bad.phi_over_r_estimate == doctest::Approx(1.0));
}

TEST_CASE("psi-side limits from the accepted shot") {
    for (int nn : {2, 4}) {
        const Dimension n(nn);
        const auto res = bisect_initial(n, 20.0, 1e-12, ShootingConfig{});
        const auto rep = check_psi_asymptotics(res.psi, n);
        CHECK(rep.verdict == Verdict::pass);
        CHECK(std::abs(rep.w - 1.0 / nn) <= 1e-3);
        CHECK(std::abs(rep.w_prime + 1.0 / nn) <= 1e-3);
        CHECK(std::abs(rep.sum) <= 2e-3);
    }
    Trajectory shortish;
    shortish.r = {0.0, 5.0};
    shortish.y = {0.5, 0.001};
    CHECK_THROWS_AS(check_psi_asymptotics(shortish, Dimension(2)), DomainError);
}

TEST_CASE("closed-form expansion coefficients agree with the table") {
    for (int nn = 2; nn <= 10; ++nn) {
        const Dimension n(nn);
        const auto t = coefficients(n, 3);
        const auto ref = expansion_reference(n);
        for (int l = 0; l <= 3; ++l)
            CHECK(ref(l) == doctest::Approx(to_double(t[l]) / std::pow(nn, 2 * l + 1)).epsilon(1e-14));
    }
    CHECK(expansion_reference(Dimension(2))(1) == doctest::Approx(1.0 / 32));
}

TEST_CASE("expansion fit recovers c1, c3, c5") {
    for (int nn : {2, 3, 4}) {
        const Dimension n(nn);
        const auto fit = check_asymptotic_expansion(series_on(n, 1.0, 400, 80));
        CHECK(fit.window == doctest::Approx(nn / 4.0));
        for (int i = 0; i < 3; ++i) {
            const double scale = std::max(std::abs(fit.reference(i)), std::abs(fit.reference(0)) * 1e-3);
            CHECK(std::abs(fit.deviation(i)) <= 1e-2 * scale);
        }
    }
}

TEST_CASE("comparison matrix") {
    const Dimension n(2);
    const auto grid = uniform_grid(0.1, 1.0, 90);
    const auto s = series_on(n, 1.0, 200, 200);
    const std::vector<RadialProfile> same{s, s};
    CHECK(compare_methods(same, grid).max_off_diagonal() == 0.0);

    ShootingConfig cfg;
    cfg.phi_radii = uniform_grid(0.005, 1.0, 199);
    const auto sh = psi_to_phi(bisect_initial(n, 20.0, 1e-12, cfg), n);
    const std::vector<RadialProfile> pair{s, sh};
    const auto cmp = compare_methods(pair, grid);
    CHECK(cmp.max_off_diagonal() <= 1e-6);
    CHECK(cmp.labels.size() == 2);

    const auto short_series = series_on(n, 0.5, 50, 60);
    const std::vector<RadialProfile> gap{s, short_series};
    CHECK_THROWS_AS(compare_methods(gap, grid), DomainError);
}

TEST_CASE("verdict ordering") {
    CHECK(combine(Verdict::pass, Verdict::inconclusive) == Verdict::inconclusive);
    CHECK(combine(Verdict::fail, Verdict::inconclusive) == Verdict::fail);
    CHECK(combine(Verdict::pass, Verdict::pass) == Verdict::pass);
}
