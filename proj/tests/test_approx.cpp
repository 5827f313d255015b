#include <doctest.h>

#include <cmath>

#include "translator/approx.hpp"
#include "translator/series.hpp"

using namespace translator;

namespace {

std::vector<double> uniform_grid(double hi, int m) {
    std::vector<double> g;
    for (int i = 1; i <= m; ++i) g.push_back(hi * i / m);
    return g;
}

double series_value(Dimension n, double r) { return eval_series(coefficients(n, 80), r, 80).phi; }

}  // namespace

TEST_CASE("1/k problem starts at 1/(nk)") {
    const auto p = solve_one_over_k(Dimension(2), 10, 1.0, IntegratorConfig{});
    CHECK(p.method == Method::one_over_k);
    CHECK(p.r_min() == doctest::Approx(0.1));
    CHECK(p.values(0) == doctest::Approx(0.05));
}

TEST_CASE("1/k bounds and sandwich") {
    for (int nn : {2, 3, 4})
        for (int k : {10, 100}) {
            IntegratorConfig cfg;
            const auto p = solve_one_over_k(Dimension(nn), k, 0.8, cfg);
            for (const auto& c : check_one_over_k_bounds(p, k, cfg)) {
                INFO(c.name << " n=" << nn << " k=" << k << " excess " << c.worst_excess);
                CHECK(c.checked > 0);
                CHECK(c.pass());
            }
        }
}

TEST_CASE("1/k values converge as k grows") {
    const std::vector<int> ks{4, 16, 64, 256};
    const auto grid = uniform_grid(1.0, 20);
    const auto sw = sweep_one_over_k(Dimension(2), ks, grid);
    REQUIRE(sw.successive_differences.size() == 3);
    CHECK(sw.successive_differences[1] < sw.successive_differences[0]);
    CHECK(sw.successive_differences[2] < sw.successive_differences[1]);
    CHECK(std::abs(sw.limit.value_at(0.5) - series_value(Dimension(2), 0.5)) < 1e-8);
}

TEST_CASE("regularized problem has slope one at the origin") {
    for (double eps : {1.0, 0.25, 1.0 / 64}) {
        const auto p = solve_regularized(Dimension(2), eps, 1.0, IntegratorConfig{});
        CHECK(p.grid(0) == 0.0);
        CHECK(p.values(0) == 0.0);
        CHECK(p.derivs(0) == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(solve_regularized(Dimension(2), 0.0, 1.0, IntegratorConfig{}), DomainError);
}

TEST_CASE("regularized barriers for n = 2, eps <= 2/3") {
    IntegratorConfig cfg;
    for (double eps : {0.6, 0.3, 0.01}) {
        const auto p = solve_regularized(Dimension(2), eps, 2.0 / 3.0, cfg);
        for (const auto& c : check_regularized_barriers(p, eps, cfg)) {
            INFO(c.name << " eps=" << eps);
            CHECK(c.pass());
        }
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            const double r = p.grid(i), x = (r + eps) / 2.0;
            CHECK(p.values(i) >= r / 2.0 - 1e-10);
            CHECK(p.values(i) <= x + x * x + 1e-10);
        }
    }
}

TEST_CASE("sweep: monotone in eps, limit matches the series") {
    const auto grid = uniform_grid(1.0, 100);
    const auto ladder = default_eps_ladder();
    const auto sw = sweep_regularized(Dimension(2), ladder, grid);
    CHECK(sw.monotone_checked > 0);
    CHECK(sw.monotone_worst < 0.0);
    for (const auto& c : sw.bound_checks) CHECK(c.pass());
    CHECK(std::abs(sw.limit.value_at(0.5) - series_value(Dimension(2), 0.5)) < 1e-5);
    // Without extrapolation the smallest member is O(eps) away.
    SweepOptions raw;
    raw.extrapolation_levels = 1;
    const auto plain = sweep_regularized(Dimension(2), ladder, grid, raw);
    const double gap = std::abs(plain.limit.value_at(0.5) - series_value(Dimension(2), 0.5));
    CHECK(gap > 1e-5);
    CHECK(gap < ladder.back());
}

TEST_CASE("limit profile sits between r/n and r/n + (r/n)^2") {
    for (int nn : {2, 3}) {
        const auto grid = uniform_grid(nn / 3.0, 60);
        const auto sw = sweep_regularized(Dimension(nn), default_eps_ladder(), grid);
        // The limit is extrapolated from eps down to 2^-10; below r ~ 0.1 the
        // members are still dominated by their O(eps) start-up layer.
        for (Eigen::Index i = 0; i < sw.limit.size(); ++i) {
            const double r = sw.limit.grid(i), x = r / nn;
            if (r < 0.1) continue;
            CHECK(sw.limit.values(i) >= x - 1e-8);
            CHECK(sw.limit.values(i) <= x + x * x + 1e-8);
        }
        CHECK(sw.limit.value_at(0.1) / 0.1 == doctest::Approx(1.0 / nn).epsilon(0.05));
        // Every member satisfies the lower barrier everywhere.
        for (const auto& m : sw.profiles)
            for (Eigen::Index i = 0; i < m.size(); ++i) CHECK(m.values(i) >= m.grid(i) / nn - 1e-10);
    }
}

TEST_CASE("ladder validation") {
    const std::vector<double> up{0.1, 0.2};
    CHECK_THROWS_AS(sweep_regularized(Dimension(2), up, uniform_grid(1.0, 4)), DomainError);
    const std::vector<int> down{8, 4};
    CHECK_THROWS_AS(sweep_one_over_k(Dimension(2), down, uniform_grid(1.0, 4)), DomainError);
    CHECK(default_eps_ladder().size() == 10);
    CHECK(default_eps_ladder().back() == std::ldexp(1.0, -10));
    CHECK(default_k_ladder() == std::vector<int>{4, 16, 64, 256});
}

TEST_CASE("Neville extrapolation is exact on polynomials") {
    const std::vector<double> x{0.5, 0.25, 0.125};
    std::vector<double> y;
    for (double t : x) y.push_back(1.0 + 2.0 * t - 3.0 * t * t);
    CHECK(extrapolate_to_zero(x, y) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("bound check bookkeeping") {
    BoundCheck c{"demo"};
    c.record(0.1, 1.0, 2.0, 0.0);
    c.record(0.2, 2.0, 1.0, 0.5);
    CHECK(c.checked == 2);
    CHECK(c.violations == 1);
    CHECK(c.worst_excess == doctest::Approx(1.0));
    CHECK(c.worst_radius == 0.2);
    CHECK_FALSE(c.pass());
}
