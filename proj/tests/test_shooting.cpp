#include <doctest.h>

#include <cmath>

#include "translator/shooting.hpp"

using namespace translator;

TEST_CASE("shots from the ends of the trapping interval") {
    ShootingConfig cfg;
    CHECK(shoot_once(Dimension(2), 1.0 + 1e-6, 10.0, cfg).classification == ShotClass::exceeded_upper);
    const auto low = shoot_once(Dimension(2), 0.0, 10.0, cfg);
    CHECK(low.classification == ShotClass::dropped_below_zero);
    CHECK(low.exit_radius < 1.0);
    CHECK(shoot_once(Dimension(3), 0.6, 10.0, cfg).classification == ShotClass::exceeded_upper);
}

TEST_CASE("bisection n = 2") {
    ShootingConfig cfg;
    const auto res = bisect_initial(Dimension(2), 20.0, 1e-12, cfg);
    CHECK(res.final_horizon >= 20.0);
    CHECK(res.a_star > 0.0);
    CHECK(res.a_star < 1.0);
    const auto& t = res.psi;
    CHECK(t.back_r() >= 20.0);
    // e^r psi -> 1/n
    CHECK(std::exp(t.back_r()) * t.back_y() == doctest::Approx(0.5).epsilon(2e-3));
    // Last record on the initial value itself.
    const BracketRecord* last = nullptr;
    for (const auto& b : res.bracket_history)
        if (b.anchor == 0.0) last = &b;
    REQUIRE(last);
    CHECK(last->hi - last->lo <= 1e-12);
    CHECK(last->lo <= res.a_star);
    CHECK(res.a_star <= last->hi);
    CHECK(shoot_once(Dimension(2), res.a_star, 10.0, cfg).classification == ShotClass::alive);
}

TEST_CASE("accepted trajectory stays in the trap") {
    for (int nn : {2, 3, 4}) {
        const Dimension n(nn);
        ShootingConfig cfg;
        const auto res = bisect_initial(n, 20.0, 1e-12, cfg);
        for (std::size_t i = 0; i < res.psi.r.size(); ++i) {
            const double r = res.psi.r[i], y = res.psi.y[i];
            const double band = cfg.band * std::exp(-r);
            CHECK(y >= -band);
            CHECK(y <= std::exp(-r) / (nn - 1) + band);
        }
    }
}

TEST_CASE("nearby initial values escape before the horizon") {
    ShootingConfig cfg;
    const auto res = bisect_initial(Dimension(2), 20.0, 1e-12, cfg);
    const auto up = shoot_once(Dimension(2), res.a_star + 1e-3, 20.0, cfg);
    const auto down = shoot_once(Dimension(2), res.a_star - 1e-3, 20.0, cfg);
    CHECK(up.classification == ShotClass::exceeded_upper);
    CHECK(down.classification == ShotClass::dropped_below_zero);
    CHECK(up.exit_radius < 20.0);
    CHECK(down.exit_radius < 20.0);
}

TEST_CASE("phi from psi and the requested radii") {
    ShootingConfig cfg;
    cfg.phi_radii = {0.1, 0.25, 0.5, 1.0};
    const auto res = bisect_initial(Dimension(3), 20.0, 1e-12, cfg);
    const auto p = psi_to_phi(res, Dimension(3));
    CHECK(p.method == Method::shooting);
    for (double r : cfg.phi_radii) {
        bool found = false;
        for (Eigen::Index i = 0; i < p.size(); ++i) found = found || std::abs(p.grid(i) - r) < 1e-15;
        CHECK(found);
    }
    CHECK(p.value_at(p.r_min()) / p.r_min() == doctest::Approx(1.0 / 3.0).epsilon(1e-3));
    CHECK(p.value_at(1.0) == doctest::Approx(res.a_star));
}

TEST_CASE("figure families") {
    const std::vector<int> k0{3, 4, 5};
    const auto curves = backward_family(Dimension(2), 0.5, k0, 1.0, IntegratorConfig{});
    CHECK(curves.size() == 6);
    for (const auto& c : curves) {
        CHECK(c.trajectory.r.front() > c.trajectory.r.back());
        CHECK(c.trajectory.r.back() == doctest::Approx(1.0));
    }
    const std::vector<double> values{0.0, 0.5, 1.0};
    const auto fwd = forward_family(Dimension(2), values, 8.0, ShootingConfig{});
    CHECK(fwd.size() == 3);
}

TEST_CASE("invalid requests") {
    ShootingConfig cfg;
    CHECK_THROWS_AS(bisect_initial(Dimension(1), 20.0, 1e-12, cfg), DomainError);
    cfg.horizon_step = 0.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}
