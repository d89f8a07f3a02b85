#include <doctest.h>

#include "helpers.hpp"
#include "hylo/analysis.hpp"

using namespace hylo;
using testing::pi;

TEST_CASE("translation distance recovers shifts") {
    const Grid g(40.0, 256);
    const Field u = exact_kdv_soliton(1.0, 0.0, g);
    for (double tau : {3.7, -11.3, 0.05}) {
        const Alignment a = translation_distance(u, translate(u, tau));
        CHECK(a.shift == doctest::Approx(tau).epsilon(1e-8));
        CHECK(a.distance < 1e-8 * l2_norm(u));
    }
    const Alignment self = translation_distance(u, u);
    CHECK(std::abs(self.shift) < 1e-12);
    CHECK(self.distance < 1e-12);

    const Alignment scaled = translation_distance(u, 1.01 * u);
    CHECK(std::abs(scaled.shift) < 1e-8);
    CHECK(scaled.distance == doctest::Approx(0.01 * l2_norm(u)).epsilon(1e-8));
}

TEST_CASE("translation distance is a pseudometric") {
    const Grid g(40.0, 256);
    const Field u = random_localized_field(g, 1);
    const Field v = random_localized_field(g, 2);
    const Field w = random_localized_field(g, 3);
    const Alignment uv = translation_distance(u, v);
    const Alignment vu = translation_distance(v, u);
    CHECK(uv.distance == doctest::Approx(vu.distance).epsilon(1e-6));
    CHECK(uv.distance <= l2_norm(u - v) + 1e-12);
    CHECK(translation_distance(u, w).distance <= uv.distance + translation_distance(v, w).distance + 1e-9);
}

TEST_CASE("orbit distance mods out the phase") {
    const Grid g(40.0, 256);
    const Field u = exact_gpe_soliton(1.0, g).as_complex();
    const Field v = std::polar(1.0, 0.8) * translate(u, 2.5);
    const Alignment a = orbit_distance(u, v);
    CHECK(a.distance < 1e-8);
    CHECK(a.shift == doctest::Approx(2.5).epsilon(1e-8));
    CHECK(a.phase == doctest::Approx(0.8).epsilon(1e-8));
    CHECK(translation_distance(u, v).distance > 0.5);
}

TEST_CASE("random fields") {
    const Grid g(40.0, 256);
    CHECK(l2_norm(random_localized_field(g, 5)) == doctest::Approx(1.0));
    CHECK(l2_norm(random_band_limited_field(g, 5, 10, true)) == doctest::Approx(1.0));
    CHECK(testing::max_diff(random_localized_field(g, 5), random_localized_field(g, 5)) == 0.0);
    CHECK(testing::max_diff(random_localized_field(g, 5), random_localized_field(g, 6)) > 0.0);
    const Field b = random_band_limited_field(g, 7, 10);
    CHECK(testing::max_diff(band_limit(b, 10), b) < 1e-14);
}

TEST_CASE("smooth bump") {
    CHECK(smoothstep7(0.0) == 0.0);
    CHECK(smoothstep7(1.0) == 1.0);
    CHECK(smoothstep7(0.5) == doctest::Approx(0.5));
    const Grid g(100.0, 4096);
    for (double r : {2.0, 10.0, 30.0}) {
        const double s0 = 1.7;
        const Field u = bump_profile(r, s0, g);
        const double m = l2_norm(u) * l2_norm(u);
        CHECK(m >= 2.0 * r * s0 * s0);
        CHECK(m <= 2.0 * (r + 1.0) * s0 * s0);
        CHECK(u[g.size() / 2].real() == s0);
        CHECK(u[0].real() == 0.0);
        // |d/dt smoothstep7| peaks at 140/64.
        CHECK(derivative_x(u).max_abs() <= 140.0 / 64.0 * s0 * 1.01);
    }
    CHECK_THROWS_AS(bump_profile(49.5, 1.0, g), PreconditionError);
    CHECK_THROWS_AS(bump_profile(5.0, 0.0, g), PreconditionError);
}

TEST_CASE("interpolation exponents") {
    auto g = gn_exponents(3.0, 0.5);
    CHECK(g.theta == doctest::Approx(1.0 / 3.0));
    CHECK(g.beta == doctest::Approx(2.0));
    CHECK(g.admissible);
    g = gn_exponents(4.0, 1.0);
    CHECK(g.theta == doctest::Approx(0.25));
    CHECK(g.beta == doctest::Approx(3.0));
    CHECK(g.admissible);
    CHECK_FALSE(gn_exponents(6.0, 0.5).admissible);
    CHECK(std::isinf(gn_exponents(4.0, 0.5).beta));
    CHECK_FALSE(gn_exponents(4.0, 0.5).admissible);
    CHECK_FALSE(gn_exponents(3.0, 0.25).admissible);
    CHECK(std::isnan(gn_exponents(3.0, 0.0).theta));
    for (int i = 0; i < 50; ++i) {
        const double s = 0.5 + 2.5 * i / 49.0;
        for (int j = 1; j <= 50; ++j) {
            const double p = 2.0 + 4.0 * s * j / 51.0;
            const auto e = gn_exponents(p, s);
            CHECK(e.admissible);
            CHECK(e.beta > 1.0);
        }
    }
}

TEST_CASE("hylomorphy scan") {
    const Grid g(200.0, 4096);
    const std::vector<double> radii{5.0, 10.0, 20.0, 40.0};
    const auto yes = hylomorphy_scan(Nonlinearity::poly({1.0, 0.0, -1.0}), 1.0, 1.0, radii, g);
    CHECK(yes.verdict);
    CHECK(yes.e0 == doctest::Approx(1.0));
    CHECK(yes.limit_estimate == doctest::Approx(0.0));
    CHECK(yes.intercept == doctest::Approx(yes.limit_estimate).epsilon(0.05).scale(1.0));
    for (std::size_t i = 1; i < radii.size(); ++i) CHECK(yes.ratios[i] < yes.ratios[i - 1]);
    const auto no = hylomorphy_scan(Nonlinearity::poly({1.0}), 1.0, 1.0, radii, g);
    CHECK_FALSE(no.verdict);
    CHECK(no.intercept == doctest::Approx(1.0).epsilon(0.05));
    CHECK_THROWS_AS(hylomorphy_scan(Nonlinearity::bo(), 1.0, 1.0, {}, g), PreconditionError);
}

TEST_CASE("fitted slope") {
    CHECK(fitted_slope({0, 1, 2, 3}, {1, 3, 5, 7}) == doctest::Approx(2.0));
    CHECK(fitted_slope({0, 1, 2}, {4, 4, 4}) == doctest::Approx(0.0));
}

TEST_CASE("short stability runs") {
    SUBCASE("Benjamin-Ono") {
        const Grid g(200.0, 2048);
        const auto sol = exact_bo_solution(-1.0, g, 10);
        StabilityOptions opt;
        opt.t_end = 2.0;
        opt.dt = 2e-3;
        opt.sample_stride = 50;
        const auto rep = orbital_stability_experiment(sol, opt);
        CHECK_FALSE(rep.blew_up);
        CHECK(rep.initial_distance == doctest::Approx(opt.epsilon * rep.profile_norm).epsilon(0.05));
        CHECK(rep.relative_max_distance() < 0.05);
        CHECK(rep.expected_speed == -1.0);
        CHECK(rep.speed_error() < 0.05);
        CHECK(rep.times.size() == rep.distance.size());
    }
    SUBCASE("Gross-Pitaevskii") {
        const Grid g(60.0, 512);
        const auto sol = petviashvili(1.0, 1.0, Nonlinearity::gpe(), g, ChargeConvention::fns);
        REQUIRE(sol.converged());
        StabilityOptions opt;
        opt.t_end = 2.0;
        opt.dt = 1e-3;
        const auto rep = orbital_stability_experiment(sol, opt);
        CHECK_FALSE(rep.blew_up);
        CHECK(rep.relative_max_distance() < 0.05);
        CHECK(rep.expected_speed == 0.0);
        CHECK(std::abs(rep.fitted_speed) < 0.05);
    }
}
