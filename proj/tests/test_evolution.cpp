#include <doctest.h>

#include "helpers.hpp"
#include "hylo/analysis.hpp"
#include "hylo/evolution.hpp"
#include "hylo/soliton.hpp"

using namespace hylo;
using testing::max_diff;
using testing::pi;

namespace {

Field evolve(const Field& u0, Family family, double s, const Nonlinearity& w, double dt, double t_end,
             bool dealias = true) {
    EvolutionConfig cfg;
    cfg.family = family;
    cfg.s = s;
    cfg.nonlinearity = w;
    cfg.dt = dt;
    cfg.t_end = t_end;
    cfg.snapshot_stride = 1u << 30;
    cfg.dealias = dealias;
    cfg.keep_snapshots = true;
    return run(cfg, u0).snapshots.back().state;
}

Field smooth_bump(const Grid& g, double amp) {
    return Field::from_function(g, [amp](double x) { return amp * std::exp(-x * x / 4.0); });
}

}  // namespace

TEST_CASE("linear fkdv plane waves are exact") {
    const Grid g(2.0 * pi, 64);
    for (double s : {0.5, 1.0, 1.5}) {
        for (double k : {1.0, 3.0, -5.0}) {
            const double c = std::pow(std::abs(k), 2.0 * s);
            const double t = 0.7;
            const Field u0 = Field::from_function(g, [k](double x) { return std::cos(k * x); });
            const Field want = Field::from_function(g, [=](double x) { return std::cos(k * (x - c * t)); });
            CHECK(max_diff(evolve(u0, Family::fkdv, s, Nonlinearity::zero(), 0.01, t), want) < 1e-11);
        }
    }
}

TEST_CASE("linear fns plane waves are exact") {
    const Grid g(2.0 * pi, 64);
    for (double s : {0.5, 1.0, 2.0}) {
        const double k = 3.0;
        const double om = std::pow(k, 2.0 * s) / 2.0;
        const double t = 1.3;
        const Field psi0 = Field::from_complex_function(g, [k](double x) { return std::polar(1.0, k * x); });
        const Field want =
            Field::from_complex_function(g, [=](double x) { return std::polar(1.0, k * x - om * t); });
        CHECK(max_diff(evolve(psi0, Family::fns, s, Nonlinearity::zero(), 0.01, t), want) < 1e-11);
    }
}

TEST_CASE("stationary nonlinear plane wave") {
    // a = 1, k = 1, s = 1/2 under the cubic focusing potential: omega = (|k| - a^2)/2 = 0.
    const Grid g(2.0 * pi, 64);
    const Field psi0 = Field::from_complex_function(g, [](double x) { return std::polar(1.0, x); });
    CHECK(max_diff(evolve(psi0, Family::fns, 0.5, Nonlinearity::gpe(), 0.01, 2.0), psi0) < 1e-12);
}

TEST_CASE("zero data stays zero") {
    const Grid g(20.0, 64);
    EvolutionConfig cfg;
    cfg.nonlinearity = Nonlinearity::bo();
    cfg.t_end = 0.1;
    cfg.dt = 0.01;
    cfg.snapshot_stride = 2;
    const auto tr = run(cfg, Field(g, Field::Kind::real));
    CHECK(tr.size() == 6);
    for (std::size_t i = 0; i < tr.size(); ++i) {
        CHECK(tr.energy[i] == 0.0);
        CHECK(tr.charge[i] == 0.0);
    }
    CHECK(tr.times.back() == doctest::Approx(0.1));
}

TEST_CASE("conservation") {
    SUBCASE("fkdv") {
        const Grid g(50.0, 256);
        EvolutionConfig cfg;
        cfg.nonlinearity = Nonlinearity::bo();
        cfg.dt = 1e-3;
        cfg.t_end = 2.0;
        const auto tr = run(cfg, 2.0 * random_band_limited_field(g, 9, 32));
        CHECK(tr.max_energy_drift() < 1e-9);
        CHECK(tr.max_charge_drift() < 1e-11);
    }
    SUBCASE("fns") {
        const Grid g(40.0, 256);
        EvolutionConfig cfg;
        cfg.family = Family::fns;
        cfg.s = 1.0;
        cfg.nonlinearity = Nonlinearity::gpe();
        cfg.dt = 1e-3;
        cfg.t_end = 1.0;
        const auto tr = run(cfg, exact_gpe_soliton(1.0, g));
        CHECK(tr.max_energy_drift() < 1e-7);
        CHECK(tr.max_charge_drift() < 1e-11);
    }
}

TEST_CASE("temporal order of accuracy") {
    SUBCASE("integrating-factor RK4") {
        const Grid g(40.0, 128);
        const Field u0 = smooth_bump(g, 1.0);
        const auto w = Nonlinearity::bo();
        const Field ref = evolve(u0, Family::fkdv, 0.5, w, 0.0025, 1.0);
        const double e1 = testing::rel_l2(evolve(u0, Family::fkdv, 0.5, w, 0.04, 1.0), ref);
        const double e2 = testing::rel_l2(evolve(u0, Family::fkdv, 0.5, w, 0.02, 1.0), ref);
        CHECK(std::log2(e1 / e2) >= 3.8);
    }
    SUBCASE("Strang") {
        const Grid g(40.0, 128);
        const Field u0 = smooth_bump(g, 1.0).as_complex();
        const auto w = Nonlinearity::gpe();
        const Field ref = evolve(u0, Family::fns, 1.0, w, 0.00125, 1.0);
        const double e1 = testing::rel_l2(evolve(u0, Family::fns, 1.0, w, 0.02, 1.0), ref);
        const double e2 = testing::rel_l2(evolve(u0, Family::fns, 1.0, w, 0.01, 1.0), ref);
        CHECK(std::log2(e1 / e2) >= 1.9);
    }
}

TEST_CASE("fns is time reversible") {
    const Grid g(40.0, 128);
    const Field psi0 = 1.5 * random_localized_field(g, 4, 6.0, 1.0, true);
    auto conj = [](Field f) {
        for (auto& v : f.mutable_values()) v = std::conj(v);
        return f;
    };
    const auto w = Nonlinearity::gpe();
    const Field fwd = evolve(psi0, Family::fns, 0.75, w, 0.01, 1.0);
    const Field back = conj(evolve(conj(fwd), Family::fns, 0.75, w, 0.01, 1.0));
    CHECK(max_diff(back, psi0) < 1e-12);
}

TEST_CASE("translation covariance") {
    const Grid g(40.0, 128);
    const double a = 5.0 * g.spacing();
    const Field u0 = smooth_bump(g, 1.0);
    const auto w = Nonlinearity::bo();
    const Field lhs = evolve(translate(u0, a), Family::fkdv, 0.5, w, 0.01, 0.5);
    const Field rhs = translate(evolve(u0, Family::fkdv, 0.5, w, 0.01, 0.5), a);
    CHECK(max_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("steppers agree with the driver") {
    const Grid g(40.0, 128);
    const Field u0 = smooth_bump(g, 1.0);
    Field u = u0;
    for (int i = 0; i < 10; ++i) u = step_fkdv(u, 0.01, 0.5, Nonlinearity::bo());
    CHECK(max_diff(u, evolve(u0, Family::fkdv, 0.5, Nonlinearity::bo(), 0.01, 0.1)) < 1e-13);

    Field psi = u0.as_complex();
    for (int i = 0; i < 10; ++i) psi = step_fns(psi, 0.01, 1.0, Nonlinearity::gpe());
    CHECK(max_diff(psi, evolve(u0.as_complex(), Family::fns, 1.0, Nonlinearity::gpe(), 0.01, 0.1)) < 1e-13);
}

TEST_CASE("weak form residual") {
    const Grid g(40.0, 256);
    const auto w = Nonlinearity::bo();
    const double dt = 1e-3;
    const Field u0 = smooth_bump(g, 1.0);
    const Field u1 = step_fkdv(u0, dt, 0.5, w);
    const Field u2 = step_fkdv(u1, dt, 0.5, w);
    const Field phi = Field::from_function(g, [](double x) { return std::exp(-(x - 1.0) * (x - 1.0)); });
    CHECK(std::abs(weak_form_residual(u0, u1, u2, dt, phi, 0.5, w)) < 1e-5);  // O(dt^2) from the central difference
    // A state that does not move fails the test.
    CHECK(std::abs(weak_form_residual(u1, u1, u1, dt, phi, 0.5, w)) > 1e-2);
}

TEST_CASE("Galilean shift") {
    const Grid g(40.0, 256);
    const auto w = Nonlinearity::bo();
    const auto sh = fkdv_shift(w, 0.3);
    const Field u0 = smooth_bump(g, 1.0);
    const double t = 1.0;
    const Field u = evolve(u0, Family::fkdv, 0.5, w, 0.01, t);
    const Field v = evolve(u0, Family::fkdv, 0.5, sh.shifted, 0.01, t);
    CHECK(max_diff(u, translate(v, sh.frame_velocity * t)) < 1e-9);
}

TEST_CASE("phase shift") {
    const Grid g(40.0, 256);
    const auto w = Nonlinearity::gpe();
    const auto sh = fns_normalizing_shift(w);
    const Field psi0 = smooth_bump(g, 1.0).as_complex();
    const double t = 1.0;
    const Field psi = evolve(psi0, Family::fns, 1.0, w, 0.01, t);
    const Field psi1 = evolve(psi0, Family::fns, 1.0, sh.shifted, 0.01, t);
    CHECK(max_diff(psi, std::polar(1.0, sh.phase_rate * t) * psi1) < 1e-12);
}

TEST_CASE("bad input") {
    const Grid g(20.0, 64);
    EvolutionConfig cfg;
    cfg.dt = 0.0;
    CHECK_THROWS_AS(run(cfg, Field(g, Field::Kind::real)), PreconditionError);
    cfg.dt = -1e-3;
    CHECK_THROWS_AS(run(cfg, Field(g, Field::Kind::real)), PreconditionError);
    cfg.dt = 1e-3;
    CHECK_THROWS_AS(run(cfg, Field(g, Field::Kind::complex)), PreconditionError);
    cfg.s = -0.5;
    CHECK_THROWS_AS(run(cfg, Field(g, Field::Kind::real)), PreconditionError);
    CHECK_THROWS_AS(step_fkdv(Field(g, Field::Kind::complex), 1e-3, 0.5, Nonlinearity::bo()), PreconditionError);
    CHECK_THROWS_AS(family_from_string("kdv"), PreconditionError);
    CHECK(family_from_string("fns") == Family::fns);
}

TEST_CASE("warnings") {
    const Grid g(20.0, 64);
    EvolutionConfig cfg;
    cfg.nonlinearity = Nonlinearity::bo();
    cfg.dt = 0.03;
    cfg.t_end = 0.1;
    const auto flat = Field::from_function(g, [](double) { return 0.1; });
    const auto tr = run(cfg, flat);
    auto has = [&](const std::string& needle) {
        for (const auto& w : tr.warnings)
            if (w.find(needle) != std::string::npos) return true;
        return false;
    };
    CHECK(has("tail mass"));
    CHECK(has("t_end is hit exactly"));
    CHECK(tr.times.back() == doctest::Approx(0.1).epsilon(1e-14));

    cfg.dt = 1.0;
    cfg.t_end = 1.0;
    const auto tr2 = run(cfg, smooth_bump(g, 3.0));
    bool ceiling = false;
    for (const auto& w : tr2.warnings) ceiling = ceiling || w.find("advisory") != std::string::npos;
    CHECK(ceiling);
}

TEST_CASE("blow-up is reported") {
    const Grid g(20.0, 128);
    EvolutionConfig cfg;
    cfg.nonlinearity = Nonlinearity::poly({0.0, 0.0, 0.0, 0.0, 1.0});
    cfg.dt = 0.5;
    cfg.t_end = 50.0;
    cfg.dealias = false;
    try {
        run(cfg, smooth_bump(g, 20.0));
        FAIL("expected a blow-up");
    } catch (const BlowUpError& e) {
        CHECK(e.time() >= 0.0);
        CHECK(e.partial_trace().size() >= 1);
        CHECK(std::isfinite(l2_norm(e.last_state())));
    }
}
