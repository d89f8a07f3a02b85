#include <doctest.h>

#include "helpers.hpp"
#include "hylo/analysis.hpp"
#include "hylo/soliton.hpp"

using namespace hylo;
using testing::max_diff;
using testing::pi;
using testing::rel_l2;

namespace {

const Grid& bo_grid() {
    static const Grid g(400.0, 4096);
    return g;
}

}  // namespace

TEST_CASE("exact Benjamin-Ono profile") {
    const Grid g(400.0, 4096);
    const Field u = exact_bo_soliton(-1.0, 0.0, g, 10);
    CHECK(u[g.size() / 2].real() == doctest::Approx(-4.0).epsilon(1e-3));
    const Field v = exact_bo_soliton(1.0, 0.0, g, 0);
    CHECK(v[g.size() / 2].real() == doctest::Approx(4.0));
    // Summing periodic images makes the profile nearly stationary on the box.
    const Field bare = exact_bo_soliton(-1.0, 0.0, g, 0);
    const auto w = Nonlinearity::bo();
    CHECK(stationary_residual(u, -1.0, 0.5, w, ChargeConvention::fkdv) <
          0.5 * stationary_residual(bare, -1.0, 0.5, w, ChargeConvention::fkdv));

    const auto sol = exact_bo_solution(-1.0, g, 10);
    CHECK(sol.multiplier == -1.0);
    CHECK(sol.relative_residual() < 1e-4);
    CHECK(estimate_multiplier(sol.profile, 0.5, Nonlinearity::bo(), ChargeConvention::fkdv) ==
          doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("Petviashvili reproduces the Benjamin-Ono soliton") {
    for (double c : {1.0, 2.0}) {
        const auto sol = petviashvili(c, 0.5, Nonlinearity::bo(), bo_grid(), ChargeConvention::fkdv);
        REQUIRE(sol.converged());
        CHECK(sol.multiplier == -c);
        CHECK(rel_l2(sol.profile, exact_bo_soliton(-c, 0.0, bo_grid(), 10)) < 1e-3);
        CHECK(sol.charge == doctest::Approx(4.0 * pi * c).epsilon(1e-3));
        CHECK(sol.relative_residual() < 1e-8);
    }
}

TEST_CASE("gradient flow reproduces the Benjamin-Ono soliton") {
    // The soliton is negative; a positive seed flows to the constant state.
    const Field seed = -1.0 * gaussian_seed(bo_grid(), 4.0 * pi, 1.0, ChargeConvention::fkdv);
    const auto sol = find_soliton_gradient_flow(4.0 * pi, 0.5, Nonlinearity::bo(), ChargeConvention::fkdv, seed);
    REQUIRE(sol.converged());
    CHECK(sol.multiplier == doctest::Approx(-1.0).epsilon(1e-3));
    CHECK(sol.charge == doctest::Approx(4.0 * pi).epsilon(1e-12));
    CHECK(rel_l2(sol.profile, exact_bo_soliton(-1.0, 0.0, bo_grid(), 10)) < 1e-3);
    const auto pv = petviashvili(-sol.multiplier, 0.5, Nonlinearity::bo(), bo_grid(), ChargeConvention::fkdv);
    CHECK(rel_l2(sol.profile, pv.profile) < 1e-6);
}

TEST_CASE("KdV soliton") {
    const Grid g(100.0, 512);
    for (double c : {0.5, 1.0}) {
        const auto sol = petviashvili(c, 1.0, Nonlinearity::kdv(), g, ChargeConvention::fkdv);
        REQUIRE(sol.converged());
        CHECK(rel_l2(sol.profile, exact_kdv_soliton(c, 0.0, g)) < 1e-8);
    }
}

TEST_CASE("Gross-Pitaevskii soliton") {
    const Grid g(100.0, 1024);
    const double a = 1.0;
    const auto sol = petviashvili(a * a, 1.0, Nonlinearity::gpe(), g, ChargeConvention::fns);
    REQUIRE(sol.converged());
    CHECK(sol.multiplier == doctest::Approx(-a * a / 2.0));
    CHECK(sol.charge == doctest::Approx(4.0 * a).epsilon(1e-8));
    Field mod(g, Field::Kind::real);
    for (std::size_t j = 0; j < g.size(); ++j) mod.set(j, std::abs(sol.profile[j]));
    CHECK(rel_l2(mod, exact_gpe_soliton(a, g)) < 1e-8);

    const auto gf = find_soliton_gradient_flow(4.0, 1.0, Nonlinearity::gpe(), ChargeConvention::fns,
                                               gaussian_seed(g, 4.0, 1.0, ChargeConvention::fns, true));
    REQUIRE(gf.converged());
    CHECK(gf.multiplier == doctest::Approx(-0.5).epsilon(1e-4));
}

TEST_CASE("no nonlinearity means vanishing") {
    const Grid g(100.0, 512);
    GradientFlowOptions opt;
    opt.max_iter = 2000;
    const auto sol = find_soliton_gradient_flow(1.0, 0.5, Nonlinearity::zero(), ChargeConvention::fkdv,
                                                gaussian_seed(g, 1.0, 1.0, ChargeConvention::fkdv), opt);
    CHECK(sol.status == SolveStatus::vanishing);
    CHECK_FALSE(sol.converged());
    CHECK_FALSE(sol.message.empty());
}

TEST_CASE("exponent range warning") {
    CHECK(hylomorphy_range_warning(Nonlinearity::bo(), 0.5).empty());
    CHECK_FALSE(hylomorphy_range_warning(Nonlinearity::power(6.0, -1), 0.5).empty());
    CHECK(hylomorphy_range_warning(Nonlinearity::power(6.0, -1), 1.5).empty());
    const Grid g(100.0, 512);
    const auto sol = petviashvili(1.0, 0.5, Nonlinearity::power(6.0, -1), g, ChargeConvention::fkdv);
    CHECK_FALSE(sol.warnings.empty());
}

TEST_CASE("multiplier consistency") {
    const Grid g(100.0, 512);
    const auto w = Nonlinearity::power(3.0, -1);
    const auto sol = petviashvili(1.0, 0.75, w, g, ChargeConvention::fkdv);
    REQUIRE(sol.converged());
    const double lam = estimate_multiplier(sol.profile, 0.75, w, ChargeConvention::fkdv);
    CHECK(lam == doctest::Approx(sol.multiplier).epsilon(1e-8));
    CHECK(stationary_residual(sol.profile, lam, 0.75, w, ChargeConvention::fkdv) < 1e-8 * l2_norm(sol.profile));
    CHECK(stationary_residual(sol.profile, lam + 0.1, 0.75, w, ChargeConvention::fkdv) > 1e-2);
}

TEST_CASE("soliton is a local energy minimizer at fixed charge") {
    const Grid g(100.0, 512);
    const auto w = Nonlinearity::power(3.0, -1);
    const auto sol = petviashvili(1.0, 0.75, w, g, ChargeConvention::fkdv);
    REQUIRE(sol.converged());
    const double e = energy(sol.profile, 0.75, w);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const Field p = random_localized_field(g, seed, 4.0, 2.0);
        const Field v = rescale_to_charge(sol.profile + 1e-2 * l2_norm(sol.profile) * p, sol.charge,
                                          ChargeConvention::fkdv);
        CHECK(energy(v, 0.75, w) >= e - 1e-10);
    }
}

TEST_CASE("helpers") {
    const Grid g(20.0, 64);
    const Field u = exact_kdv_soliton(1.0, 3.0, g);
    const Field c = recenter(u);
    CHECK(std::abs(c[g.size() / 2].real() - u.max_abs()) < 1e-14);
    CHECK(charge_fkdv(rescale_to_charge(u, 2.5, ChargeConvention::fkdv)) == doctest::Approx(2.5));
    CHECK_THROWS_AS(rescale_to_charge(Field(g, Field::Kind::real), 1.0, ChargeConvention::fkdv), PreconditionError);
    CHECK_THROWS_AS(exact_kdv_soliton(-1.0, 0.0, g), PreconditionError);
    CHECK_THROWS_AS(petviashvili(-1.0, 0.5, Nonlinearity::bo(), g, ChargeConvention::fkdv), PreconditionError);
    CHECK(soliton_method_from_string("exact_bo") == SolitonMethod::exact_bo);
    CHECK_THROWS_AS(soliton_method_from_string("newton"), PreconditionError);
    const Field s = gaussian_seed(g, 3.0, 1.0, ChargeConvention::fns, true);
    CHECK_FALSE(s.is_real());
    CHECK(charge_fns(s) == doctest::Approx(3.0));
}
