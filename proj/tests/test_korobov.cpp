#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "latgen/korobov.hpp"
#include "latgen/zeta.hpp"
#include "oracles.hpp"

using namespace latgen;

TEST_CASE("zeta matches frozen references") {
    CHECK(riemann_zeta(1.5) == doctest::Approx(oracle::zeta_1_5).epsilon(1e-14));
    CHECK(riemann_zeta(2.0) == doctest::Approx(oracle::zeta_2).epsilon(1e-14));
    CHECK(riemann_zeta(3.0) == doctest::Approx(oracle::zeta_3).epsilon(1e-14));
    CHECK(riemann_zeta(4.0) == doctest::Approx(oracle::zeta_4).epsilon(1e-14));
    CHECK(riemann_zeta(6.0) == doctest::Approx(oracle::zeta_6).epsilon(1e-14));
    CHECK(riemann_zeta(12.0) == doctest::Approx(oracle::zeta_12).epsilon(1e-14));
    CHECK_THROWS_AS(riemann_zeta(1.0), std::domain_error);
    CHECK_THROWS_AS(riemann_zeta(0.5), std::domain_error);
    // near the pole the explicit integral term carries everything
    CHECK(riemann_zeta(1.0 + 1e-6) * 1e-6 == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("r_alpha decay factors") {
    CHECK(r_alpha(0.5, 0, 2.0) == 1.0);
    CHECK(r_alpha(0.5, 2, 2.0) == doctest::Approx(0.125));
    CHECK(r_alpha(0.5, -2, 2.0) == doctest::Approx(0.125));
    const double g[] = {1.0, 0.5};
    const std::int64_t h[] = {3, -2};
    CHECK(r_alpha(g, h, 2.0) == doctest::Approx((1.0 / 9) * 0.125));
    const std::int64_t h0[] = {0, 0};
    CHECK(r_alpha(g, h0, 2.0) == 1.0);
}

TEST_CASE("omega closed forms hit frozen values") {
    CHECK(omega(0.0, 2.0) == doctest::Approx(oracle::omega_0_a2).epsilon(1e-15));
    CHECK(omega(0.25, 2.0) == doctest::Approx(oracle::omega_quarter_a2).epsilon(1e-15));
    CHECK(omega(0.5, 2.0) == doctest::Approx(oracle::omega_half_a2).epsilon(1e-15));
    CHECK(omega(0.25, 4.0) == doctest::Approx(oracle::omega_quarter_a4).epsilon(1e-14));
    CHECK(omega(0.125, 6.0) == doctest::Approx(oracle::omega_eighth_a6).epsilon(1e-14));
}

TEST_CASE("omega series agrees with closed forms and references") {
    // slow decay at low alpha needs a looser tolerance to stay under the term cap
    CHECK(omega(0.3, 1.5, 1e-9) == doctest::Approx(oracle::omega_p3_a15).epsilon(1e-8));
    CHECK_THROWS_AS(omega(0.3, 1.5, 1e-14), std::runtime_error);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> unif(0.01, 0.99);
    for (double alpha : {2.0, 4.0, 6.0}) {
        for (int i = 0; i < 100; ++i) {
            const double x = unif(rng);
            CHECK(std::abs(omega_series_reference(x, alpha, 1e-10) - omega(x, alpha)) < 5e-10);
        }
    }
    // periodicity and symmetry
    CHECK(omega(1.25, 2.0) == doctest::Approx(omega(0.25, 2.0)));
    CHECK(omega(0.3, 1.5, 1e-9) == doctest::Approx(omega(0.7, 1.5, 1e-9)).epsilon(1e-8));
}

TEST_CASE("omega table mirrors the grid") {
    OmegaTable table(8, 2.0);
    REQUIRE(table.size() == 8);
    CHECK(table[0] == doctest::Approx(oracle::omega_0_a2));
    CHECK(table[2] == doctest::Approx(oracle::omega_quarter_a2));
    CHECK(table[4] == doctest::Approx(oracle::omega_half_a2));
    for (std::uint64_t i = 1; i < 8; ++i)
        CHECK(table[i] == table[8 - i]);
}

TEST_CASE("one-coordinate squared error is the exact closed form") {
    LatticeParams p = LatticeParams::make(2, 3, 1, 2.0, {1.0});
    const std::uint64_t z1[] = {1};
    CHECK(squared_error(z1, p) == doctest::Approx(oracle::e2_z1_n8).epsilon(1e-15));

    LatticeParams p4 = LatticeParams::make(2, 3, 1, 4.0, {1.0});
    CHECK(squared_error(z1, p4) == doctest::Approx(oracle::e2_z1_n8_a4).epsilon(1e-15));

    // non-unit component: gcd enters through the closed form
    LatticeParams p9 = LatticeParams::make(3, 2, 1, 2.0, {1.0});
    const std::uint64_t z3[] = {3};
    CHECK(squared_error(z3, p9) ==
          doctest::Approx(2.0 * oracle::zeta_2 * std::pow(3.0 / 9.0, 2.0)).epsilon(1e-15));
    const std::uint64_t z0[] = {0};
    CHECK(squared_error(z0, p9) == doctest::Approx(2.0 * oracle::zeta_2).epsilon(1e-15));
}

TEST_CASE("squared error matches frozen multi-coordinate references") {
    LatticeParams p = LatticeParams::make(2, 3, 3, 2.0, {1.0, 1.0, 1.0});
    const std::uint64_t z13[] = {1, 3};
    const std::uint64_t z15[] = {1, 5};
    const std::uint64_t z17[] = {1, 7};
    CHECK(squared_error(z13, p) == doctest::Approx(oracle::e2_z13_n8).epsilon(1e-13));
    CHECK(squared_error(z15, p) == doctest::Approx(oracle::e2_z15_n8).epsilon(1e-13));
    CHECK(squared_error(z17, p) == doctest::Approx(oracle::e2_z17_n8).epsilon(1e-13));

    LatticeParams pw = LatticeParams::make(2, 3, 3, 2.0, {1.0, 0.75, 0.5});
    const std::uint64_t z135[] = {1, 3, 5};
    CHECK(squared_error(z135, pw) == doctest::Approx(oracle::e2_z135_n8).epsilon(1e-13));

    LatticeParams p9 = LatticeParams::make(3, 2, 2, 2.0, {1.0, 1.0});
    const std::uint64_t z12[] = {1, 2};
    CHECK(squared_error(z12, p9) == doctest::Approx(oracle::e2_z12_n9).epsilon(1e-13));

    LatticeParams p15 = LatticeParams::make(2, 3, 2, 1.5, {1.0, 1.0});
    OmegaTable loose(p15.n, p15.alpha, 1e-9);
    CHECK(squared_error(z13, p15, loose) ==
          doctest::Approx(oracle::e2_z13_n8_a15).epsilon(1e-7));
}

TEST_CASE("squared error validates its arguments") {
    LatticeParams p = LatticeParams::make(2, 3, 2, 2.0, {1.0, 1.0});
    const std::uint64_t too_big[] = {1, 9};
    CHECK_THROWS_AS(squared_error(too_big, p), std::invalid_argument);
    const std::uint64_t three[] = {1, 3, 5};
    CHECK_THROWS_AS(squared_error(three, p), std::invalid_argument);
    CHECK_THROWS_AS(squared_error({}, p), std::invalid_argument);
}

TEST_CASE("dual-lattice oracle: truncated reference and convergence") {
    LatticeParams p = LatticeParams::make(2, 3, 1, 2.0, {1.0});
    const std::uint64_t z1[] = {1};
    CHECK(dual_lattice_error(z1, p, 80) == doctest::Approx(oracle::dual_z1_n8_h80).epsilon(1e-14));

    // truncations increase toward the exact value
    const double exact = squared_error(z1, p);
    double prev = 0.0;
    for (std::uint64_t H : {16, 64, 256, 1024}) {
        const double t = dual_lattice_error(z1, p, H);
        CHECK(t >= prev);
        CHECK(t <= exact * (1 + 1e-12));
        prev = t;
    }
    CHECK(prev == doctest::Approx(exact).epsilon(0.01));

    // multi-coordinate agreement at stiff truncation
    LatticeParams p2 = LatticeParams::make(2, 3, 2, 2.0, {1.0, 1.0});
    const std::uint64_t z13[] = {1, 3};
    CHECK(dual_lattice_error(z13, p2, 512) ==
          doctest::Approx(squared_error(z13, p2)).epsilon(0.02));
}

TEST_CASE("dual-lattice oracle guards its domain") {
    LatticeParams p = LatticeParams::make(2, 3, 5, 2.0, std::vector<double>(5, 1.0));
    const std::uint64_t z5[] = {1, 3, 5, 7, 1};
    CHECK_THROWS_AS(dual_lattice_error(z5, p, 8), std::invalid_argument);
}
