#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sedh/units.hpp"

using namespace sedh;

namespace {
constexpr double alpha_default = 1.0 / 137.036;
}

TEST_CASE("radiation coupling against its defining formula") {
    // quoted value 1/1964.71 for Z=1
    CHECK(beta_coupling(1, alpha_default) == doctest::Approx(1.0 / 1964.71).epsilon(1e-5));
    // Z=3 value and the damping-time cross-check against 4.28e5 t0
    double b3 = beta_coupling(3, alpha_default);
    CHECK(b3 == doctest::Approx(1.52694e-3).epsilon(1e-5));
    CHECK(std::fabs(1.0 / (b3 * b3) - 4.28e5) < 0.01e5);
    CHECK(beta_coupling(0, 0.25) == 0.0);

    // full-precision identity for random-ish inputs
    for (double z : {1.0, 2.0, 3.0, 7.5}) {
        for (double a : {0.001, 0.0072973525693, 0.1, 0.9}) {
            CHECK(beta_coupling(z, a) == std::sqrt(2.0 / 3.0) * z * std::pow(a, 1.5));
        }
    }
}

TEST_CASE("derived parameters") {
    auto p = PhysicalParams::make(3.0, alpha_default);
    CHECK(p.za2 == 9.0 * alpha_default * alpha_default);
    CHECK(p.tau_c == p.za2);
    CHECK(p.beta == beta_coupling(3.0, alpha_default));
    // tau0(Z=3) ~ 2.688e-18 s
    CHECK(bohr_time_seconds(p) == doctest::Approx(2.688e-18).epsilon(1e-3));
}

TEST_CASE("hamiltonian on reference states") {
    auto p = PhysicalParams::make(3.0, alpha_default);
    HamiltonianTerms off{false, false};

    ElectronState circ{{1, 0, 0}, {0, 1, 0}, {0, 0, spin_magnitude}, 0.0};
    CHECK(hamiltonian(circ, p, off) == doctest::Approx(-0.5).epsilon(1e-15));

    ElectronState rest{{1, 0, 0}, {0, 0, 0}, {0, 0, spin_magnitude}, 0.0};
    CHECK(hamiltonian(rest, p, off) == doctest::Approx(-1.0).epsilon(1e-15));

    // with corrections on: E = -1/2 + za2 (sqrt(3)/4 - 1/8) for the unit
    // circular orbit with S along z
    double expected = -0.5 + p.za2 * (std::sqrt(3.0) / 4.0 - 0.125);
    CHECK(hamiltonian(circ, p) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("hamiltonian without corrections reduces to the Kepler form") {
    auto p = PhysicalParams::make(3.0, alpha_default);
    HamiltonianTerms off{false, false};
    ElectronState st{{0.3, -1.2, 0.4}, {0.7, 0.1, -0.9}, {0.5, 0.5, 0.1}, 0.0};
    double expected = 0.5 * norm2(st.v) - 1.0 / norm(st.r);
    CHECK(hamiltonian(st, p, off) == expected);
}

TEST_CASE("singularity floor") {
    auto p = PhysicalParams::make(1.0, alpha_default);
    ElectronState st{{1e-7, 0, 0}, {0, 0, 0}, {0, 0, spin_magnitude}, 0.0};
    CHECK_THROWS_AS(hamiltonian(st, p), SingularPositionError);
    CHECK_NOTHROW(hamiltonian(st, p, {}, 1e-8));
}

TEST_CASE("keplerian frequency") {
    CHECK(kepler_frequency(-0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(kepler_frequency(-1.6) == doctest::Approx(5.7243340223994625).epsilon(1e-14));
    CHECK(kepler_frequency(-0.05) == doctest::Approx(0.0316227766016838).epsilon(1e-14));
    CHECK_THROWS_AS(kepler_frequency(0.0), std::domain_error);
    CHECK_THROWS_AS(kepler_frequency(0.3), std::domain_error);
}

TEST_CASE("circular-orbit frequency identity for a = 0.5, 1, 2, 4") {
    auto p = PhysicalParams::make(3.0, alpha_default);
    HamiltonianTerms off{false, false};
    for (double a : {0.5, 1.0, 2.0, 4.0}) {
        ElectronState st{{a, 0, 0}, {0, 1.0 / std::sqrt(a), 0}, {0, 0, spin_magnitude}, 0.0};
        double wk = kepler_frequency(hamiltonian(st, p, off));
        CHECK(wk == doctest::Approx(std::pow(a, -1.5)).epsilon(1e-13));
    }
}

TEST_CASE("angular momentum and total J") {
    ElectronState st{{1, 0, 0}, {0, 1, 0}, {0, 0, spin_magnitude}, 0.0};
    Vec3 l = angular_momentum(st);
    CHECK(l.x == 0.0);
    CHECK(l.y == 0.0);
    CHECK(l.z == 1.0);
    Vec3 j = total_j(st);
    CHECK(j.z == doctest::Approx(1.0 + spin_magnitude).epsilon(1e-15));

    ElectronState still{{1, 0, 0}, {0, 0, 0}, {0.1, 0.2, 0.3}, 0.0};
    Vec3 l0 = angular_momentum(still);
    CHECK(norm(l0) == 0.0);
}
