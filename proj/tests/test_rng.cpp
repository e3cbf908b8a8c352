#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sedh/rng.hpp"

using namespace sedh;

TEST_CASE("streams are pure functions of (seed, id, counter)") {
    auto s1 = rng::mode_stream(42, 7);
    auto s2 = rng::mode_stream(42, 7);
    for (std::uint64_t k = 0; k < 50; ++k) {
        CHECK(s1.uniform(k) == s2.uniform(k));
        CHECK(s1.gaussian(k) == s2.gaussian(k));
    }
    auto s3 = rng::mode_stream(42, 8);
    auto s4 = rng::mode_stream(43, 7);
    CHECK(s1.uniform(0) != s3.uniform(0));
    CHECK(s1.uniform(0) != s4.uniform(0));
}

TEST_CASE("bulk fill matches per-index access") {
    auto st = rng::mode_stream(1234, 99);
    double bulk[23];
    rng::fill_gaussians(st, bulk, 23);
    for (std::uint64_t j = 0; j < 23; ++j) {
        CHECK(bulk[j] == st.gaussian(j));
    }
}

TEST_CASE("uniforms live in (0, 1]") {
    auto st = rng::stream(9, rng::Domain::push);
    for (std::uint64_t k = 0; k < 10000; ++k) {
        double u = st.uniform(k);
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
}

TEST_CASE("gaussian moments over 1e5 draws") {
    // standard error of the variance estimate is sqrt(2/n) ~ 0.0045
    auto st = rng::stream(2718, rng::Domain::ensemble, 5);
    const std::size_t n = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double g = st.gaussian(j);
        sum += g;
        sumsq += g * g;
    }
    double mean = sum / static_cast<double>(n);
    double var = sumsq / static_cast<double>(n) - mean * mean;
    CHECK(std::fabs(mean) < 0.013);      // 4 sigma
    CHECK(std::fabs(var - 1.0) < 0.018); // 4 sigma
}

TEST_CASE("independence across mode streams") {
    // correlation between neighbouring mode streams stays at the 1/sqrt(n) level
    const std::size_t n = 20000;
    double cross = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        auto sa = rng::mode_stream(77, m + 1);
        auto sb = rng::mode_stream(77, m + 2);
        cross += sa.gaussian(0) * sb.gaussian(0);
    }
    CHECK(std::fabs(cross / static_cast<double>(n)) < 4.0 / std::sqrt(static_cast<double>(n)));
}
