#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "sedh/lambda.hpp"

using namespace sedh;

TEST_CASE("exact entries") {
    const auto& l = lambda_basis();
    double s3 = std::sqrt(3.0);
    double s5 = std::sqrt(5.0);
    CHECK(l[0](0, 1) == s3);
    CHECK(l[0](1, 0) == s3);
    CHECK(l[0](0, 0) == 0.0);
    CHECK(l[1](0, 1) == -s5);
    CHECK(l[1](1, 0) == s5);
    CHECK(l[7](0, 0) == 1.0);
    CHECK(l[7](1, 1) == 1.0);
    CHECK(l[7](2, 2) == -2.0);
}

TEST_CASE("all eight are traceless") {
    for (const auto& m : lambda_basis()) {
        CHECK(m(0, 0) + m(1, 1) + m(2, 2) == 0.0);
    }
}

TEST_CASE("symmetry split: channels 2, 5, 7 antisymmetric, the rest symmetric") {
    const auto& basis = lambda_basis();
    for (int a = 0; a < 8; ++a) {
        bool anti = (a == 1 || a == 4 || a == 6);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (anti) {
                    CHECK(basis[a](i, j) == -basis[a](j, i));
                } else {
                    CHECK(basis[a](i, j) == basis[a](j, i));
                }
            }
    }
    for (int a : lambda_antisymmetric) {
        CHECK((a == 1 || a == 4 || a == 6));
    }
}

TEST_CASE("contraction identity over all 81 index tuples") {
    CHECK(lambda_contraction_error(lambda_basis()) <= 1e-12);

    // spot values: (i,k,j,l) = (0,0,0,0) -> 4 and (0,0,1,1) -> -2
    const auto& basis = lambda_basis();
    double s0000 = 0.0, s0011 = 0.0;
    for (const auto& m : basis) {
        s0000 += m(0, 0) * m(0, 0);
        s0011 += m(0, 0) * m(1, 1);
    }
    CHECK(s0000 == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(s0011 == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("mutation sensitivity: a tampered basis fails the identity") {
    auto basis = lambda_basis();
    basis[7](2, 2) = -1.0;
    CHECK(lambda_contraction_error(basis) > 0.1);
}
