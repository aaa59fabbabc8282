// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include <boost/math/special_functions/bessel.hpp>

#include "kvnlab/bessel.hpp"

using namespace kvn;

TEST_SUITE("bessel") {
TEST_CASE("zeros quoted values") {
    CHECK(standard_bessel_zero(0.0, 1) == doctest::Approx(2.404825557696).epsilon(1e-11));
    CHECK(standard_bessel_zero(1.0, 1) == doctest::Approx(3.831705970208).epsilon(1e-11));
    CHECK(standard_bessel_zero(0.9, 1) == doctest::Approx(3.696347888109).epsilon(1e-11));
    // counting the origin for nu > 0
    CHECK(bessel_zero(1.0, 1) == 0.0);
    CHECK(bessel_zero(1.0, 2) == doctest::Approx(3.831705970208).epsilon(1e-11));
    CHECK(bessel_zero(0.0, 1) == doctest::Approx(2.404825557696).epsilon(1e-11));
}

TEST_CASE("zeros against Boost.Math") {
    for (double nu : {0.0, 0.1, 0.5, 0.9, 1.0, 2.3, 7.0, 20.0, 49.5})
        for (int k = 1; k <= 6; ++k) {
            INFO("nu=" << nu << " k=" << k);
            CHECK(standard_bessel_zero(nu, k) == doctest::Approx(boost::math::cyl_bessel_j_zero(nu, k)).epsilon(1e-10));
        }
}

TEST_CASE("J_nu against Boost.Math") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> N(0.0, 50.0), X(0.0, 120.0);
    for (int i = 0; i < 300; ++i) {
        const double nu = N(rng), x = X(rng);
        INFO("nu=" << nu << " x=" << x);
        CHECK(std::abs(bessel_j(nu, x) - boost::math::cyl_bessel_j(nu, x)) < 1e-9);
    }
}

TEST_CASE("errors") {
    CHECK_THROWS_AS(bessel_j(51.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(bessel_j(1.0, -1.0), std::domain_error);
    CHECK_THROWS(standard_bessel_zero(1.0, 0));
    CHECK_THROWS(bessel_zero(60.0, 1));
}
}
