#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "besselsum/bessel.hpp"
#include "reference_values.hpp"

using namespace besselsum;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("J matches reference values", "[bessel]") {
    for (auto r : ref::bessel_j) {
        INFO("nu = " << r.x << ", x = " << r.y);
        CHECK_THAT(bessel_j(r.x, r.y), WithinAbs(r.value, 2e-16 + 1e-13 * std::abs(r.value)));
    }
}

TEST_CASE("scaled I and K match reference values", "[bessel]") {
    for (auto r : ref::bessel_i_scaled) CHECK_THAT(bessel_i_scaled(r.x, r.y), WithinRel(r.value, 1e-13));
    for (auto r : ref::bessel_k_scaled) CHECK_THAT(bessel_k_scaled(r.x, r.y), WithinRel(r.value, 1e-13));
}

TEST_CASE("J is continuous across the asymptotic switch", "[bessel]") {
    for (double nu : {0.0, 0.5, 1.7, 3.0}) {
        const double x0 = detail::asymptotic_threshold(nu);
        BesselJ J(nu);
        const double below = J(std::nextafter(x0, 0.0)), above = J(x0);
        INFO("nu = " << nu);
        CHECK_THAT(above, WithinAbs(below, 1e-14));
    }
}

TEST_CASE("J three-term recurrence holds on the Hankel path", "[bessel]") {
    for (double x : {120.0, 1e4 + 0.37, 2.5e6}) {
        for (double nu : {1.0, 2.5}) {
            const double lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x);
            INFO("x = " << x << ", nu = " << nu);
            CHECK_THAT(lhs, WithinAbs(2 * nu / x * bessel_j(nu, x), 1e-14 / std::sqrt(x)));
        }
    }
}

TEST_CASE("I K Wronskian in scaled form", "[bessel]") {
    // I_nu K_{nu+1} + I_{nu+1} K_nu = 1/x
    for (double x : {0.05, 1.3, 25.0, 400.0, 5000.0}) {
        for (double nu : {0.0, 0.4, 2.0}) {
            const double w = bessel_i_scaled(nu, x) * bessel_k_scaled(nu + 1, x) +
                             bessel_i_scaled(nu + 1, x) * bessel_k_scaled(nu, x);
            INFO("x = " << x << ", nu = " << nu);
            CHECK_THAT(w * x, WithinRel(1.0, 1e-13));
        }
    }
}

TEST_CASE("plain and scaled forms agree where both are representable", "[bessel]") {
    CHECK_THAT(bessel_i(1.5, 20.0), WithinRel(bessel_i_scaled(1.5, 20.0) * std::exp(20.0), 1e-13));
    CHECK_THAT(bessel_k(0.3, 3.0), WithinRel(bessel_k_scaled(0.3, 3.0) * std::exp(-3.0), 1e-13));
    CHECK_THROWS_AS(bessel_k(1.0, 0.0), DomainError);
}
