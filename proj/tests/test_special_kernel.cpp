#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "besselsum/special_kernel.hpp"
#include "besselsum/summation.hpp"
#include "reference_values.hpp"

using namespace besselsum;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("zeta matches reference values", "[special_kernel]") {
    for (auto r : ref::zeta) {
        INFO("s = " << r.x);
        CHECK_THAT(zeta(r.x), WithinRel(r.value, 1e-12));
    }
}

TEST_CASE("zeta has a pole at 1 and trivial zeros", "[special_kernel]") {
    CHECK_THROWS_AS(zeta(1.0), PoleError);
    for (int m = 1; m <= 40; ++m) {
        CHECK(zeta(-2.0 * m) == 0.0);
        CHECK(log_zeta(-2.0 * m).sign == 0);
    }
    // s = 0 is not a trivial zero, including after rounding on either side
    for (double s : {0.0, -2e-16, 2e-16, -1e-13}) {
        CHECK_THAT(zeta(s), WithinRel(-0.5, 1e-12));
        CHECK_THAT(log_zeta(s).value(), WithinRel(-0.5, 1e-12));
    }
}

TEST_CASE("zeta functional equation round trip", "[special_kernel]") {
    std::mt19937_64 g(7);
    std::uniform_real_distribution<double> u(-25.0, -0.05);
    for (int i = 0; i < 200; ++i) {
        const double s = u(g);
        if (std::abs(s / 2 - std::round(s / 2)) < 1e-6) continue;
        const double rhs = std::pow(2.0, s) * std::pow(constants::pi, s - 1.0) * sin_pi(0.5 * s) *
                           std::tgamma(1.0 - s) * zeta(1.0 - s);
        INFO("s = " << s);
        CHECK_THAT(zeta(s), WithinRel(rhs, 1e-12));
    }
}

TEST_CASE("log_zeta agrees with zeta where both are finite", "[special_kernel]") {
    for (double s : {-3.3, -17.9, -40.1, 0.3, 2.5}) CHECK_THAT(log_zeta(s).value(), WithinRel(zeta(s), 1e-12));
    // beyond double range of zeta itself
    const auto big = log_zeta(-301.5);
    CHECK(std::isfinite(big.log_abs));
    CHECK(big.log_abs > std::log(1e300));
}

TEST_CASE("hurwitz zeta matches reference values", "[special_kernel]") {
    for (auto r : ref::hurwitz) CHECK_THAT(hurwitz_zeta(r.x, r.y), WithinRel(r.value, 1e-13));
    CHECK_THAT(hurwitz_zeta(3.0, 1.0), WithinRel(zeta(3.0), 1e-14));
}

TEST_CASE("digamma matches reference values and recurrence", "[special_kernel]") {
    for (auto r : ref::digamma) CHECK_THAT(digamma(r.x), WithinRel(r.value, 1e-13));
    std::mt19937_64 g(11);
    std::uniform_real_distribution<double> u(-30.0, 60.0);
    for (int i = 0; i < 200; ++i) {
        const double x = u(g);
        if (std::abs(x - std::round(x)) < 1e-3) continue;
        INFO("x = " << x);
        CHECK_THAT(digamma(x + 1.0) - digamma(x), WithinRel(1.0 / x, 1e-12));
    }
    CHECK_THAT(digamma(1.0), WithinAbs(-constants::euler_gamma, 1e-15));
}

TEST_CASE("zeta'(2m)/zeta(2m) matches reference values", "[special_kernel]") {
    for (auto r : ref::zeta_log_deriv_even)
        CHECK_THAT(zeta_log_deriv_even(static_cast<int>(r.x)), WithinRel(r.value, 1e-13));
    CHECK(std::abs(zeta_log_deriv_even(40)) < 1e-23);
}

TEST_CASE("gamma family: values, signs and poles", "[special_kernel]") {
    for (auto r : ref::gamma) {
        const auto lg = log_gamma(r.x);
        CHECK(lg.sign == (r.value > 0 ? 1 : -1));
        CHECK_THAT(lg.log_abs, WithinRel(std::log(std::abs(r.value)), 1e-13));
        CHECK_THAT(rgamma(r.x), WithinRel(1.0 / r.value, 1e-13));
    }
    CHECK_THROWS_AS(besselsum::gamma(-3.0), PoleError);
    CHECK(rgamma(-3.0) == 0.0);
    CHECK(log_rgamma(0.0).sign == 0);
    CHECK_THAT(pochhammer(0.5, 4), WithinRel(0.5 * 1.5 * 2.5 * 3.5, 1e-15));
}

TEST_CASE("sin_pi and cos_pi have exact zeros", "[special_kernel]") {
    for (int k = -6; k <= 6; ++k) {
        CHECK(sin_pi(k) == 0.0);
        CHECK(cos_pi(k + 0.5) == 0.0);
    }
    CHECK_THAT(sin_pi(0.3), WithinRel(std::sin(0.3 * constants::pi), 1e-15));
    CHECK_THAT(cos_pi(-1.7), WithinRel(std::cos(-1.7 * constants::pi), 1e-14));
}

TEST_CASE("near_integer snaps within tolerance only", "[special_kernel]") {
    long long n = 0;
    CHECK(near_integer(3.0 + 1e-11, 1e-9, &n));
    CHECK(n == 3);
    CHECK_FALSE(near_integer(3.0 + 1e-7, 1e-9));
}

TEST_CASE("SignedLog arithmetic", "[special_kernel]") {
    auto x = SignedLog::from(-3.0), y = SignedLog::from(0.5);
    CHECK_THAT((x * y).value(), WithinRel(-1.5, 1e-15));
    CHECK_THAT((x / y).value(), WithinRel(-6.0, 1e-15));
    CHECK_THAT((-x).value(), WithinRel(3.0, 1e-15));
    CHECK((SignedLog::from(0.0) * x).sign == 0);
    CHECK_THROWS_AS(x / SignedLog::from(0.0), PoleError);
}

TEST_CASE("compensated summation recovers cancelled low-order parts", "[special_kernel]") {
    CompensatedSum<double> s;
    for (double v : {1.0, 1e100, 1.0, -1e100}) s += v;
    CHECK(s.value() == 2.0);
    CompensatedSum<double> h;
    for (int k = 1; k <= 1000000; ++k) h += 1.0 / k;
    CHECK_THAT(h.value(), WithinAbs(14.392726722865723631, 2e-15));
}
