#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "besselsum/oracle.hpp"
#include "besselsum/series_jj.hpp"
#include "besselsum/summation.hpp"
#include "reference_values.hpp"

using namespace besselsum;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double raw_partial_sum(SeriesKind k, const SeriesParams& p, long long n) {
    CompensatedSum<double> s;
    for (long long i = 1; i <= n; ++i) s += series_term(k, p, i);
    return s.value();
}

}  // namespace

TEST_CASE("series_term carries Lambda and the alternating sign", "[oracle]") {
    const SeriesParams p{0.5, 0.3, 1.5, 0.9, 0.4};
    const double lam = std::pow(2.0, 0.8) / (std::pow(0.9, 0.5) * std::pow(0.4, 0.3));
    const double t3 = lam * bessel_j(0.5, 2.7) * bessel_j(0.3, 1.2) / std::pow(3.0, 1.5);
    CHECK_THAT(series_term(SeriesKind::jj, p, 3), WithinRel(t3, 1e-14));
    CHECK_THAT(series_term(SeriesKind::jj_alt, p, 3), WithinRel(t3, 1e-14));
    CHECK_THAT(series_term(SeriesKind::jj_alt, p, 4), WithinRel(-series_term(SeriesKind::jj, p, 4), 1e-15));
    CHECK_THAT(series_term(SeriesKind::k2, {0.5, 0.3, 1.5, 0.9, 0.4}, 2),
               WithinRel(bessel_k(0.5, 1.8) * bessel_i(0.3, 0.8) / std::pow(2.0, 1.5), 1e-13));
}

TEST_CASE("K*J with exponential decay stops early", "[oracle]") {
    const auto r = direct_sum(SeriesKind::k1, {0, 0, 0, 1, 0.5}, 1000000);
    CHECK(r.n_terms <= 50);
    CHECK_FALSE(r.heuristic);
    CHECK(r.tail_bound < 1e-14 * std::abs(r.value));
}

TEST_CASE("J*J partial sums settle at the n^-2 rate", "[oracle]") {
    const SeriesParams p{0, 0, 2, 1, 1};
    const double d = std::abs(raw_partial_sum(SeriesKind::jj, p, 1000000) - raw_partial_sum(SeriesKind::jj, p, 100000));
    CHECK(d < 1.0 / (1e5 * 1e5));
    const auto lo = direct_sum(SeriesKind::jj, p, 100000, {1e-300, 500, 3});
    const auto hi = direct_sum(SeriesKind::jj, p, 1000000, {1e-300, 500, 3});
    CHECK(std::abs(hi.value - lo.value) <= lo.tail_bound);
    CHECK_FALSE(hi.heuristic);
}

TEST_CASE("alternating identity holds within the oracle", "[oracle]") {
    for (SeriesParams p : {SeriesParams{0.5, 0.3, 2.0, 0.7, 0.4}, SeriesParams{0, 0, 1.5, 0.6, 0.6},
                           SeriesParams{1, 0.5, 3.3, 1.1, 0.2}}) {
        SeriesParams d = p;
        d.a *= 2;
        d.b *= 2;
        const double alt = direct_sum(SeriesKind::jj_alt, p, 10000000).value;
        const double comb = direct_sum(SeriesKind::jj, p, 10000000).value -
                            std::exp2(1.0 - p.theta()) * direct_sum(SeriesKind::jj, d, 10000000).value;
        INFO("theta = " << p.theta());
        CHECK_THAT(alt, WithinAbs(comb, 1e-11));
    }
}

TEST_CASE("block order does not matter to compensated summation", "[oracle]") {
    const SeriesParams p{0.3, 0.8, 1.2, 2.1, 0.7};
    std::vector<double> t;
    for (long long n = 1; n <= 200000; ++n) t.push_back(series_term(SeriesKind::jj, p, n));
    CompensatedSum<double> fwd;
    for (double x : t) fwd += x;
    std::vector<size_t> blocks(t.size() / 1000);
    std::iota(blocks.begin(), blocks.end(), 0);
    std::mt19937_64 g(5);
    std::shuffle(blocks.begin(), blocks.end(), g);
    CompensatedSum<double> perm;
    for (size_t b : blocks)
        for (size_t i = 0; i < 1000; ++i) perm += t[b * 1000 + i];
    CHECK_THAT(perm.value(), WithinRel(fwd.value(), 1e-13));
}

TEST_CASE("K-family tail bounds are honest", "[oracle]") {
    std::mt19937_64 g(77);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int honest = 0, total = 0;
    for (int i = 0; i < 200; ++i) {
        const bool ki = i % 2;
        SeriesParams p{3 * u(g), 2 * u(g), -1 + 4 * u(g), 0.2 + 2 * u(g), 0.1 + 2 * u(g)};
        if (ki && p.b >= p.a) std::swap(p.a, p.b);
        if (ki && p.b == p.a) continue;
        const auto kind = ki ? SeriesKind::k2 : SeriesKind::k1;
        const long long n = 3 + static_cast<long long>(30 * u(g));
        const TruncationPolicy run_all{1e-300, 500, 3};
        const auto r1 = direct_sum(kind, p, n, run_all);
        const auto r2 = direct_sum(kind, p, 2 * n, run_all);
        ++total;
        if (std::abs(r2.value - r1.value) <= r1.tail_bound) ++honest;
    }
    INFO(honest << " of " << total);
    CHECK(honest >= 0.99 * total);
}

TEST_CASE("window averaging beats the raw partial sum", "[oracle]") {
    for (SeriesParams p : {SeriesParams{0, 0, 1.5, 1, 0.6}, SeriesParams{0.5, 1, 1.2, 2, 2}}) {
        const double exact = s_jj(p).value;
        const long long n = 5000;
        const double avg = direct_sum(SeriesKind::jj, p, n, {1e-300, 500, 3}).value;
        const double raw = raw_partial_sum(SeriesKind::jj, p, n);
        INFO("a = " << p.a << ", b = " << p.b << ", avg " << avg - exact << ", raw " << raw - exact);
        CHECK(std::abs(avg - exact) < 0.1 * std::abs(raw - exact));
    }
}

TEST_CASE("J*J oracle reproduces polylogarithm closed forms", "[oracle]") {
    for (auto r : ref::jj) {
        const SeriesKind k = *parse_kind(r.kind);
        const SeriesParams p{r.mu, r.nu, r.alpha, r.a, r.b};
        const auto o = direct_sum(k, p, 10000000);
        INFO(r.kind << " mu=" << r.mu << " alpha=" << r.alpha << " a=" << r.a << " b=" << r.b);
        CHECK(o.tail_bound >= 0.0);
        CHECK_THAT(o.value, WithinAbs(r.value, std::max(1e-8, 3 * o.tail_bound)));
    }
}

TEST_CASE("K*I with a = b uses the analytic algebraic tail", "[oracle]") {
    for (auto r : ref::modified) {
        const std::string k = r.kind;
        if ((k != "k2" && k != "k2_alt") || r.a != r.b) continue;
        const auto o = direct_sum(*parse_kind(r.kind), {r.mu, r.nu, r.alpha, r.a, r.b}, 200000);
        CHECK(o.heuristic);
        CHECK_THAT(o.value, WithinAbs(r.value, 1e-10));
    }
}

TEST_CASE("oracle domain errors", "[oracle]") {
    CHECK_THROWS_AS(direct_sum(SeriesKind::jj, {0, 0, 0, 1, 1}, 100), DomainError);
    CHECK_THROWS_AS(direct_sum(SeriesKind::jj, {0, 0, 2, 1, 1}, 0), DomainError);
    CHECK_THROWS_AS(direct_sum(SeriesKind::k2, {0, 0, 2, 1, 2}, 100), DomainError);
    CHECK_THROWS_AS(direct_sum(SeriesKind::k2, {0, 0, -1, 1, 1}, 100), DomainError);
    CHECK_THROWS_AS(direct_sum(SeriesKind::k1, {-1, 0, 2, 1, 1}, 100), DomainError);
    CHECK_THROWS_AS(direct_sum(SeriesKind::k1, {0, 0, 2, 0, 1}, 100), DomainError);
}
