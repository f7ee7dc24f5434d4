#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "besselsum/bessel.hpp"
#include "besselsum/special_kernel.hpp"
#include "besselsum/summation.hpp"
#include "besselsum/types.hpp"

namespace besselsum {

namespace detail {

inline double jj_lambda_log(const SeriesParams& p) {
    return (p.mu + p.nu) * constants::ln2 - p.mu * std::log(p.a) - p.nu * std::log(p.b);
}

inline void check_oracle_domain(SeriesKind kind, const SeriesParams& p) {
    if (p.mu < 0 || p.nu < 0) throw DomainError("oracle: orders must be non-negative");
    if (!(p.a > 0) || !(p.b > 0)) throw DomainError("oracle: scales must be positive");
    switch (kind) {
        case SeriesKind::jj:
        case SeriesKind::jj_alt:
            if (!(p.alpha > 0)) throw DomainError("oracle: J-Bessel sums need alpha > 0 for a tail bound");
            break;
        case SeriesKind::k1:
        case SeriesKind::k1_alt:
            break;
        case SeriesKind::k2:
        case SeriesKind::k2_alt:
            if (p.b > p.a) throw DomainError("oracle: K*I sums diverge for b > a");
            if (p.a == p.b && !(p.alpha > 0)) throw DomainError("oracle: K*I sums with a = b need alpha > 0");
            break;
    }
}

// Coefficients of P_nu(x) = sum p_k x^{-k} and Q_nu(x) = sum q_k x^{-k} in
// J_nu(x) ~ sqrt(2/(pi x)) [P cos(x - nu pi/2 - pi/4) - Q sin(...)].
inline void hankel_pq_coeffs(double nu, int L, std::vector<double>& P, std::vector<double>& Q) {
    HankelCoeffs h(nu);
    P.assign(L + 1, 0.0);
    Q.assign(L + 1, 0.0);
    for (int k = 0; k <= L; ++k) {
        double sg = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        (k % 2 == 0 ? P : Q)[k] = sg * h.a[k];
    }
}

// Series in 1/n of f(na) g(nb) for f, g given as coefficient vectors in 1/x.
inline std::vector<double> product_in_n(const std::vector<double>& f, double a, const std::vector<double>& g,
                                        double b) {
    const int L = static_cast<int>(f.size()) - 1;
    std::vector<double> out(L + 1, 0.0);
    for (int i = 0; i <= L; ++i)
        for (int j = 0; i + j <= L; ++j) out[i + j] += f[i] * std::pow(a, -i) * g[j] * std::pow(b, -j);
    return out;
}

// reported bounds include a few ulps of the (compensated) summation itself
inline constexpr double rounding_floor = 4.0 * std::numeric_limits<double>::epsilon();

struct Component {
    double delta;          // distance of the frequency from 0 mod 2 pi
    bool drift;            // non-oscillating
    std::vector<double> d; // drift coefficients of n^{-alpha-1-L}, already scaled
};

}  // namespace detail

// One term of the defining series, including the Lambda prefactor for J*J.
inline double series_term(SeriesKind kind, const SeriesParams& p, long long n) {
    const double x = static_cast<double>(n);
    double t = 0.0;
    switch (kind) {
        case SeriesKind::jj:
        case SeriesKind::jj_alt:
            t = std::exp(detail::jj_lambda_log(p)) * bessel_j(p.mu, x * p.a) * bessel_j(p.nu, x * p.b);
            break;
        case SeriesKind::k1:
        case SeriesKind::k1_alt:
            t = bessel_k_scaled(p.mu, x * p.a) * std::exp(-x * p.a) * bessel_j(p.nu, x * p.b);
            break;
        case SeriesKind::k2:
        case SeriesKind::k2_alt:
            t = bessel_k_scaled(p.mu, x * p.a) * bessel_i_scaled(p.nu, x * p.b) * std::exp(-x * (p.a - p.b));
            break;
    }
    t *= std::pow(x, -p.alpha);
    if (is_alternating(kind) && n % 2 == 0) t = -t;
    return t;
}

namespace detail {

inline OracleReport direct_sum_jj(bool alt, const SeriesParams& p, long long n_max, const TruncationPolicy& policy) {
    const double two_pi = 2.0 * constants::pi;
    const double lam = std::exp(jj_lambda_log(p));
    const double amp = lam / (constants::pi * std::sqrt(p.a * p.b));
    constexpr int L = 5;
    std::vector<double> P1, Q1, P2, Q2;
    hankel_pq_coeffs(p.mu, L, P1, Q1);
    hankel_pq_coeffs(p.nu, L, P2, Q2);
    auto P1P2 = product_in_n(P1, p.a, P2, p.b), Q1Q2 = product_in_n(Q1, p.a, Q2, p.b);
    auto P1Q2 = product_in_n(P1, p.a, Q2, p.b), Q1P2 = product_in_n(Q1, p.a, P2, p.b);

    // frequency reduced mod 2pi, with the alternating sign folded in as +pi
    auto reduce = [&](double f) {
        double w = std::fmod(f + (alt ? constants::pi : 0.0), two_pi);
        if (w < 0) w += two_pi;
        return std::min(w, two_pi - w);
    };
    const double sigma = alt ? -1.0 : 1.0;
    std::vector<Component> comps;
    {
        // difference frequency, phase (nu - mu) pi/2
        Component c{reduce(p.a - p.b), false, {}};
        if (c.delta < 1e-9) {
            c.drift = true;
            const double ph = 0.5 * (p.nu - p.mu);
            c.d.resize(L + 1);
            for (int i = 0; i <= L; ++i)
                c.d[i] = sigma * amp * ((P1P2[i] + Q1Q2[i]) * cos_pi(ph) + (P1Q2[i] - Q1P2[i]) * sin_pi(ph));
        }
        comps.push_back(c);
    }
    {
        // sum frequency, phase -(mu + nu + 1) pi/2
        Component c{reduce(p.a + p.b), false, {}};
        if (c.delta < 1e-9) {
            c.drift = true;
            const double ph = -0.5 * (p.mu + p.nu + 1.0);
            c.d.resize(L + 1);
            for (int i = 0; i <= L; ++i)
                c.d[i] = sigma * amp * ((P1P2[i] - Q1Q2[i]) * cos_pi(ph) - (P1Q2[i] + Q1P2[i]) * sin_pi(ph));
        }
        comps.push_back(c);
    }

    std::vector<long long> windows;
    bool slow = false;
    for (auto& c : comps) {
        if (c.drift) continue;
        long long w = std::max(1LL, std::llround(two_pi / c.delta));
        if (w > n_max / 4) {
            w = std::max(1LL, n_max / 4);
            slow = true;
        }
        windows.push_back(w);
    }
    while (windows.size() < 2) windows.push_back(1);
    const long long wtot = windows[0] + windows[1];

    auto drift_at = [&](long long n) {
        double s = 0.0;
        for (auto& c : comps)
            if (c.drift)
                for (int i = 0; i <= L; ++i) s += c.d[i] * std::pow(double(n), -p.alpha - 1.0 - i);
        return s;
    };
    auto drift_tail = [&](long long n) {
        double s = 0.0;
        for (auto& c : comps)
            if (c.drift)
                for (int i = 0; i <= L; ++i) s += c.d[i] * hurwitz_zeta(p.alpha + 1.0 + i, n + 1.0);
        return s;
    };
    auto bound_at = [&](long long N) {
        double b = 0.0;
        const double env = amp * std::pow(double(N), -p.alpha - 1.0);
        for (size_t k = 0, wi = 0; k < comps.size(); ++k) {
            if (comps[k].drift) {
                b += std::abs(comps[k].d[L]) * std::pow(double(N), -p.alpha - 1.0 - L) * N;
                continue;
            }
            const double sd = std::sin(0.5 * comps[k].delta);
            const double w = double(windows[wi++]);
            const double residual = std::abs(std::sin(0.5 * w * comps[k].delta)) / (w * sd);
            b += env / (2.0 * sd) * ((p.alpha + 1.0) * w / N + residual);
        }
        return b;
    };

    BesselJ Jmu(p.mu), Jnu(p.nu);
    std::vector<double> ring(static_cast<size_t>(wtot + 1));
    CompensatedSum<double> acc;
    long long N = 0;
    for (long long n = 1; n <= n_max; ++n) {
        const double x = double(n);
        double t = lam * Jmu(x * p.a) * Jnu(x * p.b) * std::pow(x, -p.alpha);
        if (alt && n % 2 == 0) t = -t;
        acc += t;
        ring[n % ring.size()] = acc.value();
        N = n;
        if ((n & 4095) == 0 && n > 4 * wtot && bound_at(n) < policy.rel_tol * std::abs(acc.value())) break;
    }
    if (N <= wtot) {
        OracleReport r;
        r.value = acc.value() + drift_tail(N);
        r.n_terms = N;
        r.tail_bound = bound_at(N) + amp;
        r.heuristic = true;
        return r;
    }
    // corrected partial sums S_n + T(n), T the drift tail beyond n
    std::vector<double> corr(static_cast<size_t>(wtot + 1));
    double T = drift_tail(N);
    for (long long k = 0; k <= wtot; ++k) {
        long long n = N - k;
        corr[k] = ring[n % ring.size()] + T;
        T += drift_at(n);
    }
    CompensatedSum<double> avg;
    for (long long j = 0; j < windows[1]; ++j)
        for (long long i = 0; i < windows[0]; ++i) avg += corr[i + j];
    OracleReport r;
    r.value = avg.value() / double(windows[0] * windows[1]);
    r.n_terms = N;
    r.tail_bound = bound_at(N) + rounding_floor * std::abs(r.value);
    r.heuristic = slow;
    return r;
}

inline OracleReport direct_sum_k(SeriesKind kind, const SeriesParams& p, long long n_max,
                                 const TruncationPolicy& policy) {
    const bool alt = is_alternating(kind);
    const bool ki = kind == SeriesKind::k2 || kind == SeriesKind::k2_alt;
    const double decay = ki ? p.a - p.b : p.a;
    const double negal = std::max(0.0, -p.alpha);
    CompensatedSum<double> acc;
    BesselJ Jnu(p.nu);
    auto envelope = [&](long long n) {
        // monotone majorant of |term_n| used for the tail bound
        const double x = double(n);
        double e = bessel_k_scaled(p.mu, x * p.a) * std::pow(x, -p.alpha);
        if (ki)
            e *= bessel_i_scaled(p.nu, x * p.b) * std::exp(-x * decay);
        else
            e *= std::exp(-x * p.a);
        return e;
    };
    OracleReport r;
    if (ki && decay == 0.0) {
        // K_mu(x) I_nu(x) ~ (1/2x) sum c_k x^{-k}: algebraic tail added analytically
        HankelCoeffs hm(p.mu), hn(p.nu);
        constexpr int L = 6;
        std::array<double, L + 1> c{};
        for (int k = 0; k <= L; ++k)
            for (int j = 0; j <= k; ++j) c[k] += hm.a[j] * ((k - j) % 2 ? -1.0 : 1.0) * hn.a[k - j];
        auto tail_from = [&](long long N) {
            double s = 0.0;
            for (int k = 0; k <= L; ++k)
                s += c[k] / (2.0 * std::pow(p.a, k + 1.0)) * hurwitz_zeta(p.alpha + 1.0 + k, N + 1.0);
            return s;
        };
        double prev = 0.0;
        long long N = 0;
        for (long long n = 1; n <= n_max; ++n) {
            double t = series_term(kind, p, n);
            prev = acc.value();
            acc += t;
            N = n;
        }
        const double omitted = std::abs(c[L]) / (2.0 * std::pow(p.a, L + 1.0)) *
                               std::pow(double(N), -p.alpha - L - 1.0) * N;
        if (alt) {
            // average of the last two partial sums
            r.value = 0.5 * (acc.value() + prev);
            r.tail_bound = std::abs(acc.value() - prev) * (p.alpha + 2.0) / double(N);
        } else {
            r.value = acc.value() + tail_from(N);
            r.tail_bound = omitted + rounding_floor * std::abs(r.value);
        }
        r.n_terms = N;
        r.heuristic = true;
        return r;
    }
    long long N = 0;
    double bound = 0.0;
    bool heuristic = false;
    for (long long n = 1; n <= n_max; ++n) {
        acc += series_term(kind, p, n);
        N = n;
        const double ratio = std::exp(-decay + negal / (n + 1.0));
        const double e = envelope(n + 1);
        if (ratio < 1.0) {
            bound = e / (1.0 - ratio);
            heuristic = false;
        } else {
            bound = e * n;
            heuristic = true;
        }
        if (bound < policy.rel_tol * std::abs(acc.value()) || e == 0.0) break;
    }
    r.value = acc.value();
    r.n_terms = N;
    r.tail_bound = bound + rounding_floor * std::abs(r.value);
    r.heuristic = heuristic;
    return r;
}

}  // namespace detail

inline OracleReport direct_sum(SeriesKind kind, const SeriesParams& p, long long n_max,
                               const TruncationPolicy& policy = {}) {
    if (n_max < 1) throw DomainError("oracle: n_max must be positive");
    detail::check_oracle_domain(kind, p);
    if (kind == SeriesKind::jj || kind == SeriesKind::jj_alt)
        return detail::direct_sum_jj(kind == SeriesKind::jj_alt, p, n_max, policy);
    return detail::direct_sum_k(kind, p, n_max, policy);
}

}  // namespace besselsum
