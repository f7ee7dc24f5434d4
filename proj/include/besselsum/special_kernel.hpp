#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "besselsum/summation.hpp"
#include "besselsum/types.hpp"

namespace besselsum {

namespace constants {
inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double stieltjes_1 = -0.072815845483676724861;
inline constexpr double ln2 = std::numbers::ln2;
inline constexpr double ln_pi = 1.1447298858494001741;
}  // namespace constants

// Magnitude in log form plus a sign; sign 0 encodes an exact zero.
struct SignedLog {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    static SignedLog from(double v) {
        if (v == 0.0) return {};
        return {std::log(std::abs(v)), v > 0 ? 1 : -1};
    }
    static SignedLog exp_of(double log_abs, int sign = 1) { return {log_abs, sign}; }

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }

    SignedLog operator*(const SignedLog& o) const {
        if (sign == 0 || o.sign == 0) return {};
        return {log_abs + o.log_abs, sign * o.sign};
    }
    SignedLog operator/(const SignedLog& o) const {
        if (o.sign == 0) throw PoleError("division by zero in SignedLog");
        if (sign == 0) return {};
        return {log_abs - o.log_abs, sign * o.sign};
    }
    SignedLog operator-() const { return {log_abs, -sign}; }
};

inline bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

// Distance-based integer snap used for classification decisions.
inline bool near_integer(double x, double tol, long long* n = nullptr) {
    double r = std::round(x);
    if (std::abs(x - r) < tol) {
        if (n) *n = static_cast<long long>(r);
        return true;
    }
    return false;
}

// sin(pi x) with exact zeros at the integers.
inline double sin_pi(double x) {
    if (x == std::floor(x)) return 0.0;
    double r = std::fmod(x, 2.0);
    if (r < 0) r += 2.0;
    if (r <= 0.25) return std::sin(constants::pi * r);
    if (r <= 0.75) return std::cos(constants::pi * (0.5 - r));
    if (r <= 1.25) return std::sin(constants::pi * (1.0 - r));
    if (r <= 1.75) return -std::cos(constants::pi * (r - 1.5));
    return -std::sin(constants::pi * (2.0 - r));
}

// cos(pi x) with exact zeros at the half-integers.
inline double cos_pi(double x) {
    double r = std::fmod(std::abs(x), 2.0);
    if (r == 0.5 || r == 1.5) return 0.0;
    if (r <= 0.25) return std::cos(constants::pi * r);
    if (r <= 0.75) return std::sin(constants::pi * (0.5 - r));
    if (r <= 1.25) return -std::cos(constants::pi * (1.0 - r));
    if (r <= 1.75) return std::sin(constants::pi * (r - 1.5));
    return std::cos(constants::pi * (2.0 - r));
}

inline double gamma(double x) {
    if (is_nonpositive_integer(x)) throw PoleError("gamma: pole at non-positive integer");
    return std::tgamma(x);
}

namespace detail {
inline double lgamma_abs(double x) {
#if defined(__GLIBC__)
    int s;
    return ::lgamma_r(x, &s);
#else
    return std::lgamma(x);
#endif
}
}  // namespace detail

inline SignedLog log_gamma(double x) {
    if (is_nonpositive_integer(x)) throw PoleError("gamma: pole at non-positive integer");
    int sign = 1;
    if (x < 0 && static_cast<long long>(std::ceil(-x)) % 2 == 1) sign = -1;
    return {detail::lgamma_abs(x), sign};
}

// log|1/Gamma(x)| with sign 0 at the poles.
inline SignedLog log_rgamma(double x) {
    if (is_nonpositive_integer(x)) return {};
    SignedLog g = log_gamma(x);
    return {-g.log_abs, g.sign};
}

// 1/Gamma(x), zero at the poles.
inline double rgamma(double x) {
    if (is_nonpositive_integer(x)) return 0.0;
    if (std::abs(x) < 170.0) return 1.0 / std::tgamma(x);
    return log_rgamma(x).value();
}

template <class Real>
Real pochhammer(Real beta, int n) {
    Real p = 1;
    for (int k = 0; k < n; ++k) p *= beta + Real(k);
    return p;
}

inline double digamma(double x) {
    if (is_nonpositive_integer(x)) throw PoleError("digamma: pole at non-positive integer");
    if (x < 0.5) {
        // psi(x) = psi(1-x) - pi cot(pi x)
        return digamma(1.0 - x) - constants::pi * cos_pi(x) / sin_pi(x);
    }
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    static constexpr std::array<double, 7> b2k = {1.0 / 6,        -1.0 / 30, 1.0 / 42, -1.0 / 30,
                                                  5.0 / 66,       -691.0 / 2730, 7.0 / 6};
    double inv2 = 1.0 / (x * x);
    double pw = inv2;
    double s = 0.0;
    for (int k = 1; k <= 7; ++k) {
        s += b2k[k - 1] / (2.0 * k) * pw;
        pw *= inv2;
    }
    return acc + std::log(x) - 0.5 / x - s;
}

namespace detail {

inline constexpr std::array<double, 10> bernoulli_2k = {
    1.0 / 6,    -1.0 / 30,       1.0 / 42,         -1.0 / 30,       5.0 / 66,
    -691.0 / 2730, 7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330};

// Euler-Maclaurin for sum_{n>=0} (n+q)^{-s}; valid for any real s != 1 once
// the shift point q+N is large compared with |s|.
inline double hurwitz_em(double s, double q) {
    int shift = 0;
    double need = std::max(12.0, 0.5 * std::abs(s) + 8.0);
    if (q < need) shift = static_cast<int>(std::ceil(need - q));
    CompensatedSum<double> acc;
    for (int n = 0; n < shift; ++n) acc += std::pow(n + q, -s);
    double x = q + shift;
    double xs = std::pow(x, -s);
    acc += x * xs / (s - 1.0);
    acc += 0.5 * xs;
    // k-th correction: B_2k/(2k)! * s(s+1)...(s+2k-2) * x^{-s-2k+1}
    double fac = s * xs / x;  // s * x^{-s-1}
    double fact = 2.0;        // (2k)!
    for (int k = 1; k <= 10; ++k) {
        double t = bernoulli_2k[k - 1] / fact * fac;
        acc += t;
        if (std::abs(t) < 1e-18 * std::abs(acc.value())) break;
        fac *= (s + 2 * k - 1) * (s + 2 * k) / (x * x);
        fact *= (2.0 * k + 1) * (2.0 * k + 2);
    }
    return acc.value();
}

// Dirichlet eta by Borwein's alternating-series acceleration.
inline double eta_borwein(double s) {
    constexpr int n = 32;
    std::array<double, n + 1> d{};
    double term = 1.0 / n;  // (n+i-1)! 4^i / ((n-i)! (2i)!) at i=0, times 1/n
    double sum = term;
    d[0] = n * sum;
    for (int i = 1; i <= n; ++i) {
        term *= 4.0 * (n + i - 1) * (n - i + 1) / ((2.0 * i - 1) * (2.0 * i));
        sum += term;
        d[i] = n * sum;
    }
    CompensatedSum<double> acc;
    for (int k = 0; k < n; ++k) {
        double t = (d[k] - d[n]) * std::pow(k + 1.0, -s);
        acc += (k % 2 == 0) ? t : -t;
    }
    return -acc.value() / d[n];
}

}  // namespace detail

// Hurwitz zeta for s > 1, q > 0.
inline double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0)) throw DomainError("hurwitz_zeta: requires s > 1");
    if (!(q > 0.0)) throw DomainError("hurwitz_zeta: requires q > 0");
    return detail::hurwitz_em(s, q);
}

inline SignedLog log_zeta(double s);

inline double zeta(double s) {
    if (s == 1.0) throw PoleError("zeta: pole at s = 1");
    long long n;
    if (near_integer(s, 1e-12, &n) && n < 0 && n % 2 == 0) return 0.0;
    if (s > 60.0) return 1.0 + std::pow(2.0, -s) + std::pow(3.0, -s);
    if (s > 1.0) return detail::hurwitz_em(s, 1.0);
    // the reflection route pairs a vanishing sine with zeta near its pole around s = 0
    if (s > -0.5) {
        // zeta = eta / (1 - 2^{1-s})
        return detail::eta_borwein(s) / -std::expm1((1.0 - s) * constants::ln2);
    }
    return log_zeta(s).value();
}

// zeta(s) in log form; the s < 0 half uses the functional equation
// zeta(s) = 2^s pi^{s-1} zeta(1-s) Gamma(1-s) sin(pi s/2).
inline SignedLog log_zeta(double s) {
    if (s == 1.0) throw PoleError("zeta: pole at s = 1");
    if (s > -0.5) return SignedLog::from(zeta(s));
    long long n;
    if (near_integer(s, 1e-12, &n) && n % 2 == 0) return {};
    double sn = sin_pi(0.5 * s);
    if (sn == 0.0) return {};
    double la = s * constants::ln2 + (s - 1.0) * constants::ln_pi + std::log(zeta(1.0 - s)) +
                detail::lgamma_abs(1.0 - s) + std::log(std::abs(sn));
    return {la, sn > 0 ? 1 : -1};
}

// zeta'(2m)/zeta(2m) from -1/zeta(2m) * sum_{k>=2} log k / k^{2m}, with an
// Euler-Maclaurin tail from k = K on.
inline double zeta_log_deriv_even(int m) {
    if (m < 1) throw DomainError("zeta_log_deriv_even: requires m >= 1");
    const double s = 2.0 * m;
    constexpr int K = 24;
    CompensatedSum<double> acc;
    for (int k = 2; k < K; ++k) acc += std::log(double(k)) * std::pow(double(k), -s);
    // f(x) = x^{-s} log x; f^{(n)}(x) = x^{-s-n} (P_n log x + Q_n)
    const double x = K;
    const double lx = std::log(x);
    const double xs = std::pow(x, -s);
    acc += x * xs * (lx / (s - 1.0) + 1.0 / ((s - 1.0) * (s - 1.0)));
    acc += 0.5 * xs * lx;
    double P = 1.0, Q = 0.0, pw = xs;
    double fact = 1.0;
    for (int n = 0; n < 19; ++n) {
        double Pn = (-s - n) * P;
        double Qn = (-s - n) * Q + P;
        P = Pn;
        Q = Qn;
        pw /= x;
        fact *= (n + 1);
        if ((n + 1) % 2 == 1) {
            int k = (n + 2) / 2;  // derivative order 2k-1
            double t = -detail::bernoulli_2k[k - 1] / (fact * (n + 2)) * pw * (P * lx + Q);
            acc += t;
            if (k == 10) break;
        }
    }
    return -acc.value() / zeta(s);
}

}  // namespace besselsum
