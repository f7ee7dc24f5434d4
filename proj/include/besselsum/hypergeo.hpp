#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "besselsum/special_kernel.hpp"
#include "besselsum/summation.hpp"

namespace besselsum {

// F_m(mu_signed, chi) = 2F1(-m, -m - mu_signed; 1 + nu; chi).
struct FmSpec {
    int m = 0;
    double mu_signed = 0.0;
    double nu = 0.0;
    double chi = 0.0;
};

namespace detail {

inline bool terminates(double a, double b, double c) {
    auto bad_c_before = [&](double p) {
        // the series stops after -p terms; c must not hit a pole before that
        return is_nonpositive_integer(c) && -c < -p;
    };
    if (is_nonpositive_integer(a) && !bad_c_before(a)) return true;
    if (is_nonpositive_integer(b) && !bad_c_before(b)) return true;
    return false;
}

inline double hyp2f1_terminating(double a, double b, double c, double x) {
    double p = is_nonpositive_integer(a) ? a : b;
    if (is_nonpositive_integer(a) && is_nonpositive_integer(b)) p = std::max(a, b);
    const int n = static_cast<int>(-p);
    CompensatedSum<double> acc(1.0);
    double t = 1.0;
    for (int k = 0; k < n; ++k) {
        t *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        acc += t;
    }
    return acc.value();
}

// Power series about 0, intended for |x| <= 0.5.
inline double hyp2f1_series(double a, double b, double c, double x) {
    CompensatedSum<double> acc(1.0);
    double t = 1.0;
    int small = 0;
    for (int k = 0; k < 100000; ++k) {
        double r = (a + k) * (b + k) / ((c + k) * (k + 1.0)) * x;
        t *= r;
        acc += t;
        double s = std::abs(acc.value());
        double ar = std::abs(r);
        if (ar < 1.0 && k > std::abs(a) + std::abs(b)) {
            double tail = std::abs(t) * ar / (1.0 - ar);
            if (tail <= 1e-17 * s || t == 0.0) {
                if (++small >= 2) return acc.value();
            } else {
                small = 0;
            }
        }
    }
    throw DomainError("hyp2f1: power series failed to converge");
}

// Continue w(z) = 2F1(a,b;c;z) from z = 1/2 towards 1 by Taylor steps of the
// hypergeometric ODE; each step covers half the remaining distance to z = 1.
inline double hyp2f1_step_to(double a, double b, double c, double one_minus_z) {
    double w = hyp2f1_series(a, b, c, 0.5);
    double wp = a * b / c * hyp2f1_series(a + 1, b + 1, c + 1, 0.5);
    double d = 0.5;
    const double ab = a * b, s = a + b + 1.0;
    while (d > one_minus_z) {
        double dn = std::max(one_minus_z, 0.5 * d);
        double h = d - dn;
        double z0 = 1.0 - d;
        double p = z0 * d, q = 1.0 - 2.0 * z0, r = c - s * z0;
        // u_n = w_n h^n
        double u0 = w, u1 = wp * h;
        CompensatedSum<double> sw, swp;
        sw += u0;
        sw += u1;
        swp += u1;
        int small = 0;
        for (int n = 0; n < 2000; ++n) {
            double u2 = (-(q * n + r) * (n + 1) * u1 * h + (n * (n - 1.0) + s * n + ab) * u0 * h * h) /
                        (p * (n + 2.0) * (n + 1.0));
            sw += u2;
            swp += (n + 2.0) * u2;
            double scale = std::abs(sw.value()) + std::abs(swp.value());
            if (std::abs(u2) * (n + 2.0) <= 1e-18 * scale) {
                if (++small >= 3) break;
            } else {
                small = 0;
            }
            u0 = u1;
            u1 = u2;
        }
        w = sw.value();
        wp = swp.value() / h;
        d = dn;
    }
    return w;
}

inline double gauss_at_one(double a, double b, double c) {
    if (!(c - a - b > 0)) throw DomainError("2F1 at x=1 needs c-a-b > 0");
    SignedLog v = log_gamma(c) * log_gamma(c - a - b) * log_rgamma(c - a) * log_rgamma(c - b);
    return v.value();
}

// 2F1 for any real x <= 1; one_minus_x may carry 1-x more precisely than x.
inline double hyp2f1_real(double a, double b, double c, double x, double one_minus_x = -1.0) {
    if (one_minus_x < 0) one_minus_x = 1.0 - x;
    if (x == 0.0) return 1.0;
    if (terminates(a, b, c)) return hyp2f1_terminating(a, b, c, x);
    if (is_nonpositive_integer(c)) throw PoleError("2F1: c is a non-positive integer");
    if (x < 0.0) {
        // Pfaff: (1-x)^{-a} 2F1(a, c-b; c; x/(x-1)); prefer a terminating image
        double z = x / (x - 1.0);
        double omz = 1.0 / one_minus_x;
        if (terminates(b, c - a, c) && !terminates(a, c - b, c))
            return std::pow(one_minus_x, -b) * hyp2f1_real(b, c - a, c, z, omz);
        return std::pow(one_minus_x, -a) * hyp2f1_real(a, c - b, c, z, omz);
    }
    if (x <= 0.5) return hyp2f1_series(a, b, c, x);
    if (one_minus_x > 0.0) return hyp2f1_step_to(a, b, c, one_minus_x);
    if (x == 1.0) return gauss_at_one(a, b, c);
    throw DomainError("2F1: argument beyond 1");
}

}  // namespace detail

inline double gauss_2f1(double a, double b, double c, double x) {
    if (detail::terminates(a, b, c)) return detail::hyp2f1_terminating(a, b, c, x);
    if (is_nonpositive_integer(c)) throw PoleError("gauss_2f1: c is a non-positive integer");
    if (x == 1.0) return detail::gauss_at_one(a, b, c);
    if (!(std::abs(x) < 1.0)) throw DomainError("gauss_2f1: non-terminating series needs |x| < 1");
    return detail::hyp2f1_real(a, b, c, x);
}

template <class Real>
Real f_m_direct(int m, Real mu_signed, Real nu, Real chi) {
    CompensatedSum<Real> acc(Real(1));
    Real t = 1;
    for (int k = 0; k < m; ++k) {
        t *= (Real(k) - m) * (Real(k) - m - mu_signed) / ((1 + nu + k) * (k + 1)) * chi;
        acc += t;
    }
    return acc.value();
}

// F_m for m = 0, 1, 2, ... in log form. For chi < 0 the alternating finite sum
// cancels catastrophically at large m, so it is rebuilt from the Jacobi
// polynomial F_m(beta, -c) = (1+c)^m P_m^{(nu,beta)}((1-c)/(1+c)) / binom(m+nu, m).
class FmSequence {
public:
    FmSequence(double mu_signed, double nu, double chi) : beta_(mu_signed), nu_(nu), chi_(chi) {
        if (chi_ < 0) {
            c_ = -chi_;
            x_ = (1.0 - c_) / (1.0 + c_);
            log1pc_ = std::log1p(c_);
        }
    }

    SignedLog next() {
        const int n = m_++;
        if (chi_ >= 0) {
            long double v = f_m_direct<long double>(n, beta_, nu_, chi_);
            if (v == 0) return {};
            return {static_cast<double>(std::log(std::abs(v))), v > 0 ? 1 : -1};
        }
        double P;
        if (n == 0) {
            P = 1.0;
        } else if (n == 1) {
            P = (nu_ + 1.0) + (nu_ + beta_ + 2.0) * 0.5 * (x_ - 1.0);
        } else {
            const double al = nu_, be = beta_, apb = al + be;
            double d1 = n + apb, d2 = 2.0 * n + apb - 2.0;
            if (std::abs(d1) < 1e-3 || std::abs(d2) < 1e-3) {
                P = direct_p(n);
            } else {
                double lhs = 2.0 * n * d1 * d2;
                double c1 = (2.0 * n + apb - 1.0) * ((2.0 * n + apb) * d2 * x_ + al * al - be * be);
                double c2 = 2.0 * (n + al - 1.0) * (n + be - 1.0) * (2.0 * n + apb);
                P = (c1 * p1_ - c2 * p2_) / lhs;
            }
        }
        p2_ = p1_;
        p1_ = P;
        if (P == 0.0) return {};
        double lb = detail::lgamma_abs(n + nu_ + 1.0) - detail::lgamma_abs(nu_ + 1.0) -
                    detail::lgamma_abs(n + 1.0);
        return {std::log(std::abs(P)) + n * log1pc_ - lb, P > 0 ? 1 : -1};
    }

private:
    double direct_p(int n) const {
        long double f = f_m_direct<long double>(n, beta_, nu_, chi_);
        long double lb = std::lgamma((long double)n + nu_ + 1) - std::lgamma((long double)nu_ + 1) -
                         std::lgamma((long double)n + 1);
        return static_cast<double>(f * std::exp(lb - n * (long double)log1pc_));
    }

    double beta_, nu_, chi_;
    double c_ = 0.0, x_ = 0.0, log1pc_ = 0.0;
    double p1_ = 0.0, p2_ = 0.0;
    int m_ = 0;
};

inline double f_m(const FmSpec& spec) {
    if (spec.m < 0) throw DomainError("f_m: m must be non-negative");
    if (!(1.0 + spec.nu > 0)) throw DomainError("f_m: requires 1 + nu > 0");
    if (spec.chi >= 0 || spec.m <= 8) return f_m_direct<double>(spec.m, spec.mu_signed, spec.nu, spec.chi);
    FmSequence seq(spec.mu_signed, spec.nu, spec.chi);
    SignedLog v;
    for (int k = 0; k <= spec.m; ++k) v = seq.next();
    return v.value();
}

// Leading large-m estimate of F_m: the algebraic form for 0 < chi < 1, the
// oscillatory Jacobi form for a negated argument (chi < 0 here).
inline double f_m_asymptotic(const FmSpec& spec) {
    if (spec.m < 1) throw DomainError("f_m_asymptotic: requires m >= 1");
    const double m = spec.m, nu = spec.nu, mus = spec.mu_signed;
    const double lg = detail::lgamma_abs(1.0 + nu);
    if (spec.chi > 0 && spec.chi < 1) {
        const double sc = std::sqrt(spec.chi);
        double l = lg - std::log(2.0 * std::sqrt(constants::pi)) - (nu + 0.5) * std::log(m) +
                   (2.0 * m + 1.0 + nu + mus) * std::log1p(sc) - (0.5 * nu + 0.25) * std::log(spec.chi);
        return std::exp(l);
    }
    if (spec.chi < 0) {
        const double c = -spec.chi;
        const double rho = m + 0.5 * (1.0 + nu + mus);
        const double phi = std::atan(std::sqrt(c));
        double l = lg - 0.5 * constants::ln_pi - (nu + 0.5) * std::log(m) + rho * std::log1p(c) -
                   (0.5 * nu + 0.25) * std::log(c);
        return std::exp(l) * std::cos(2.0 * rho * phi - 0.5 * constants::pi * nu - 0.25 * constants::pi);
    }
    throw DomainError("f_m_asymptotic: chi must lie in (0,1) or be negative");
}

inline double d_r(int r, int N, double mu) {
    if (r < 1) throw DomainError("d_r: r must be positive");
    if (r > N) throw DomainError("d_r: requires r <= N");
    double h = 0.0, fact = 1.0;
    for (int k = 0; k < r; ++k) {
        h += 1.0 / (N - k) + 1.0 / (N + mu - k);
        fact *= (k + 1);
    }
    return fact * h;
}

inline double d_r_psi(int r, int N, double mu) {
    if (r < 1 || r > N) throw DomainError("d_r: requires 1 <= r <= N");
    double fact = std::tgamma(r + 1.0);
    return fact * (digamma(N + 1.0) + digamma(N + 1.0 + mu) - digamma(N + 1.0 - r) -
                   digamma(N + 1.0 + mu - r));
}

namespace detail {

inline double hyp3f2_series(const double (&a)[3], const double (&b)[2], double x, int terms = -1) {
    CompensatedSum<double> acc(1.0);
    double t = 1.0;
    int small = 0;
    const int cap = terms >= 0 ? terms : 200000;
    for (int k = 0; k < cap; ++k) {
        double r = (a[0] + k) * (a[1] + k) * (a[2] + k) / ((b[0] + k) * (b[1] + k) * (k + 1.0)) * x;
        t *= r;
        acc += t;
        if (terms >= 0) continue;
        double ar = std::abs(r);
        if (ar < 1.0 && k > std::abs(a[0]) + std::abs(a[1]) + std::abs(a[2])) {
            double tail = std::abs(t) * ar / (1.0 - ar);
            if (tail <= 1e-17 * std::abs(acc.value()) || t == 0.0) {
                if (++small >= 2) return acc.value();
            } else {
                small = 0;
            }
        }
    }
    if (terms >= 0) return acc.value();
    throw DomainError("3F2: series failed to converge");
}

}  // namespace detail

// 3F2(a1,a2,a3; b1,b2; x). Direct series for |x| <= 0.8 or a terminating
// series; otherwise the Euler integral
//   Gamma(b_j)/(Gamma(a_i)Gamma(b_j-a_i)) int_0^1 t^{a_i-1}(1-t)^{b_j-a_i-1} 2F1(..; xt) dt
// by tanh-sinh quadrature.
inline double hyp3f2(double a1, double a2, double a3, double b1, double b2, double x) {
    const double a[3] = {a1, a2, a3};
    const double b[2] = {b1, b2};
    for (double ai : a) {
        if (is_nonpositive_integer(ai)) return detail::hyp3f2_series(a, b, x, static_cast<int>(-ai));
    }
    for (double bj : b)
        if (is_nonpositive_integer(bj)) throw PoleError("3F2: lower parameter is a non-positive integer");
    if (x == 0.0) return 1.0;
    if (std::abs(x) <= 0.8) return detail::hyp3f2_series(a, b, x);
    if (x > 1.0) throw DomainError("3F2: argument beyond 1");
    if (x == 1.0 && !(b1 + b2 - a1 - a2 - a3 > 0)) throw DomainError("3F2: divergent at x = 1");
    int bi = -1, bj = -1;
    for (int i = 0; i < 3 && bi < 0; ++i)
        for (int j = 0; j < 2; ++j)
            if (a[i] > 0 && b[j] > a[i]) {
                bi = i;
                bj = j;
                break;
            }
    if (bi < 0) throw DomainError("3F2: no Euler integral representation for these parameters");
    double ra[2];
    for (int i = 0, k = 0; i < 3; ++i)
        if (i != bi) ra[k++] = a[i];
    const double rc = b[1 - bj];
    const double ai = a[bi], bjv = b[bj];
    const double norm = (log_gamma(bjv) * log_rgamma(ai) * log_rgamma(bjv - ai)).value();
    auto integrand = [&](double t, double tc) {
        double omt = tc > 0 ? tc : 1.0 - t;
        double tt = tc < 0 ? -tc : t;
        if (tt <= 0.0 || omt <= 0.0) return 0.0;
        double z = x * tt;
        double omz = x > 0 ? (1.0 - x) + x * omt : 1.0 - z;
        double f = detail::hyp2f1_real(ra[0], ra[1], rc, z, omz);
        return std::pow(tt, ai - 1.0) * std::pow(omt, bjv - ai - 1.0) * f;
    };
    thread_local boost::math::quadrature::tanh_sinh<double> integrator;
    return norm * integrator.integrate(integrand, 0.0, 1.0, 1e-15);
}

// First-order epsilon coefficient of 2F1(-N+eps, -N-mu+eps; 1+nu; chi) = F_N - eps Delta_N.
inline double delta_n(int N, double mu, double nu, double chi) {
    if (N < 0) throw DomainError("delta_n: N must be non-negative");
    CompensatedSum<double> acc;
    double coef = 1.0, h = 0.0, fact = 1.0;
    for (int r = 1; r <= N; ++r) {
        coef *= (N - r + 1.0) / r * (N + mu - r + 1.0) / r * chi / (nu + r);
        h += 1.0 / (N - r + 1.0) + 1.0 / (N + mu - r + 1.0);
        fact *= r;
        acc += coef * fact * h;
    }
    if (mu != 0.0) {
        const bool terminating = is_nonpositive_integer(1.0 - mu);
        if (!terminating && !(std::abs(chi) < 1.0))
            throw DomainError("delta_n: non-terminating 3F2 needs |chi| < 1");
        double pre = pochhammer(mu, N + 1) / pochhammer(1.0 + nu, N + 1) / (N + 1.0) *
                     std::pow(chi, N + 1);
        acc += pre * hyp3f2(1.0, 1.0, 1.0 - mu, N + nu + 2.0, N + 2.0, chi);
    }
    return acc.value();
}

// ([2F1(-N+eps, -N-mu+eps; 1+nu; chi) - F_N] / eps, -Delta_N).
inline std::pair<double, double> eps_derivative_check(int N, double mu, double nu, double chi, double eps) {
    if (!(std::abs(chi) <= 1.0)) throw DomainError("eps_derivative_check: requires |chi| <= 1");
    double fe = detail::hyp2f1_real(-N + eps, -N - mu + eps, 1.0 + nu, chi);
    double f0 = f_m({N, mu, nu, chi});
    return {(fe - f0) / eps, -delta_n(N, mu, nu, chi)};
}

}  // namespace besselsum
