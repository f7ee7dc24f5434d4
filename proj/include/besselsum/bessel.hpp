#pragma once

#include <array>
#include <cmath>

#include <boost/math/special_functions/bessel.hpp>

#include "besselsum/special_kernel.hpp"

namespace besselsum {

namespace detail {

using bessel_policy = boost::math::policies::policy<
    boost::math::policies::overflow_error<boost::math::policies::ignore_error>,
    boost::math::policies::underflow_error<boost::math::policies::ignore_error>,
    boost::math::policies::promote_double<false>>;

// Hankel coefficients a_k(nu) = prod_{j=1..k} (4nu^2 - (2j-1)^2) / (k! 8^k).
struct HankelCoeffs {
    static constexpr int kmax = 40;
    std::array<double, kmax + 1> a{};

    explicit HankelCoeffs(double nu) {
        const double m4 = 4.0 * nu * nu;
        a[0] = 1.0;
        for (int k = 1; k <= kmax; ++k) {
            double f = 2.0 * k - 1.0;
            a[k] = a[k - 1] * (m4 - f * f) / (8.0 * k);
        }
    }
};

// Large-x switchover used by every Bessel routine below.
inline double asymptotic_threshold(double nu) { return 40.0 + nu * nu; }

}  // namespace detail

// J_nu for fixed order, tuned for repeated calls (the oracle hot loop).
// x below 40 + nu^2 goes to Boost; above it the Hankel expansion is summed to
// its smallest term, which is below 1e-17 relative there.
class BesselJ {
public:
    explicit BesselJ(double nu)
        : nu_(nu), coeffs_(nu), threshold_(detail::asymptotic_threshold(nu)) {
        if (nu < 0) throw DomainError("bessel_j: order must be non-negative");
        double phase = 0.5 * nu + 0.25;  // in units of pi
        cos_phase_ = cos_pi(phase);
        sin_phase_ = sin_pi(phase);
    }

    double operator()(double x) const {
        if (x < 0) throw DomainError("bessel_j: argument must be non-negative");
        if (x < threshold_) return boost::math::cyl_bessel_j(nu_, x, detail::bessel_policy());
        double P = 0.0, Q = 0.0;
        hankel_pq(x, P, Q);
        // cos(x - phase) and sin(x - phase)
        double s = std::sin(x), c = std::cos(x);
        double cw = c * cos_phase_ + s * sin_phase_;
        double sw = s * cos_phase_ - c * sin_phase_;
        return std::sqrt(2.0 / (constants::pi * x)) * (P * cw - Q * sw);
    }

    double order() const { return nu_; }

private:
    void hankel_pq(double x, double& P, double& Q) const {
        const double inv = 1.0 / x;
        double pw = 1.0;
        double prev = std::numeric_limits<double>::infinity();
        for (int k = 0; k <= detail::HankelCoeffs::kmax; ++k) {
            double t = coeffs_.a[k] * pw;
            double at = std::abs(t);
            if (at > prev) break;
            // (-1)^{floor(k/2)} sign pattern, even k into P and odd k into Q
            double sg = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
            if (k % 2 == 0)
                P += sg * t;
            else
                Q += sg * t;
            if (at < 1e-17) break;
            prev = at;
            pw *= inv;
        }
    }

    double nu_;
    detail::HankelCoeffs coeffs_;
    double threshold_;
    double cos_phase_ = 1.0, sin_phase_ = 0.0;
};

// e^{-x} I_nu(x).
inline double bessel_i_scaled(double nu, double x) {
    if (nu < 0 || x < 0) throw DomainError("bessel_i: order and argument must be non-negative");
    if (x < detail::asymptotic_threshold(nu))
        return boost::math::cyl_bessel_i(nu, x, detail::bessel_policy()) * std::exp(-x);
    detail::HankelCoeffs h(nu);
    CompensatedSum<double> acc;
    double pw = 1.0, prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= detail::HankelCoeffs::kmax; ++k) {
        double t = h.a[k] * pw;
        if (std::abs(t) > prev) break;
        acc += (k % 2 == 0) ? t : -t;
        if (std::abs(t) < 1e-17) break;
        prev = std::abs(t);
        pw /= x;
    }
    return acc.value() / std::sqrt(2.0 * constants::pi * x);
}

// e^{x} K_nu(x).
inline double bessel_k_scaled(double nu, double x) {
    if (nu < 0) throw DomainError("bessel_k: order must be non-negative");
    if (!(x > 0)) throw DomainError("bessel_k: argument must be positive");
    if (x < detail::asymptotic_threshold(nu))
        return boost::math::cyl_bessel_k(nu, x, detail::bessel_policy()) * std::exp(x);
    detail::HankelCoeffs h(nu);
    CompensatedSum<double> acc;
    double pw = 1.0, prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= detail::HankelCoeffs::kmax; ++k) {
        double t = h.a[k] * pw;
        if (std::abs(t) > prev) break;
        acc += t;
        if (std::abs(t) < 1e-17) break;
        prev = std::abs(t);
        pw /= x;
    }
    return acc.value() * std::sqrt(constants::pi / (2.0 * x));
}

inline double bessel_j(double nu, double x) { return BesselJ(nu)(x); }

inline double bessel_i(double nu, double x) {
    if (nu < 0 || x < 0) throw DomainError("bessel_i: order and argument must be non-negative");
    if (x < 700.0) return boost::math::cyl_bessel_i(nu, x, detail::bessel_policy());
    return bessel_i_scaled(nu, x) * std::exp(x);
}

inline double bessel_k(double nu, double x) {
    if (nu < 0) throw DomainError("bessel_k: order must be non-negative");
    if (!(x > 0)) throw DomainError("bessel_k: argument must be positive");
    if (x < detail::asymptotic_threshold(nu))
        return boost::math::cyl_bessel_k(nu, x, detail::bessel_policy());
    return bessel_k_scaled(nu, x) * std::exp(-x);
}

}  // namespace besselsum
