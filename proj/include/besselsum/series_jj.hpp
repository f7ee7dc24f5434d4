#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "besselsum/hypergeo.hpp"
#include "besselsum/residue_sum.hpp"
#include "besselsum/special_kernel.hpp"
#include "besselsum/types.hpp"

namespace besselsum {

struct ThetaClass {
    enum class Kind { GenericSimplePoles, EvenNonNegInt, OddPosInt };
    Kind kind = Kind::GenericSimplePoles;
    double theta = 0.0;
    std::optional<int> N;
};

inline const char* to_string(ThetaClass::Kind k) {
    switch (k) {
        case ThetaClass::Kind::GenericSimplePoles: return "generic";
        case ThetaClass::Kind::EvenNonNegInt: return "even";
        case ThetaClass::Kind::OddPosInt: return "odd";
    }
    return "?";
}

inline constexpr double integer_snap_tol = 1e-9;

inline ThetaClass classify_theta(const SeriesParams& p) {
    ThetaClass c;
    c.theta = p.theta();
    long long n;
    if (near_integer(c.theta, integer_snap_tol, &n) && n >= 0) {
        if (n % 2 == 0) {
            c.kind = ThetaClass::Kind::EvenNonNegInt;
            c.N = static_cast<int>(n / 2);
        } else {
            c.kind = ThetaClass::Kind::OddPosInt;
            c.N = static_cast<int>((n - 1) / 2);
        }
    }
    return c;
}

namespace detail {

inline double lg(double x) { return lgamma_abs(x); }

// Last m for which A_m / B_m use the direct zeta form.
inline int direct_route_limit(double theta) {
    return std::max(2, static_cast<int>(std::ceil(0.5 * theta)) + 2);
}

inline SignedLog log_coeff_a_m_direct(int m, const SeriesParams& p) {
    const double mu = p.mu, nu = p.nu, s = p.theta() - 2.0 * m;
    if (std::abs(s - 1.0) < integer_snap_tol) throw PoleError("coeff_a_m: zeta pole at theta - 2m = 1");
    SignedLog z = log_zeta(s);
    double l = lg(1.0 + mu + nu + 2.0 * m) - lg(m + 1.0) - lg(1.0 + mu + m) - lg(1.0 + nu + m) -
               lg(1.0 + mu + nu + m);
    return SignedLog{l, m % 2 ? -1 : 1} * z;
}

// A_m = 2^{alpha-1} sin(pi theta/2)/pi (pi/2)^{theta-2m-1} A'_m.
inline SignedLog log_coeff_a_m_alt(int m, const SeriesParams& p) {
    const double mu = p.mu, nu = p.nu, th = p.theta();
    const double sm = 2.0 * m + 1.0 - th;
    if (sm == 1.0) throw PoleError("coeff_a_m: zeta pole in the alternative form");
    SignedLog pre{(p.alpha - 1.0) * constants::ln2 - constants::ln_pi +
                      (th - 2.0 * m - 1.0) * (constants::ln_pi - constants::ln2),
                  1};
    pre = pre * SignedLog::from(sin_pi(0.5 * th));
    double l = lg(0.5 + 0.5 * (mu + nu) + m) + lg(1.0 + 0.5 * (mu + nu) + m) - lg(m + 1.0) - lg(1.0 + mu + m) -
               lg(1.0 + nu + m) - lg(1.0 + mu + nu + m);
    SignedLog g = log_gamma(m + 0.5 - 0.5 * th) * log_gamma(m + 1.0 - 0.5 * th);
    return pre * SignedLog{l, 1} * g * log_zeta(sm);
}

inline SignedLog log_coeff_a_m(int m, const SeriesParams& p) {
    if (m <= direct_route_limit(p.theta())) return log_coeff_a_m_direct(m, p);
    return log_coeff_a_m_alt(m, p);
}

// B_m without its F_m factor.
inline SignedLog log_coeff_b_m_bare(int m, const SeriesParams& p) {
    const double s = p.theta() - 2.0 * m;
    if (std::abs(s - 1.0) < integer_snap_tol) throw PoleError("coeff_b_m: zeta pole at theta - 2m = 1");
    double l = -lg(m + 1.0) - lg(1.0 + p.mu + m);
    return SignedLog{l, m % 2 ? -1 : 1} * log_zeta(s);
}

inline void theta_warnings(double theta, std::vector<std::string>& w) {
    if (theta < 0.5) return;
    double d = std::abs(theta - (2.0 * std::floor(0.5 * (theta - 1.0) + 0.5) + 1.0));
    if (d > integer_snap_tol && d < 1e-4)
        w.push_back("ill-conditioned: theta is within " + fmt_g(d) +
                    " of an odd integer; F(1) and one residue nearly cancel");
}

inline void check_alpha_positive(const SeriesParams& p) {
    if (!(p.alpha > 0)) throw DomainError("J-Bessel expansions require alpha > 0");
    if (p.mu < 0 || p.nu < 0) throw DomainError("orders mu, nu must be non-negative");
    if (!(p.a > 0) || !(p.b > 0)) throw DomainError("scales a, b must be positive");
}

}  // namespace detail

inline double coeff_a_m(int m, const SeriesParams& p) {
    if (m < 0) throw DomainError("coeff_a_m: m must be non-negative");
    return detail::log_coeff_a_m(m, p).value();
}

inline double coeff_a_m_direct(int m, const SeriesParams& p) { return detail::log_coeff_a_m_direct(m, p).value(); }

inline double coeff_a_m_alt(int m, const SeriesParams& p) { return detail::log_coeff_a_m_alt(m, p).value(); }

inline double coeff_b_m(int m, const SeriesParams& p) {
    if (m < 0) throw DomainError("coeff_b_m: m must be non-negative");
    const double chi = p.chi();
    if (!(chi > 0 && chi <= 1.0)) throw DomainError("coeff_b_m: requires 0 < chi <= 1");
    return detail::log_coeff_b_m_bare(m, p).value() * f_m({m, p.mu, p.nu, chi});
}

inline double f_hat_1_equal(const SeriesParams& p) {
    const double mu = p.mu, nu = p.nu, al = p.alpha, th = p.theta();
    if (!(al > 0)) throw DomainError("f_hat_1_equal: requires alpha > 0");
    SignedLog v = SignedLog{(th - 1.0) * std::log(0.5 * p.a) - constants::ln2, 1} * log_gamma(al) *
                  log_gamma(0.5 * (1.0 - th)) * log_rgamma(0.5 * (al + mu - nu + 1.0)) *
                  log_rgamma(0.5 * (al + mu + nu + 1.0)) * log_rgamma(0.5 * (al + nu - mu + 1.0));
    return v.value();
}

inline double f_hat_1_general(const SeriesParams& p) {
    const double mu = p.mu, nu = p.nu, al = p.alpha, th = p.theta();
    const double chi = p.chi();
    if (!(chi > 0 && chi <= 1.0)) throw DomainError("f_hat_1_general: requires 0 < b <= a");
    const double omc = (p.a - p.b) * (p.a + p.b) / (p.a * p.a);
    SignedLog pre = SignedLog{(th - 1.0) * std::log(0.5 * p.a) - constants::ln2, 1} * log_gamma(0.5 * (1.0 - th)) *
                    log_rgamma(1.0 + nu) * log_rgamma(0.5 * (mu - nu + al + 1.0));
    if (pre.sign == 0) return 0.0;
    double f = detail::hyp2f1_real(0.5 * (1.0 - th), 0.5 * (nu - mu + 1.0 - al), 1.0 + nu, chi, omc);
    return pre.value() * f;
}

inline double upsilon_n(int N, const SeriesParams& p) {
    return constants::euler_gamma - std::log(0.5 * p.a) - digamma(p.alpha) +
           0.5 * (digamma(N + 1.0) + digamma(N + 1.0 + p.mu) + digamma(N + 1.0 + p.nu) +
                  digamma(N + 1.0 + p.mu + p.nu));
}

inline double upsilon_hat_n(int N, const SeriesParams& p) {
    return constants::euler_gamma - std::log(0.5 * p.a) + 0.5 * digamma(N + 1.0 + p.mu) + 0.5 * digamma(N + 1.0);
}

// S_{mu,nu}(a,a), 0 < a <= pi.
inline EvalResult s_equal(const SeriesParams& p, const TruncationPolicy& policy = {}, TermLedger* ledger = nullptr) {
    policy.validate();
    detail::check_alpha_positive(p);
    if (std::abs(p.a - p.b) > 1e-12 * p.a) throw DomainError("s_equal: requires a = b");
    if (p.a > constants::pi * (1.0 + 1e-12)) throw DomainError("s_equal: requires a <= pi");
    EvalResult r;
    const bool boundary = std::abs(p.a - constants::pi) <= 1e-12 * constants::pi;
    if (boundary)
        r.warnings.push_back("boundary: a = pi, residue terms decay only like m^{-alpha-1}");
    const ThetaClass tc = classify_theta(p);
    detail::theta_warnings(tc.theta, r.warnings);

    const double la = std::log(0.5 * p.a);
    const double lq = 2.0 * std::log(p.a / constants::pi);
    const detail::DecayModel dm{std::exp(lq), p.alpha + 1.0};
    const int lim = detail::direct_route_limit(tc.theta);
    auto term = [&](int m) {
        SignedLog c = m <= lim ? detail::log_coeff_a_m_direct(m, p) : detail::log_coeff_a_m_alt(m, p);
        return (c * SignedLog{2.0 * m * la, 1}).value();
    };

    double base = 0.0;
    std::optional<int> last, skip;
    switch (tc.kind) {
        case ThetaClass::Kind::GenericSimplePoles:
            base = f_hat_1_equal(p);
            break;
        case ThetaClass::Kind::EvenNonNegInt:
            base = f_hat_1_equal(p);
            last = *tc.N;
            break;
        case ThetaClass::Kind::OddPosInt: {
            const int N = *tc.N;
            skip = N;
            SignedLog res = SignedLog{2.0 * N * la, N % 2 ? -1 : 1} * log_gamma(p.alpha) *
                            log_rgamma(N + 1.0 + p.mu) * log_rgamma(N + 1.0 + p.nu) *
                            log_rgamma(N + 1.0 + p.mu + p.nu) * log_rgamma(N + 1.0);
            base = res.value() * upsilon_n(N, p);
            break;
        }
    }
    auto rs = detail::sum_residues(term, base, policy, dm, last, skip, ledger);
    r.value = base + rs.sum;
    r.abs_err_est = rs.abs_err;
    r.terms_used = rs.terms;
    for (auto& w : rs.warnings) r.warnings.push_back(w);
    return r;
}

// S_{mu,nu}(a,b) with a > b, a + b <= 2 pi.
inline EvalResult s_general(const SeriesParams& p, const TruncationPolicy& policy = {},
                            TermLedger* ledger = nullptr) {
    policy.validate();
    detail::check_alpha_positive(p);
    if (!(p.a > p.b)) throw DomainError("s_general: requires a > b");
    const double two_pi = 2.0 * constants::pi;
    if (p.a + p.b > two_pi * (1.0 + 1e-12)) throw DomainError("s_general: requires a + b <= 2 pi");
    EvalResult r;
    if (std::abs(p.a + p.b - two_pi) <= 1e-12 * two_pi)
        r.warnings.push_back("boundary: a + b = 2 pi, residue terms decay only like m^{-alpha-1}");
    const ThetaClass tc = classify_theta(p);
    detail::theta_warnings(tc.theta, r.warnings);
    const double chi = p.chi();
    const double mu = p.mu, nu = p.nu;

    long long n2 = 0;
    if (near_integer(tc.theta, integer_snap_tol, &n2) && n2 <= 0 && n2 % 2 == 0) {
        const int N = static_cast<int>(-n2 / 2);
        const double omc = (p.a - p.b) * (p.a + p.b) / (p.a * p.a);
        SignedLog pre = SignedLog{(-2.0 * N - 1.0) * std::log(0.5 * p.a) - constants::ln2, 1} *
                        log_gamma(N + 0.5) * log_rgamma(1.0 + nu) * log_rgamma(mu - N + 0.5);
        double v = pre.sign == 0 ? 0.0 : pre.value() * detail::hyp2f1_real(N + 0.5, N + 0.5 - mu, 1.0 + nu, chi, omc);
        if (N == 0) v -= 0.5 * rgamma(1.0 + mu) * rgamma(1.0 + nu);
        r.value = v;
        r.method = Method::ClosedForm;
        r.terms_used = 1;
        r.abs_err_est = 1e-15 * std::abs(v);
        return r;
    }

    const double la = std::log(0.5 * p.a);
    const double lrg_nu = -detail::lg(1.0 + nu);
    const double q = (p.a + p.b) / two_pi;
    const detail::DecayModel dm{q * q, p.alpha + 1.0};
    FmSequence fseq(mu, nu, chi);
    int next_m = 0;
    SignedLog fm;
    auto term = [&](int m) {
        while (next_m <= m) {
            fm = fseq.next();
            ++next_m;
        }
        return (detail::log_coeff_b_m_bare(m, p) * fm * SignedLog{2.0 * m * la + lrg_nu, 1}).value();
    };

    double base = 0.0;
    std::optional<int> last, skip;
    switch (tc.kind) {
        case ThetaClass::Kind::GenericSimplePoles:
            base = f_hat_1_general(p);
            break;
        case ThetaClass::Kind::EvenNonNegInt:
            base = f_hat_1_general(p);
            last = *tc.N;
            break;
        case ThetaClass::Kind::OddPosInt: {
            const int N = *tc.N;
            skip = N;
            SignedLog pre = SignedLog{2.0 * N * la, N % 2 ? -1 : 1} * log_rgamma(1.0 + nu) *
                            log_rgamma(N + 1.0 + mu) * log_rgamma(N + 1.0);
            double fN = f_m({N, mu, nu, chi});
            base = pre.value() * (upsilon_hat_n(N, p) * fN - 0.5 * delta_n(N, mu, nu, chi));
            break;
        }
    }
    auto rs = detail::sum_residues(term, base, policy, dm, last, skip, ledger);
    r.value = base + rs.sum;
    r.abs_err_est = rs.abs_err;
    r.terms_used = rs.terms;
    for (auto& w : rs.warnings) r.warnings.push_back(w);
    return r;
}

// S_{mu,nu}(a,b) for any ordering of a and b: equal arguments go to s_equal,
// b > a is handled by exchanging (mu,a) with (nu,b).
inline EvalResult s_jj(SeriesParams p, const TruncationPolicy& policy = {}, TermLedger* ledger = nullptr) {
    if (std::abs(p.a - p.b) <= 1e-14 * std::max(p.a, p.b)) {
        p.b = p.a;
        return s_equal(p, policy, ledger);
    }
    if (p.b > p.a) {
        std::swap(p.a, p.b);
        std::swap(p.mu, p.nu);
    }
    return s_general(p, policy, ledger);
}

// Alternating sum: S(a,b) - 2^{1-theta} S(2a,2b).
inline EvalResult s_alternating(const SeriesParams& p, const TruncationPolicy& policy = {}) {
    if (p.a + p.b > constants::pi * (1.0 + 1e-12))
        throw DomainError("s_alternating: requires a + b <= pi so that the doubled arguments stay in the domain");
    SeriesParams d = p;
    d.a *= 2.0;
    d.b *= 2.0;
    EvalResult r1 = s_jj(p, policy);
    EvalResult r2 = s_jj(d, policy);
    const double w = std::exp2(1.0 - p.theta());
    EvalResult r;
    r.value = r1.value - w * r2.value;
    r.abs_err_est = r1.abs_err_est + w * r2.abs_err_est;
    r.terms_used = r1.terms_used + r2.terms_used;
    r.method = r1.method == Method::ClosedForm && r2.method == Method::ClosedForm ? Method::ClosedForm
                                                                                    : Method::Expansion;
    r.warnings = r1.warnings;
    for (auto& x : r2.warnings) r.warnings.push_back(x);
    r.warnings.push_back("note: the s=1 pole contribution cancels between S(a,b) and S(2a,2b)");
    return r;
}

}  // namespace besselsum
