#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "besselsum/hypergeo.hpp"
#include "besselsum/residue_sum.hpp"
#include "besselsum/special_kernel.hpp"
#include "besselsum/types.hpp"

namespace besselsum {

struct PoleCollision {
    enum class Kind { SOne, PlusMinus, Treble };
    Kind kind;
    int m;        // index in the s^+ lattice (s^- for SOne on the minus side)
    bool plus;    // lattice the record refers to
    double s;     // location of the coinciding pole
};

inline const char* to_string(PoleCollision::Kind k) {
    switch (k) {
        case PoleCollision::Kind::SOne: return "s_one";
        case PoleCollision::Kind::PlusMinus: return "plus_minus";
        case PoleCollision::Kind::Treble: return "treble";
    }
    return "?";
}

// s_m^+ = alpha - nu + mu - 2m and s_m^- = alpha - nu - mu - 2m for m < window.
// For integer mu = N, every s_m^+ with m >= N coincides with s_{m-N}^-; the
// collision list reports those inside the window.
struct PoleLattice {
    std::vector<double> s_plus;
    std::vector<double> s_minus;
    std::vector<PoleCollision> collisions;
    std::optional<int> integer_mu;

    bool all_simple() const { return collisions.empty(); }
    std::string describe() const {
        if (collisions.empty()) return "all poles simple";
        std::string out;
        bool pm_done = false;
        for (auto& c : collisions) {
            char buf[96];
            if (c.kind == PoleCollision::Kind::PlusMinus) {
                if (pm_done) continue;
                pm_done = true;
                std::snprintf(buf, sizeof buf, "plus_minus(s_m^+ = s_{m-%d}^- for m >= %d)", *integer_mu, c.m);
            } else {
                std::snprintf(buf, sizeof buf, "%s(m=%d, s=%.6g)", to_string(c.kind), c.m, c.s);
            }
            if (!out.empty()) out += ", ";
            out += buf;
        }
        return out;
    }
};

struct UnsupportedPoleCollision : DomainError {
    PoleLattice lattice;
    UnsupportedPoleCollision(const std::string& what, PoleLattice l) : DomainError(what), lattice(std::move(l)) {}
};

inline constexpr double pole_snap_tol = 1e-9;

inline PoleLattice classify_poles(const SeriesParams& p, int window = 12) {
    PoleLattice L;
    const double top = p.alpha - p.nu;
    long long n = 0;
    if (near_integer(p.mu, pole_snap_tol, &n)) L.integer_mu = static_cast<int>(n);
    // the s = 1 pole can sit arbitrarily deep in the lattice, so widen the window to reach it
    const int reach = std::max(window, static_cast<int>(std::ceil(0.5 * (top + p.mu - 1.0))) + 2);
    for (int m = 0; m < reach; ++m) {
        L.s_plus.push_back(top + p.mu - 2.0 * m);
        L.s_minus.push_back(top - p.mu - 2.0 * m);
    }
    for (int m = 0; m < reach; ++m) {
        const bool plus_one = std::abs(L.s_plus[m] - 1.0) < pole_snap_tol;
        const bool minus_one = std::abs(L.s_minus[m] - 1.0) < pole_snap_tol;
        const bool paired = L.integer_mu && m >= *L.integer_mu;
        if (paired && plus_one)
            L.collisions.push_back({PoleCollision::Kind::Treble, m, true, L.s_plus[m]});
        else if (paired && m < window)
            L.collisions.push_back({PoleCollision::Kind::PlusMinus, m, true, L.s_plus[m]});
        if (plus_one && !paired) L.collisions.push_back({PoleCollision::Kind::SOne, m, true, 1.0});
        if (minus_one && !L.integer_mu) L.collisions.push_back({PoleCollision::Kind::SOne, m, false, 1.0});
    }
    return L;
}

namespace detail {

enum class ModFamily { KJ, KI };

inline void check_modified_domain(ModFamily fam, const SeriesParams& p, const char* who) {
    if (p.mu < 0 || p.nu < 0) throw DomainError(std::string(who) + ": orders must be non-negative");
    if (!(p.a > 0) || !(p.b > 0)) throw DomainError(std::string(who) + ": requires a > 0 and b > 0");
    const double two_pi = 2.0 * constants::pi;
    if (fam == ModFamily::KJ) {
        const double r = std::hypot(p.a, p.b);
        if (p.alpha > 0 ? r > two_pi * (1.0 + 1e-12) : r >= two_pi)
            throw DomainError(std::string(who) + ": requires sqrt(a^2+b^2) <= 2 pi (strict for alpha <= 0)");
    } else {
        if (p.b > p.a) throw DomainError(std::string(who) + ": requires a >= b");
        if (p.a == p.b && !(p.alpha > 0)) throw DomainError(std::string(who) + ": a = b requires alpha > 0");
        const double r = p.a + p.b;
        if (p.alpha > 0 ? r > two_pi * (1.0 + 1e-12) : r >= two_pi)
            throw DomainError(std::string(who) + ": requires a + b <= 2 pi (strict for alpha <= 0)");
    }
}

inline double modified_radius(ModFamily fam, const SeriesParams& p) {
    return fam == ModFamily::KJ ? std::hypot(p.a, p.b) : p.a + p.b;
}

inline void modified_warnings(ModFamily fam, const SeriesParams& p, std::vector<std::string>& w) {
    const double q = modified_radius(fam, p) / (2.0 * constants::pi);
    if (q >= 0.99)
        w.push_back(std::string("boundary: ") + (fam == ModFamily::KJ ? "sqrt(a^2+b^2)" : "a+b") + " is " +
                    fmt_g(100.0 * q) + "% of 2 pi, residue terms decay slowly");
    const double dmu = std::abs(p.mu - std::round(p.mu));
    if (dmu > pole_snap_tol && dmu < 1e-3)
        w.push_back("ill-conditioned: mu is within " + fmt_g(dmu) +
                    " of an integer; Gamma(mu-m) and Gamma(-mu-m) cancel, about " + fmt_g(-std::log10(dmu)) +
                    " digits lost");
    for (double sg : {1.0, -1.0}) {
        // distance of the nearest s_m^{+-} to 1
        const double s0 = p.alpha - p.nu + sg * p.mu - 1.0;
        if (s0 < -pole_snap_tol) continue;
        const double d = std::abs(s0 - 2.0 * std::round(0.5 * s0));
        if (d > pole_snap_tol && d < 1e-4)
            w.push_back("ill-conditioned: a pole s_m^" + std::string(sg > 0 ? "+" : "-") + " lies within " +
                        fmt_g(d) + " of s=1");
    }
}

// F(1) without the 2F1 factor replaced: the residue of zeta at s = 1.
inline double modified_f1(ModFamily fam, const SeriesParams& p) {
    const double A = 0.5 * (1.0 - p.alpha + p.nu - p.mu), B = 0.5 * (1.0 - p.alpha + p.nu + p.mu);
    const double chi = p.chi();
    SignedLog pre = SignedLog{p.nu * std::log(p.b) + p.alpha * std::log(0.5 * p.a) - constants::ln2 -
                                  (1.0 + p.nu) * std::log(p.a),
                              1} *
                    log_gamma(A) * log_gamma(B) * log_rgamma(1.0 + p.nu);
    if (pre.sign == 0) return 0.0;
    double f = 0.0;
    if (fam == ModFamily::KJ)
        f = hyp2f1_real(A, B, 1.0 + p.nu, -chi, 1.0 + chi);
    else
        f = hyp2f1_real(A, B, 1.0 + p.nu, chi, (p.a - p.b) * (p.a + p.b) / (p.a * p.a));
    return pre.value() * f;
}

inline EvalResult modified_expansion(ModFamily fam, const SeriesParams& p, const TruncationPolicy& policy,
                                     TermLedger* ledger, bool with_f1) {
    const char* who = fam == ModFamily::KJ ? "s1" : "s2";
    policy.validate();
    check_modified_domain(fam, p, who);
    PoleLattice lat = classify_poles(p);
    if (!lat.all_simple()) {
        std::string msg = std::string(who) + ": unsupported pole collision: " + lat.describe();
        if (fam == ModFamily::KJ && std::abs(p.mu - 2.0) < pole_snap_tol &&
            std::abs(p.alpha - p.nu - 3.0) < pole_snap_tol)
            msg += "; use s1_special_mu2 for mu = 2, alpha - nu = 3";
        throw UnsupportedPoleCollision(msg, lat);
    }
    EvalResult r;
    modified_warnings(fam, p, r.warnings);

    const double chi = p.chi();
    const double x = fam == ModFamily::KJ ? -chi : chi;
    const double la = std::log(0.5 * p.a);
    const SignedLog pre = SignedLog{p.nu * std::log(0.5 * p.b) - constants::ln2, 1} * log_rgamma(1.0 + p.nu);
    // s_m^+ pairs with F_m(-mu), s_m^- with F_m(+mu): the second 2F1 parameter
    // at s_m^{+-} is -m +- mu.
    FmSequence f_plus(-p.mu, p.nu, x), f_minus(p.mu, p.nu, x);
    auto term = [&](int m) {
        const SignedLog fp = f_plus.next(), fm = f_minus.next();
        const double sp = p.alpha - p.nu + p.mu - 2.0 * m, sm = p.alpha - p.nu - p.mu - 2.0 * m;
        const int sg = m % 2 ? -1 : 1;
        SignedLog tp = SignedLog{(2.0 * m - p.mu) * la, sg} * log_gamma(p.mu - m) * log_zeta(sp) *
                       log_rgamma(m + 1.0) * fp;
        SignedLog tm = SignedLog{(2.0 * m + p.mu) * la, sg} * log_gamma(-p.mu - m) * log_zeta(sm) *
                       log_rgamma(m + 1.0) * fm;
        return (pre * tp).value() + (pre * tm).value();
    };
    const double q = modified_radius(fam, p) / (2.0 * constants::pi);
    const DecayModel dm{q * q, p.alpha + 1.0};
    const double base = with_f1 ? modified_f1(fam, p) : 0.0;
    auto rs = sum_residues(term, base, policy, dm, std::nullopt, std::nullopt, ledger);
    r.value = base + rs.sum;
    r.abs_err_est = rs.abs_err;
    r.terms_used = rs.terms;
    for (auto& w : rs.warnings) r.warnings.push_back(w);
    return r;
}

}  // namespace detail

// sum K_mu(an) J_nu(bn) / n^alpha.
inline EvalResult s1(const SeriesParams& p, const TruncationPolicy& policy = {}, TermLedger* ledger = nullptr) {
    return detail::modified_expansion(detail::ModFamily::KJ, p, policy, ledger, true);
}

// sum K_mu(an) I_nu(bn) / n^alpha, a >= b.
inline EvalResult s2(const SeriesParams& p, const TruncationPolicy& policy = {}, TermLedger* ledger = nullptr) {
    return detail::modified_expansion(detail::ModFamily::KI, p, policy, ledger, true);
}

inline bool is_special_mu2(const SeriesParams& p) {
    return std::abs(p.mu - 2.0) < pole_snap_tol && std::abs(p.alpha - p.nu - 3.0) < pole_snap_tol;
}

// G(chi) of the treble-pole residue.
inline double treble_g(double chi, double nu) {
    const double poch3 = (1.0 + nu) * (2.0 + nu) * (3.0 + nu);
    return chi / (1.0 + nu) * (1.0 + chi / (2.0 * (2.0 + nu))) +
           2.0 * chi * chi * chi / (3.0 * poch3) * hyp3f2(1.0, 1.0, 3.0, 4.0 + nu, 4.0, -chi);
}

// Residue at the treble pole s = 1 for mu = 2, alpha - nu = 3.
inline double treble_residue(const SeriesParams& p) {
    const double nu = p.nu, chi = p.chi();
    const double l = std::log(0.5 * p.a), g = constants::euler_gamma;
    const double c1 = chi / (1.0 + nu) * (1.0 + chi / (2.0 * (2.0 + nu)));
    const double pre = std::exp(2.0 * l + nu * std::log(0.5 * p.b)) * rgamma(1.0 + nu) / 4.0;
    const double brace = 7.0 / 8.0 - g * g - 2.0 * constants::stieltjes_1 - 1.5 * l + l * l +
                         constants::pi * constants::pi / 12.0 + 2.0 * c1 * (0.75 - l) - 0.5 * treble_g(chi, nu);
    return pre * brace;
}

// mu = 2, alpha - nu = 3: simple poles at s = 5, 3, a treble pole at s = 1 and
// double poles at s = 1 - 2m.
inline EvalResult s1_special_mu2(const SeriesParams& p, const TruncationPolicy& policy = {},
                                 TermLedger* ledger = nullptr) {
    policy.validate();
    if (!is_special_mu2(p)) throw DomainError("s1_special_mu2: requires mu = 2 and alpha - nu = 3");
    detail::check_modified_domain(detail::ModFamily::KJ, p, "s1_special_mu2");
    SeriesParams q = p;
    q.mu = 2.0;
    q.alpha = p.nu + 3.0;
    EvalResult r;
    detail::modified_warnings(detail::ModFamily::KJ, q, r.warnings);
    const double nu = q.nu, chi = q.chi();
    const double lb = nu * std::log(0.5 * q.b), la = std::log(0.5 * q.a);
    const double simple = std::exp(lb - 2.0 * la) * rgamma(1.0 + nu) / 2.0 *
                          (zeta(5.0) - q.a * q.a * zeta(3.0) / 4.0 * (1.0 + chi / (1.0 + nu)));
    const double base = simple + treble_residue(q);
    if (q.a + q.b > 2.0 * constants::pi)
        r.warnings.push_back("ill-conditioned: a + b > 2 pi; the double-pole terms grow before decaying");

    const SignedLog pre = SignedLog{constants::ln2 + 2.0 * la + lb, 1} * log_rgamma(1.0 + nu);
    const double l4pi = std::log(q.a / (4.0 * constants::pi));
    FmSequence fseq(2.0, nu, -chi);
    fseq.next();  // m = 0
    auto term = [&](int k) {
        const int m = k + 1;
        const double fm = fseq.next().value();
        const double h = 0.5 * digamma(m + 1.0) + 0.5 * digamma(m + 3.0) - digamma(2.0 * m) -
                         zeta_log_deriv_even(m) - l4pi;
        const double brace = h * fm - 0.5 * delta_n(m, 2.0, nu, -chi);
        SignedLog c = SignedLog{2.0 * m * l4pi - std::lgamma(m + 1.0) - std::lgamma(m + 3.0) + std::lgamma(2.0 * m),
                                m % 2 ? -1 : 1} *
                      log_zeta(2.0 * m);
        return (pre * c).value() * brace;
    };
    const double qq = std::hypot(q.a, q.b) / (2.0 * constants::pi);
    const detail::DecayModel dm{qq * qq, q.alpha + 1.0};
    const size_t first = ledger ? ledger->size() : 0;
    auto rs = detail::sum_residues(term, base, policy, dm, std::nullopt, std::nullopt, ledger);
    if (ledger)
        for (size_t i = first; i < ledger->size(); ++i) ++(*ledger)[i].m;
    r.value = base + rs.sum;
    r.abs_err_est = rs.abs_err;
    r.terms_used = rs.terms;
    for (auto& w : rs.warnings) r.warnings.push_back(w);
    return r;
}

// S^(k)(a,b) - 2^{1-alpha} S^(k)(2a,2b); the zeta pole at s = 1 cancels, so F(1) is left out of both.
inline EvalResult s_modified_alternating(int k, const SeriesParams& p, const TruncationPolicy& policy = {}) {
    if (k != 1 && k != 2) throw DomainError("s_modified_alternating: family must be 1 or 2");
    const auto fam = k == 1 ? detail::ModFamily::KJ : detail::ModFamily::KI;
    SeriesParams p2 = p;
    p2.a *= 2.0;
    p2.b *= 2.0;
    detail::check_modified_domain(fam, p2, "s_modified_alternating (doubled arguments)");
    auto r1 = detail::modified_expansion(fam, p, policy, nullptr, false);
    auto r2 = detail::modified_expansion(fam, p2, policy, nullptr, false);
    const double w = std::exp2(1.0 - p.alpha);
    EvalResult r;
    r.value = r1.value - w * r2.value;
    r.abs_err_est = r1.abs_err_est + w * r2.abs_err_est;
    r.terms_used = r1.terms_used + r2.terms_used;
    r.warnings = r1.warnings;
    for (auto& s : r2.warnings) r.warnings.push_back(s + " (doubled arguments)");
    r.warnings.push_back("note: the s=1 pole contribution cancels between S(a,b) and S(2a,2b)");
    return r;
}

// Dispatch on the series kind; mu = 2, alpha - nu = 3 goes to the closed treble-pole form.
inline EvalResult s_modified(SeriesKind kind, const SeriesParams& p, const TruncationPolicy& policy = {},
                             TermLedger* ledger = nullptr) {
    switch (kind) {
        case SeriesKind::k1:
            if (is_special_mu2(p)) return s1_special_mu2(p, policy, ledger);
            return s1(p, policy, ledger);
        case SeriesKind::k2:
            return s2(p, policy, ledger);
        case SeriesKind::k1_alt:
            return s_modified_alternating(1, p, policy);
        case SeriesKind::k2_alt:
            return s_modified_alternating(2, p, policy);
        default:
            throw DomainError("s_modified: not a modified-Bessel series kind");
    }
}

}  // namespace besselsum
