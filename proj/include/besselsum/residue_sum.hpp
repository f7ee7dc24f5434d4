#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "besselsum/special_kernel.hpp"
#include "besselsum/summation.hpp"
#include "besselsum/types.hpp"

namespace besselsum::detail {

// Shape of the residue terms for large m: t_m ~ sigma^m q2^m m^{-p} (C0 + C1/m + ...).
struct DecayModel {
    double q2 = 0.0;  // geometric ratio per term, ((a+b)/2pi)^2 or similar
    double p = 1.0;   // algebraic exponent, alpha + 1
};

struct ResidueSum {
    double sum = 0.0;
    double abs_err = 0.0;
    int terms = 0;
    std::vector<std::string> warnings;
};

inline std::string fmt_g(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

// Sum_{m > M} sigma^m q2^m m^{-s}.
inline double model_tail(int M, int sigma, double q2, double s) {
    if (q2 >= 1.0 - 1e-12) {
        if (sigma > 0) return hurwitz_zeta(s, M + 1.0);
        double h = std::pow(2.0, -s) * (hurwitz_zeta(s, 0.5 * (M + 1.0)) - hurwitz_zeta(s, 0.5 * (M + 2.0)));
        return ((M + 1) % 2 == 0) ? h : -h;
    }
    CompensatedSum<double> acc;
    const double lq = std::log(q2);
    for (long m = M + 1; m < M + 50000000L; ++m) {
        double t = std::exp(m * lq - s * std::log(double(m)));
        acc += (sigma < 0 && m % 2) ? -t : t;
        if (t < 1e-19 * std::abs(acc.value())) break;
    }
    return acc.value();
}

// Fit C_j from terms at m in pts and sum the model beyond M.
inline std::optional<double> fitted_tail(const std::vector<double>& t, int M, int sigma, const DecayModel& dm,
                                         const std::vector<int>& pts) {
    const int k = static_cast<int>(pts.size());
    std::array<std::array<double, 5>, 4> A{};
    for (int i = 0; i < k; ++i) {
        int m = pts[i];
        double base = std::exp(m * std::log(dm.q2) - dm.p * std::log(double(m)));
        if (sigma < 0 && m % 2) base = -base;
        if (base == 0.0 || !std::isfinite(base)) return std::nullopt;
        for (int j = 0; j < k; ++j) A[i][j] = std::pow(double(m), -j);
        A[i][k] = t[m] / base;
    }
    for (int c = 0; c < k; ++c) {
        int piv = c;
        for (int r = c + 1; r < k; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        if (A[c][c] == 0.0) return std::nullopt;
        for (int r = 0; r < k; ++r) {
            if (r == c) continue;
            double f = A[r][c] / A[c][c];
            for (int j = c; j <= k; ++j) A[r][j] -= f * A[c][j];
        }
    }
    double tail = 0.0;
    for (int j = 0; j < k; ++j) tail += A[j][k] / A[j][j] * model_tail(M, sigma, dm.q2, dm.p + j);
    return tail;
}

// Sums term(m) for m = 0, 1, ... (skipping `skip`), either up to `last`
// inclusive or until `consecutive_below` successive terms fall below
// rel_tol * |base + partial sum|. When max_terms runs out on a series whose
// tail has a fixed or alternating sign, the tail is extrapolated from the
// decay model.
template <class TermFn>
ResidueSum sum_residues(TermFn&& term, double base, const TruncationPolicy& policy, const DecayModel& dm,
                        std::optional<int> last, std::optional<int> skip, TermLedger* ledger) {
    ResidueSum out;
    CompensatedSum<double> acc;
    std::vector<double> seen;
    int below = 0;
    double last_term = 0.0;
    bool converged = false;
    const int limit = last ? *last + 1 : policy.max_terms;
    int m = 0;
    for (; m < limit; ++m) {
        double t = 0.0;
        if (!skip || m != *skip) {
            t = term(m);
            if (!std::isfinite(t)) throw DomainError("residue term is not finite at m = " + std::to_string(m));
            acc += t;
            ++out.terms;
        }
        seen.push_back(t);
        if (ledger) ledger->push_back({m, t, base + acc.value()});
        if (last || (skip && m == *skip)) continue;
        last_term = t;
        if (std::abs(t) <= policy.rel_tol * std::abs(base + acc.value())) {
            if (++below >= policy.consecutive_below) {
                converged = true;
                ++m;
                break;
            }
        } else {
            below = 0;
        }
    }
    out.sum = acc.value();
    if (last) return out;

    const double lt = std::abs(last_term);
    if (converged) {
        out.abs_err = dm.q2 < 1.0 - 1e-12 ? lt / (1.0 - dm.q2) : lt * m / std::max(dm.p - 1.0, 1e-3);
        return out;
    }

    const int M = m - 1;
    out.warnings.push_back("truncated: max_terms=" + std::to_string(policy.max_terms) +
                           " reached before the stopping rule was met");
    out.abs_err = dm.q2 < 1.0 - 1e-12 ? lt / (1.0 - dm.q2) : lt * M / std::max(dm.p - 1.0, 1e-3);

    int sigma = 0;
    if (M >= 40) {
        int same = 0, alt = 0;
        for (int i = M - 8; i < M; ++i) {
            if (seen[i] == 0.0 || seen[i + 1] == 0.0) continue;
            if ((seen[i] > 0) == (seen[i + 1] > 0))
                ++same;
            else
                ++alt;
        }
        if (same == 8) sigma = 1;
        if (alt == 8) sigma = -1;
    }
    if (sigma == 0 || dm.p <= 1.0) return out;
    auto t4 = fitted_tail(seen, M, sigma, dm, {M / 8, M / 4, M / 2, M});
    auto t3 = fitted_tail(seen, M, sigma, dm, {M / 4, M / 2, M});
    if (!t4 || !t3) return out;
    out.sum += *t4;
    out.abs_err = std::abs(*t4 - *t3) + 1e-16 * std::abs(out.sum);
    out.warnings.back() += "; tail extrapolated";
    out.warnings.push_back("tail-fit: algebraic tail m^{-" + fmt_g(dm.p) + "} fitted at m=" + std::to_string(M / 8) +
                           ".." + std::to_string(M) + ", tail=" + fmt_g(*t4));
    return out;
}

}  // namespace besselsum::detail
