#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace besselsum {

struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Evaluation hit a pole of Gamma, zeta or 2F1.
struct PoleError : DomainError {
    using DomainError::DomainError;
};

struct SeriesParams {
    double mu = 0.0;
    double nu = 0.0;
    double alpha = 1.0;
    double a = 1.0;
    double b = 1.0;

    double theta() const { return alpha - mu - nu; }
    double chi() const { return (b / a) * (b / a); }
};

enum class SeriesKind { jj, jj_alt, k1, k1_alt, k2, k2_alt };

inline const char* to_string(SeriesKind k) {
    switch (k) {
        case SeriesKind::jj: return "jj";
        case SeriesKind::jj_alt: return "jj_alt";
        case SeriesKind::k1: return "k1";
        case SeriesKind::k1_alt: return "k1_alt";
        case SeriesKind::k2: return "k2";
        case SeriesKind::k2_alt: return "k2_alt";
    }
    return "?";
}

inline std::optional<SeriesKind> parse_kind(const std::string& s) {
    for (auto k : {SeriesKind::jj, SeriesKind::jj_alt, SeriesKind::k1, SeriesKind::k1_alt,
                   SeriesKind::k2, SeriesKind::k2_alt}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

inline bool is_alternating(SeriesKind k) {
    return k == SeriesKind::jj_alt || k == SeriesKind::k1_alt || k == SeriesKind::k2_alt;
}

enum class Method { Expansion, ClosedForm, DirectOracle };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::Expansion: return "expansion";
        case Method::ClosedForm: return "closed_form";
        case Method::DirectOracle: return "oracle";
    }
    return "?";
}

struct TruncationPolicy {
    double rel_tol = 1e-14;
    int max_terms = 500;
    int consecutive_below = 3;

    void validate() const {
        if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
        if (max_terms < 10) throw DomainError("max_terms must be at least 10");
        if (consecutive_below < 1) throw DomainError("consecutive_below must be positive");
    }
};

struct TermRecord {
    int m;
    double term;
    double cumulative;
};

using TermLedger = std::vector<TermRecord>;

struct EvalResult {
    double value = 0.0;
    double abs_err_est = 0.0;
    int terms_used = 0;
    Method method = Method::Expansion;
    // Each entry starts with a tag: "boundary:", "ill-conditioned:", "truncated:", "tail-fit:", "note:".
    std::vector<std::string> warnings;
};

struct OracleReport {
    double value = 0.0;
    long long n_terms = 0;
    double tail_bound = 0.0;
    bool heuristic = true;
};

}  // namespace besselsum
