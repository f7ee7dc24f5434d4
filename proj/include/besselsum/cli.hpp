#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "besselsum/besselsum.hpp"

namespace besselsum::cli {

enum class Command { eval, compare, sweep, selfcheck };
enum class MethodChoice { automatic, expansion, oracle };
enum class Output { human, csv, json };

struct SweepAxis {
    std::string param;
    double from = 0.0;
    double to = 1.0;
    int count = 2;
    bool log = false;
};

struct RunConfig {
    Command command = Command::eval;
    SeriesKind kind = SeriesKind::jj;
    SeriesParams params;
    MethodChoice method = MethodChoice::automatic;
    TruncationPolicy policy;
    std::optional<SweepAxis> sweep_axis;
    Output output = Output::human;
    std::optional<std::uint64_t> seed;
    std::optional<long long> n_max;
    double tol = 1e-9;
    int threads = 0;

    void validate() const {
        if (sweep_axis.has_value() != (command == Command::sweep))
            throw std::invalid_argument("a sweep axis is required for sweep and only for sweep");
        if (sweep_axis) {
            const auto& ax = *sweep_axis;
            if (ax.count < 2) throw std::invalid_argument("--count must be at least 2");
            if (ax.param != "mu" && ax.param != "nu" && ax.param != "alpha" && ax.param != "a" && ax.param != "b")
                throw std::invalid_argument("--axis must be one of mu, nu, alpha, a, b");
            if (ax.log && !(ax.from > 0 && ax.to > 0)) throw std::invalid_argument("--log needs positive bounds");
        }
        if (!(tol > 0)) throw std::invalid_argument("--tol must be positive");
        if (n_max && *n_max < 1) throw std::invalid_argument("--n-max must be positive");
    }
};

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline long long default_n_max(SeriesKind k) {
    return (k == SeriesKind::jj || k == SeriesKind::jj_alt) ? 10'000'000LL : 2'000'000LL;
}

struct Row {
    SeriesKind kind;
    SeriesParams p;
    std::string theta_class;
    std::optional<EvalResult> result;
    std::string error;  // set when the evaluation raised a domain error
    double last_term = 0.0;
    double max_abs_term = 0.0;
};

inline std::string theta_class_of(SeriesKind kind, const SeriesParams& p) {
    if (kind == SeriesKind::jj || kind == SeriesKind::jj_alt) return to_string(classify_theta(p).kind);
    if ((kind == SeriesKind::k1) && is_special_mu2(p)) return "treble";
    return classify_poles(p).all_simple() ? "simple" : "collision";
}

inline EvalResult eval_expansion(SeriesKind kind, const SeriesParams& p, const TruncationPolicy& policy,
                                 TermLedger* ledger) {
    switch (kind) {
        case SeriesKind::jj: return s_jj(p, policy, ledger);
        case SeriesKind::jj_alt: return s_alternating(p, policy);
        default: return s_modified(kind, p, policy, ledger);
    }
}

inline EvalResult eval_oracle(SeriesKind kind, const SeriesParams& p, const TruncationPolicy& policy,
                              long long n_max) {
    auto o = direct_sum(kind, p, n_max, policy);
    EvalResult r;
    r.value = o.value;
    r.abs_err_est = o.tail_bound;
    r.terms_used = static_cast<int>(std::min<long long>(o.n_terms, 2147483647LL));
    r.method = Method::DirectOracle;
    if (o.heuristic) r.warnings.push_back("note: oracle tail bound is heuristic");
    return r;
}

inline Row evaluate(SeriesKind kind, const SeriesParams& p, MethodChoice method, const TruncationPolicy& policy,
                    long long n_max) {
    Row row{kind, p, "", std::nullopt, "", 0.0, 0.0};
    try {
        row.theta_class = theta_class_of(kind, p);
    } catch (const DomainError&) {
        row.theta_class = "n/a";
    }
    TermLedger ledger;
    try {
        if (method == MethodChoice::oracle) {
            row.result = eval_oracle(kind, p, policy, n_max);
        } else {
            try {
                row.result = eval_expansion(kind, p, policy, &ledger);
            } catch (const DomainError& e) {
                if (method == MethodChoice::expansion) throw;
                row.result = eval_oracle(kind, p, policy, n_max);
                row.result->warnings.insert(row.result->warnings.begin(),
                                            std::string("note: expansion unavailable (") + e.what() +
                                                "); used the direct oracle");
            }
        }
    } catch (const DomainError& e) {
        row.error = e.what();
    }
    for (auto& t : ledger) row.max_abs_term = std::max(row.max_abs_term, std::abs(t.term));
    if (!ledger.empty()) row.last_term = ledger.back().term;
    return row;
}

inline std::string join_warnings(const std::vector<std::string>& w) {
    std::string s;
    for (auto& x : w) s += (s.empty() ? "" : "; ") + x;
    return s;
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

inline const char* csv_header = "kind,mu,nu,alpha,a,b,theta,theta_class,method,value,abs_err_est,terms,warnings";

inline std::string csv_row(const Row& r) {
    std::string s = std::string(to_string(r.kind)) + "," + fmt17(r.p.mu) + "," + fmt17(r.p.nu) + "," +
                    fmt17(r.p.alpha) + "," + fmt17(r.p.a) + "," + fmt17(r.p.b) + "," + fmt17(r.p.theta()) + "," +
                    r.theta_class + ",";
    if (r.result) {
        s += std::string(to_string(r.result->method)) + "," + fmt17(r.result->value) + "," +
             fmt17(r.result->abs_err_est) + "," + std::to_string(r.result->terms_used) + "," +
             csv_field(join_warnings(r.result->warnings));
    } else {
        s += "error,,,0," + csv_field("error: " + r.error);
    }
    return s;
}

inline nlohmann::ordered_json json_row(const Row& r) {
    nlohmann::ordered_json j;
    j["kind"] = to_string(r.kind);
    j["mu"] = r.p.mu;
    j["nu"] = r.p.nu;
    j["alpha"] = r.p.alpha;
    j["a"] = r.p.a;
    j["b"] = r.p.b;
    j["theta"] = r.p.theta();
    j["theta_class"] = r.theta_class;
    if (r.result) {
        j["method"] = to_string(r.result->method);
        j["value"] = r.result->value;
        j["abs_err_est"] = r.result->abs_err_est;
        j["terms"] = r.result->terms_used;
        j["warnings"] = r.result->warnings;
        j["ledger"] = {{"last_term", r.last_term}, {"max_abs_term", r.max_abs_term}};
    } else {
        j["method"] = "error";
        j["value"] = nullptr;
        j["abs_err_est"] = nullptr;
        j["terms"] = 0;
        j["warnings"] = std::vector<std::string>{"error: " + r.error};
    }
    return j;
}

// JSON with doubles printed to 17 significant digits.
inline std::string dump17(const nlohmann::ordered_json& j, int indent = 2, int depth = 0) {
    const std::string pad(static_cast<size_t>(indent * (depth + 1)), ' '), end(static_cast<size_t>(indent * depth), ' ');
    if (j.is_number_float()) {
        double x = j.get<double>();
        return std::isfinite(x) ? fmt17(x) : "null";
    }
    if (j.is_object()) {
        if (j.empty()) return "{}";
        std::string s = "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            s += (first ? "" : ",\n") + pad + nlohmann::json(it.key()).dump() + ": " + dump17(it.value(), indent, depth + 1);
            first = false;
        }
        return s + "\n" + end + "}";
    }
    if (j.is_array()) {
        if (j.empty()) return "[]";
        std::string s = "[\n";
        for (size_t i = 0; i < j.size(); ++i)
            s += (i ? ",\n" : "") + pad + dump17(j[i], indent, depth + 1);
        return s + "\n" + end + "]";
    }
    return j.dump();
}

inline void print_human(std::ostream& out, const Row& r) {
    out << "kind        " << to_string(r.kind) << "\n";
    out << "params      mu=" << fmt17(r.p.mu) << " nu=" << fmt17(r.p.nu) << " alpha=" << fmt17(r.p.alpha)
        << " a=" << fmt17(r.p.a) << " b=" << fmt17(r.p.b) << "\n";
    out << "theta       " << fmt17(r.p.theta()) << " (" << r.theta_class << ")\n";
    if (!r.result) {
        out << "error       " << r.error << "\n";
        return;
    }
    out << "method      " << to_string(r.result->method) << "\n";
    out << "value       " << fmt17(r.result->value) << "\n";
    out << "abs_err_est " << fmt17(r.result->abs_err_est) << "\n";
    out << "terms       " << r.result->terms_used << "\n";
    for (auto& w : r.result->warnings) out << "warning     " << w << "\n";
}

inline void emit_error(std::ostream& err, const std::string& type, const std::string& msg) {
    nlohmann::ordered_json j;
    j["error"] = type;
    j["message"] = msg;
    err << j.dump() << "\n";
}

inline std::vector<double> sweep_grid(const SweepAxis& ax) {
    std::vector<double> g(static_cast<size_t>(ax.count));
    for (int i = 0; i < ax.count; ++i) {
        const double t = double(i) / double(ax.count - 1);
        g[i] = ax.log ? std::exp(std::log(ax.from) + t * (std::log(ax.to) - std::log(ax.from)))
                      : ax.from + t * (ax.to - ax.from);
    }
    g.front() = ax.from;
    g.back() = ax.to;
    return g;
}

inline void set_param(SeriesParams& p, const std::string& name, double v) {
    if (name == "mu") p.mu = v;
    else if (name == "nu") p.nu = v;
    else if (name == "alpha") p.alpha = v;
    else if (name == "a") p.a = v;
    else if (name == "b") p.b = v;
}

// Runs f(i) for i in [0, n) on up to `threads` workers.
inline void parallel_for(int n, int threads, const std::function<void(int)>& f) {
    int t = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    t = std::min(t, n);
    if (t <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int k = 0; k < t; ++k)
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) f(i);
        });
    for (auto& th : pool) th.join();
}

// Portable uniform draw on [lo, hi) from the top 53 bits.
inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * (double(g() >> 11) * 0x1.0p-53);
}

struct SelfcheckItem {
    std::string name;
    int passed = 0;
    int total = 0;
    double worst = 0.0;
};

inline std::vector<SelfcheckItem> selfcheck(std::uint64_t seed, double tol, const TruncationPolicy& policy) {
    std::mt19937_64 g(seed);
    std::vector<SelfcheckItem> items;
    auto check = [&](const std::string& name, int n, double tol, const std::function<double()>& diff) {
        SelfcheckItem it{name, 0, n, 0.0};
        for (int i = 0; i < n; ++i) {
            double d = 0.0;
            try {
                d = diff();
            } catch (const std::exception&) {
                d = INFINITY;
            }
            it.worst = std::max(it.worst, d);
            if (d <= tol) ++it.passed;
        }
        items.push_back(it);
    };
    auto rel = [](double x, double ref) { return std::abs(x - ref) / std::max(1.0, std::abs(ref)); };

    constexpr double kernel_tol = 1e-12;
    check("zeta functional equation", 8, kernel_tol, [&] {
        const double s = uniform(g, -9.0, -0.1);
        const double rhs = std::pow(2.0, s) * std::pow(constants::pi, s - 1.0) * std::sin(0.5 * constants::pi * s) *
                           std::tgamma(1.0 - s) * zeta(1.0 - s);
        return std::abs(zeta(s) - rhs) / std::max(1e-300, std::abs(rhs));
    });
    check("digamma recurrence", 8, kernel_tol, [&] {
        const double x = uniform(g, 0.1, 30.0);
        return std::abs(digamma(x + 1.0) - digamma(x) - 1.0 / x);
    });
    check("jj equal-argument vs oracle", 4, tol, [&] {
        SeriesParams p{uniform(g, 0, 2), uniform(g, 0, 2), 0, 0, 0};
        p.alpha = p.mu + p.nu + uniform(g, 1.0, 3.0);
        p.a = p.b = uniform(g, 0.3, 2.5);
        return rel(s_jj(p, policy).value, direct_sum(SeriesKind::jj, p, 4'000'000, policy).value);
    });
    check("jj general vs oracle", 4, tol, [&] {
        SeriesParams p{uniform(g, 0, 2), uniform(g, 0, 2), uniform(g, 1.5, 4.0), 0, 0};
        p.a = uniform(g, 0.5, 3.0);
        p.b = p.a * uniform(g, 0.1, 0.9);
        return rel(s_jj(p, policy).value, direct_sum(SeriesKind::jj, p, 4'000'000, policy).value);
    });
    check("k1 vs oracle", 6, tol, [&] {
        SeriesParams p{uniform(g, 0.05, 0.95) + std::floor(uniform(g, 0, 3)), uniform(g, 0, 2), uniform(g, -1, 3),
                       uniform(g, 0.3, 3.0), uniform(g, 0.1, 3.0)};
        return rel(s1(p, policy).value, direct_sum(SeriesKind::k1, p, 100000, policy).value);
    });
    check("k2 vs oracle", 6, tol, [&] {
        SeriesParams p{uniform(g, 0.05, 0.95) + std::floor(uniform(g, 0, 3)), uniform(g, 0, 2), uniform(g, -1, 3),
                       uniform(g, 1.0, 3.5), 0};
        p.b = p.a * uniform(g, 0.1, 0.7);
        return rel(s2(p, policy).value, direct_sum(SeriesKind::k2, p, 100000, policy).value);
    });
    check("k1 treble-pole form vs oracle", 3, tol, [&] {
        SeriesParams p{2.0, uniform(g, 0, 1.5), 0, uniform(g, 0.5, 2.0), 0};
        p.alpha = p.nu + 3.0;
        p.b = p.a * uniform(g, 0.2, 0.9);
        return rel(s1_special_mu2(p, policy).value, direct_sum(SeriesKind::k1, p, 100000, policy).value);
    });
    check("alternating k1 vs signed oracle", 3, tol, [&] {
        SeriesParams p{uniform(g, 0.05, 0.95), uniform(g, 0, 1), uniform(g, 0.5, 2.5), uniform(g, 0.3, 1.5), 0};
        p.b = uniform(g, 0.1, 1.5);
        return rel(s_modified_alternating(1, p, policy).value, direct_sum(SeriesKind::k1_alt, p, 100000, policy).value);
    });
    return items;
}

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        emit_error(err, "usage", e.what());
        return 1;
    }
    const long long n_max = cfg.n_max.value_or(default_n_max(cfg.kind));
    switch (cfg.command) {
        case Command::eval: {
            Row r = evaluate(cfg.kind, cfg.params, cfg.method, cfg.policy, n_max);
            if (cfg.output == Output::csv)
                out << csv_header << "\n" << csv_row(r) << "\n";
            else if (cfg.output == Output::json)
                out << dump17(json_row(r)) << "\n";
            else
                print_human(out, r);
            if (!r.result) {
                emit_error(err, "domain", r.error);
                return 2;
            }
            return 0;
        }
        case Command::compare: {
            Row e = evaluate(cfg.kind, cfg.params, MethodChoice::expansion, cfg.policy, n_max);
            Row o = evaluate(cfg.kind, cfg.params, MethodChoice::oracle, cfg.policy, n_max);
            if (!e.result || !o.result) {
                emit_error(err, "domain", !e.result ? e.error : o.error);
                return 2;
            }
            const double d = std::abs(e.result->value - o.result->value);
            const double rd = d / std::max(std::abs(o.result->value), 1e-300);
            const bool pass = d <= cfg.tol * std::max(1.0, std::abs(o.result->value));
            if (cfg.output == Output::json) {
                nlohmann::ordered_json j;
                j["expansion"] = json_row(e);
                j["oracle"] = json_row(o);
                j["abs_diff"] = d;
                j["rel_diff"] = rd;
                j["tol"] = cfg.tol;
                j["pass"] = pass;
                out << dump17(j) << "\n";
            } else if (cfg.output == Output::csv) {
                out << csv_header << "\n" << csv_row(e) << "\n" << csv_row(o) << "\n";
                out << "# abs_diff=" << fmt17(d) << " rel_diff=" << fmt17(rd) << " tol=" << fmt17(cfg.tol) << " "
                    << (pass ? "PASS" : "FAIL") << "\n";
            } else {
                out << "expansion   " << fmt17(e.result->value) << " (" << to_string(e.result->method) << ", "
                    << e.result->terms_used << " terms, err~" << fmt17(e.result->abs_err_est) << ")\n";
                out << "oracle      " << fmt17(o.result->value) << " (" << o.result->terms_used
                    << " terms, tail<=" << fmt17(o.result->abs_err_est) << ")\n";
                out << "abs_diff    " << fmt17(d) << "\n";
                out << "rel_diff    " << fmt17(rd) << "\n";
                out << (pass ? "PASS" : "FAIL") << " (tol " << fmt17(cfg.tol) << ")\n";
            }
            return pass ? 0 : 3;
        }
        case Command::sweep: {
            const auto& ax = *cfg.sweep_axis;
            const auto grid = sweep_grid(ax);
            std::vector<Row> rows(grid.size());
            parallel_for(static_cast<int>(grid.size()), cfg.threads, [&](int i) {
                SeriesParams p = cfg.params;
                set_param(p, ax.param, grid[i]);
                if (ax.param == "a" && cfg.params.a == cfg.params.b) p.b = grid[i];  // keep a = b sweeps equal
                rows[i] = evaluate(cfg.kind, p, cfg.method, cfg.policy, n_max);
            });
            bool failed = false;
            if (cfg.output == Output::json) {
                nlohmann::ordered_json arr = nlohmann::ordered_json::array();
                for (auto& r : rows) arr.push_back(json_row(r));
                out << dump17(arr) << "\n";
            } else if (cfg.output == Output::human) {
                for (size_t i = 0; i < rows.size(); ++i) {
                    if (i) out << "\n";
                    print_human(out, rows[i]);
                    out << "ledger      last_term=" << fmt17(rows[i].last_term)
                        << " max_abs_term=" << fmt17(rows[i].max_abs_term) << "\n";
                }
            } else {
                out << csv_header << "\n";
                for (auto& r : rows) out << csv_row(r) << "\n";
            }
            for (auto& r : rows)
                if (!r.result) failed = true;
            if (failed) {
                emit_error(err, "domain", "one or more sweep points lie outside the evaluator domain");
                return 2;
            }
            return 0;
        }
        case Command::selfcheck: {
            const auto items = selfcheck(cfg.seed.value_or(20240601ULL), cfg.tol, cfg.policy);
            int passed = 0, total = 0;
            for (auto& it : items) {
                out << (it.passed == it.total ? "PASS " : "FAIL ") << it.name << ": " << it.passed << "/" << it.total
                    << " (worst " << fmt17(it.worst) << ")\n";
                passed += it.passed;
                total += it.total;
            }
            out << "selfcheck " << passed << "/" << total << " passed\n";
            return passed == total ? 0 : 3;
        }
    }
    return 1;
}

// Parses argv into a RunConfig. Returns an exit code when parsing ends the run
// (help, version or a usage error), nullopt otherwise.
inline std::optional<int> parse(int argc, const char* const* argv, RunConfig& cfg, std::ostream& out,
                                std::ostream& err) {
    CLI::App app{"Bessel Dirichlet series by Mellin-residue expansion or direct summation", "besselsum"};
    app.require_subcommand(1);
    std::string kind = "jj", method = "auto", output, axis;
    double from = 0, to = 1;
    int count = 2;
    bool log = false;
    std::uint64_t seed = 0;
    long long n_max = 0;
    if (const char* env = std::getenv("BESSELSUM_MAX_TERMS")) {
        try {
            cfg.policy.max_terms = std::stoi(env);
        } catch (const std::exception&) {
            emit_error(err, "usage", "BESSELSUM_MAX_TERMS is not an integer");
            return 1;
        }
    }
    auto common = [&](CLI::App* sc) {
        sc->add_option("--kind", kind, "jj, jj_alt, k1, k1_alt, k2, k2_alt")
            ->check(CLI::IsMember({"jj", "jj_alt", "k1", "k1_alt", "k2", "k2_alt"}));
        sc->add_option("--mu", cfg.params.mu, "order of the first Bessel factor");
        sc->add_option("--nu", cfg.params.nu, "order of the second Bessel factor");
        sc->add_option("--alpha", cfg.params.alpha, "power of n in the denominator");
        sc->add_option("--a", cfg.params.a, "first scale");
        sc->add_option("--b", cfg.params.b, "second scale");
        sc->add_option("--rel-tol", cfg.policy.rel_tol, "residue-sum stopping tolerance");
        sc->add_option("--max-terms", cfg.policy.max_terms, "residue-sum term cap");
        sc->add_option("--consecutive-below", cfg.policy.consecutive_below, "small terms needed to stop");
        sc->add_option("--n-max", n_max, "oracle term cap");
        sc->add_option("--output", output, "human, csv or json")->check(CLI::IsMember({"human", "csv", "json"}));
        sc->add_option("--threads", cfg.threads, "worker threads for sweep (0 = all cores)");
    };
    auto* ev = app.add_subcommand("eval", "evaluate one series");
    auto* cmp = app.add_subcommand("compare", "expansion against the direct oracle");
    auto* sw = app.add_subcommand("sweep", "evaluate along a parameter grid");
    auto* sc = app.add_subcommand("selfcheck", "run the embedded invariant checks");
    for (auto* s : {ev, cmp, sw, sc}) common(s);
    for (auto* s : {ev, sw})
        s->add_option("--method", method, "auto, expansion or oracle")
            ->check(CLI::IsMember({"auto", "expansion", "oracle"}));
    for (auto* s : {cmp, sc}) s->add_option("--tol", cfg.tol, "pass tolerance, |diff| <= tol*max(1,|oracle|)");
    sw->add_option("--axis", axis, "mu, nu, alpha, a or b")->required();
    sw->add_option("--from", from, "grid start")->required();
    sw->add_option("--to", to, "grid end")->required();
    sw->add_option("--count", count, "grid points (>= 2)");
    sw->add_flag("--log", log, "logarithmic grid");
    auto* seed_opt = sc->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        emit_error(err, "usage", e.what());
        return 1;
    }
    cfg.kind = *parse_kind(kind);
    cfg.method = method == "oracle" ? MethodChoice::oracle
                 : method == "expansion" ? MethodChoice::expansion
                                         : MethodChoice::automatic;
    if (n_max > 0) cfg.n_max = n_max;
    if (ev->parsed()) cfg.command = Command::eval;
    if (cmp->parsed()) cfg.command = Command::compare;
    if (sc->parsed()) cfg.command = Command::selfcheck;
    if (sw->parsed()) {
        cfg.command = Command::sweep;
        cfg.sweep_axis = SweepAxis{axis, from, to, count, log};
    }
    if (*seed_opt) cfg.seed = seed;
    if (output.empty())
        cfg.output = cfg.command == Command::sweep ? Output::csv : Output::human;
    else
        cfg.output = output == "csv" ? Output::csv : output == "json" ? Output::json : Output::human;
    return std::nullopt;
}

inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    if (auto code = parse(argc, argv, cfg, out, err)) return *code;
    try {
        cfg.policy.validate();
    } catch (const DomainError& e) {
        emit_error(err, "usage", e.what());
        return 1;
    }
    return run(cfg, out, err);
}

}  // namespace besselsum::cli
