#pragma once

#include <sstream>

#include "rampr/json_io.hpp"
#include "rampr/parallel.hpp"

namespace rampr::verify {

/// The least n in [1..n_max], if any, such that
///   Q(floor(c^(1/d) b) - n) <= P(b) <= Q(floor(c^(1/d) b) + n)
/// for every b in [beta_lo..beta_hi], where c = lc(P)/lc(Q) and the d-th
/// root is taken as an exact integer floor on both sides. Records the first
/// failing b for every n that was tried and failed.
struct SandwichReport {
    std::optional<uint64_t> least_n;
    std::vector<std::pair<uint64_t, uint64_t>> failed_attempts; // (n, first failing beta)
    uint64_t beta_lo = 1, beta_hi = 1;
};

inline SandwichReport polynomial_sandwich_check(const IntPoly& P, const IntPoly& Q,
                                                uint64_t beta_lo, uint64_t beta_hi,
                                                uint64_t n_max = 64) {
    if (P.degree() != Q.degree() || P.degree() <= 1)
        throw std::domain_error("sandwich check: degrees must be equal and > 1");
    if (P.leading().sign() <= 0 || Q.leading().sign() <= 0)
        throw std::domain_error("sandwich check: leading coefficients must be positive");
    if (beta_lo < 1 || beta_lo > beta_hi)
        throw std::domain_error("sandwich check: bad beta range");

    uint64_t d = static_cast<uint64_t>(P.degree());
    SandwichReport rep;
    rep.beta_lo = beta_lo;
    rep.beta_hi = beta_hi;

    // floor(c^(1/d) * b) = floor((lc(P) b^d / lc(Q))^(1/d)), exactly.
    auto scaled_root = [&](uint64_t b) {
        BigInt t = (P.leading() * BigInt::pow(BigInt(b), d)) / Q.leading();
        return t.nth_root(d);
    };

    for (uint64_t n = 1; n <= n_max; ++n) {
        std::optional<uint64_t> first_fail;
        for (uint64_t b = beta_lo; b <= beta_hi; ++b) {
            BigInt s = scaled_root(b);
            BigInt pb = P.eval(BigInt(b));
            if (!(Q.eval(s - BigInt(n)) <= pb && pb <= Q.eval(s + BigInt(n)))) {
                first_fail = b;
                break;
            }
        }
        if (!first_fail) {
            rep.least_n = n;
            return rep;
        }
        rep.failed_attempts.emplace_back(n, *first_fail);
    }
    return rep;
}

inline json sandwich_report_to_json(const SandwichReport& r) {
    json fails = json::array();
    for (auto [n, b] : r.failed_attempts) fails.push_back(json::array({n, b}));
    json out{{"beta_lo", r.beta_lo}, {"beta_hi", r.beta_hi}, {"failed_attempts", fails}};
    if (r.least_n) out["least_n"] = *r.least_n;
    else out["least_n"] = nullptr;
    return out;
}

enum class Flag { Consistent, Inconsistent, Inconclusive, Open };

inline const char* to_string(Flag f) {
    switch (f) {
    case Flag::Consistent: return "CONSISTENT";
    case Flag::Inconsistent: return "INCONSISTENT";
    case Flag::Inconclusive: return "INCONCLUSIVE";
    case Flag::Open: return "OPEN";
    }
    return "?";
}

struct Experiment {
    enum class Kind { Classify, Forcing, Curve, Separator, Sandwich };
    Kind kind = Kind::Classify;

    json classify;                      // classifier name + parameters

    uint32_t forcing_colors = 2;        // Forcing
    uint64_t forcing_n_max = 40;

    std::vector<std::string> coloring_specs; // Curve: explicit specs and/or
    std::vector<uint64_t> random_seeds;      // seeded random colorings
    uint32_t random_colors = 2;
    std::vector<uint64_t> Ns;
    search::HMode mode = search::HMode::PerPair;

    std::string f_text, g_text;         // Separator
    search::SampleSpec samples;

    std::vector<BigInt> sandwich_P, sandwich_Q; // Sandwich (dense, const first)
    uint64_t sandwich_beta_lo = 1, sandwich_beta_hi = 1000, sandwich_n_max = 64;
};

/// One row of the verification corpus: a configuration, the verdict the
/// source results give it (if any), the citation anchor, and the experiment
/// that produces finite-scale evidence.
struct CorpusEntry {
    std::string name;
    std::optional<Configuration> config;
    std::optional<Status> paper_status; // nullopt: numeric-check rows
    std::string citation;
    std::string note;
    Experiment experiment;
};

namespace detail {

inline Status status_from_string(const std::string& s) {
    if (s == "PR") return Status::PR;
    if (s == "NotPR") return Status::NotPR;
    if (s == "RamseyPR") return Status::RamseyPR;
    if (s == "NotRamseyPR") return Status::NotRamseyPR;
    if (s == "OpenInPaper" || s == "Unknown") return Status::OpenInPaper;
    throw ConfigError("corpus: unknown verdict '" + s + "'");
}

inline search::SampleSpec samples_from_json(const json& j) {
    search::SampleSpec s;
    s.a_lo = j.value("a_lo", uint64_t(1));
    s.a_hi = j.value("a_hi", uint64_t(100));
    s.b_hi = j.value("b_hi", uint64_t(100));
    s.k = j.value("k", uint64_t(2));
    std::string reg = j.value("regime", std::string("square"));
    using R = search::SampleSpec::Regime;
    s.regime = reg == "all"      ? R::AllPairs
               : reg == "square" ? R::SquareGap
               : reg == "pow"    ? R::PowerGap
               : reg == "exp"    ? R::ExpGap
               : reg == "mul"    ? R::MultipleGap
                                 : throw ConfigError("corpus: unknown sample regime '" + reg + "'");
    return s;
}

inline std::vector<BigInt> poly_coeffs_from_json(const json& j) {
    std::vector<BigInt> out;
    for (const auto& v : j) {
        if (v.is_number_integer()) out.push_back(BigInt(v.get<long long>()));
        else out.push_back(BigInt::from_decimal(v.get<std::string>()));
    }
    return out;
}

inline uint64_t lower_median(std::vector<uint64_t> xs) {
    if (xs.empty()) return 0;
    std::sort(xs.begin(), xs.end());
    return xs[(xs.size() - 1) / 2];
}

} // namespace detail

inline Configuration config_from_spec(const std::string& spec,
                                      const FunctionTable& fns = FunctionTable::builtins()) {
    if (auto c = catalog_lookup(spec)) return *c;
    return parse_config(spec, fns);
}

inline CorpusEntry corpus_entry_from_json(const json& j,
                                          const FunctionTable& fns = FunctionTable::builtins()) {
    CorpusEntry e;
    e.name = j.at("name").get<std::string>();
    e.citation = j.at("citation").get<std::string>();
    citation_text(e.citation); // fail fast on dangling anchors
    if (j.contains("config"))
        e.config = config_from_spec(j.at("config").get<std::string>(), fns);
    std::string verdict = j.value("verdict", std::string("Holds"));
    if (verdict != "Holds") e.paper_status = detail::status_from_string(verdict);
    e.note = j.value("note", std::string());

    const json& x = j.at("experiment");
    std::string kind = x.at("kind").get<std::string>();
    Experiment& ex = e.experiment;
    if (kind == "classify") {
        ex.kind = Experiment::Kind::Classify;
        ex.classify = x;
    } else if (kind == "forcing") {
        ex.kind = Experiment::Kind::Forcing;
        ex.forcing_colors = x.value("colors", 2u);
        ex.forcing_n_max = x.value("n_max", uint64_t(40));
    } else if (kind == "curve") {
        ex.kind = Experiment::Kind::Curve;
        if (x.contains("colorings"))
            ex.coloring_specs = x.at("colorings").get<std::vector<std::string>>();
        if (x.contains("random_seeds"))
            ex.random_seeds = x.at("random_seeds").get<std::vector<uint64_t>>();
        ex.random_colors = x.value("random_colors", 2u);
        ex.Ns = x.at("N").get<std::vector<uint64_t>>();
        ex.mode = x.value("mode", std::string("perpair")) == "uniform" ? search::HMode::Uniform
                                                                       : search::HMode::PerPair;
        if (ex.Ns.empty()) throw ConfigError("corpus: curve entry with empty N list");
        if (ex.coloring_specs.empty() && ex.random_seeds.empty())
            throw ConfigError("corpus: curve entry with no colorings");
        if (!e.config) throw ConfigError("corpus: curve entry without a config");
    } else if (kind == "separator") {
        ex.kind = Experiment::Kind::Separator;
        ex.f_text = x.at("f").get<std::string>();
        ex.g_text = x.at("g").get<std::string>();
        if (x.contains("samples")) ex.samples = detail::samples_from_json(x.at("samples"));
    } else if (kind == "sandwich") {
        ex.kind = Experiment::Kind::Sandwich;
        ex.sandwich_P = detail::poly_coeffs_from_json(x.at("P"));
        ex.sandwich_Q = detail::poly_coeffs_from_json(x.at("Q"));
        ex.sandwich_beta_lo = x.value("beta_lo", uint64_t(1));
        ex.sandwich_beta_hi = x.value("beta_hi", uint64_t(1000));
        ex.sandwich_n_max = x.value("n_max", uint64_t(64));
    } else {
        throw ConfigError("corpus: unknown experiment kind '" + kind + "'");
    }
    return e;
}

inline std::vector<CorpusEntry> corpus_from_json(const json& doc,
                                                 const FunctionTable& fns = FunctionTable::builtins()) {
    std::vector<CorpusEntry> out;
    for (const auto& j : doc.at("entries")) out.push_back(corpus_entry_from_json(j, fns));
    return out;
}

namespace detail {

inline Verdict run_classifier(const json& p) {
    std::string cls = p.at("classifier").get<std::string>();
    if (cls == "rado3")
        return rado_three(p.at("a"), p.at("b"), p.at("c"));
    if (cls == "columns")
        return rado_columns(p.at("coeffs").get<std::vector<long long>>());
    if (cls == "axn") {
        IntPoly P, Q;
        P.c = poly_coeffs_from_json(p.at("P"));
        P.normalize();
        Q.c = poly_coeffs_from_json(p.at("Q"));
        Q.normalize();
        return classify_axn(p.at("a"), p.at("n"), P, Q);
    }
    if (cls == "moreira")
        return classify_moreira(p.at("a"), p.at("b"), p.at("c"), p.at("k1"), p.at("k2"),
                                p.at("k3"));
    if (cls == "gensumprod")
        return classify_gensumprod(p.at("n"), p.at("m"), p.at("k"), p.at("r"), p.at("s"));
    if (cls == "twovar") {
        Expr e = parse_expr(p.at("P").get<std::string>());
        return classify_two_var(bipoly_from_expr(e, "x", "y"));
    }
    throw ConfigError("corpus: unknown classifier '" + cls + "'");
}

} // namespace detail

struct RunOptions {
    search::Budget budget;
    unsigned workers = 1;
    /// Declared heuristic for negative rows: the curve counts as flat when
    /// the lower median at the largest N does not exceed the one at the
    /// smallest N, and the N list spans at least this factor.
    uint64_t flat_span_factor = 4;
};

/// Run one corpus entry and return its report object (data + flag).
inline json run_entry(const CorpusEntry& e, const RunOptions& opt,
                      const FunctionTable& fns = FunctionTable::builtins()) {
    json out;
    out["name"] = e.name;
    out["citation"] = e.citation;
    out["citation_text"] = citation_text(e.citation);
    out["paper_verdict"] = e.paper_status ? to_string(*e.paper_status) : "Holds";
    if (!e.note.empty()) out["note"] = e.note;
    if (e.config) out["config"] = e.config->to_text();

    bool open = e.paper_status && *e.paper_status == Status::OpenInPaper;
    bool negative = e.paper_status && (*e.paper_status == Status::NotPR ||
                                       *e.paper_status == Status::NotRamseyPR);
    Flag flag = Flag::Inconclusive;
    uint64_t nodes = 0;

    try {
        switch (e.experiment.kind) {
        case Experiment::Kind::Classify: {
            Verdict v = detail::run_classifier(e.experiment.classify);
            out["experiment"] = "classify";
            out["data"] = verdict_to_json(v);
            if (open)
                flag = Flag::Open;
            else if (e.paper_status && v.status == *e.paper_status)
                flag = Flag::Consistent;
            else
                flag = Flag::Inconsistent;
            break;
        }
        case Experiment::Kind::Forcing: {
            out["experiment"] = "forcing";
            search::SearchStats stats;
            auto n = search::forcing_number(*e.config, e.experiment.forcing_colors,
                                            e.experiment.forcing_n_max, fns, opt.budget, stats);
            nodes = stats.nodes;
            json data{{"colors", e.experiment.forcing_colors},
                      {"n_max", e.experiment.forcing_n_max}};
            data["forcing_number"] = n ? json(*n) : json(nullptr);
            out["data"] = data;
            if (open) {
                flag = Flag::Open;
            } else if (negative) {
                // an avoider all the way to n_max is the bounded evidence
                flag = n ? Flag::Inconclusive : Flag::Consistent;
            } else {
                flag = n ? Flag::Consistent : Flag::Inconclusive;
            }
            break;
        }
        case Experiment::Kind::Curve: {
            out["experiment"] = "curve";
            const Experiment& ex = e.experiment;
            struct Task { uint64_t N; std::string spec; uint64_t seed; bool random; };
            std::vector<Task> tasks;
            for (uint64_t N : ex.Ns) {
                for (const auto& s : ex.coloring_specs) tasks.push_back({N, s, 0, false});
                for (uint64_t s : ex.random_seeds) tasks.push_back({N, "", s, true});
            }
            auto sizes = parallel_map<uint64_t>(
                tasks.size(), opt.workers, [&](size_t i) {
                    const Task& t = tasks[i];
                    Coloring col = t.random
                        ? Coloring::random(t.seed, ex.random_colors, t.N)
                        : parse_coloring_spec(t.spec, t.N);
                    auto rep = search::max_ramsey_set(*e.config, col, t.N, ex.mode, fns,
                                                      opt.budget, 1);
                    if (!rep.exhausted)
                        throw search::BudgetExceeded(rep.nodes, "curve point");
                    return rep.size;
                });
            json curve = json::array();
            std::vector<uint64_t> medians;
            size_t per_n = tasks.size() / std::max<size_t>(ex.Ns.size(), 1);
            for (size_t ni = 0; ni < ex.Ns.size(); ++ni) {
                std::vector<uint64_t> at_n(sizes.begin() + ni * per_n,
                                           sizes.begin() + (ni + 1) * per_n);
                uint64_t med = detail::lower_median(at_n);
                medians.push_back(med);
                curve.push_back(json{{"N", ex.Ns[ni]}, {"sizes", at_n}, {"median", med}});
            }
            out["data"] = json{{"mode", search::to_string(ex.mode)}, {"curve", curve}};
            bool nondecreasing = true, flat = true;
            for (size_t i = 1; i < medians.size(); ++i)
                if (medians[i] < medians[i - 1]) nondecreasing = false;
            if (!medians.empty() && medians.back() > medians.front()) flat = false;
            bool spans = !ex.Ns.empty() &&
                         ex.Ns.back() >= ex.Ns.front() * opt.flat_span_factor;
            if (open)
                flag = Flag::Open;
            else if (negative)
                flag = (flat && spans) ? Flag::Consistent : Flag::Inconclusive;
            else
                flag = nondecreasing ? Flag::Consistent : Flag::Inconclusive;
            break;
        }
        case Experiment::Kind::Separator: {
            out["experiment"] = "separator";
            auto family = search::default_separator_family();
            auto rep = search::separator_search(parse_expr(e.experiment.f_text),
                                                parse_expr(e.experiment.g_text), family,
                                                e.experiment.samples, fns);
            out["data"] = separator_report_to_json(rep, family);
            out["data"]["samples_spec"] = e.experiment.samples.to_string();
            if (open)
                flag = Flag::Open;
            else if (negative)
                flag = rep.winner ? Flag::Consistent : Flag::Inconclusive;
            else
                flag = Flag::Inconclusive;
            break;
        }
        case Experiment::Kind::Sandwich: {
            out["experiment"] = "sandwich";
            IntPoly P, Q;
            P.c = e.experiment.sandwich_P;
            P.normalize();
            Q.c = e.experiment.sandwich_Q;
            Q.normalize();
            auto rep = polynomial_sandwich_check(P, Q, e.experiment.sandwich_beta_lo,
                                                 e.experiment.sandwich_beta_hi,
                                                 e.experiment.sandwich_n_max);
            out["data"] = sandwich_report_to_json(rep);
            flag = rep.least_n ? Flag::Consistent : Flag::Inconclusive;
            break;
        }
        }
    } catch (const search::BudgetExceeded& b) {
        out["budget_exhausted"] = true;
        out["nodes_at_stop"] = b.nodes;
        flag = Flag::Inconclusive;
    }

    // Structural guard: open claims never read as confirmed.
    if (open && flag == Flag::Consistent) flag = Flag::Open;
    out["flag"] = to_string(flag);
    if (nodes) out["nodes"] = nodes;
    return out;
}

/// Run the corpus. Entries execute independently (possibly concurrently) and
/// the report is assembled in corpus order; reports carry no wall-clock
/// data, so re-runs are byte-identical.
inline json run_corpus(const std::vector<CorpusEntry>& entries, const RunOptions& opt,
                       const FunctionTable& fns = FunctionTable::builtins()) {
    auto reports = parallel_map<json>(entries.size(), opt.workers,
                                      [&](size_t i) { return run_entry(entries[i], opt, fns); });
    json out;
    out["schema_version"] = kSchemaVersion;
    out["tool"] = json{{"name", kToolName}, {"version", kToolVersion}};
    out["budget"] = opt.budget.node_limit;
    json arr = json::array();
    std::map<std::string, int> tally;
    for (auto& r : reports) {
        tally[r.at("flag").get<std::string>()]++;
        arr.push_back(std::move(r));
    }
    out["entries"] = arr;
    out["summary"] = tally;
    return out;
}

/// Plain-text rendering of a corpus report: one aligned row per entry.
inline std::string render_corpus_text(const json& report) {
    std::ostringstream os;
    size_t name_w = 4, verdict_w = 7;
    for (const auto& e : report.at("entries")) {
        name_w = std::max(name_w, e.at("name").get<std::string>().size());
        verdict_w = std::max(verdict_w, e.at("paper_verdict").get<std::string>().size());
    }
    os << std::string(name_w, ' ') << "  " << "verdict" << std::string(verdict_w - 7, ' ')
       << "  flag          summary\n";
    for (const auto& e : report.at("entries")) {
        std::string name = e.at("name").get<std::string>();
        std::string verdict = e.at("paper_verdict").get<std::string>();
        std::string flag = e.at("flag").get<std::string>();
        std::string summary;
        std::string kind = e.value("experiment", std::string());
        const json& data = e.contains("data") ? e.at("data") : json();
        if (kind == "classify" && data.contains("status"))
            summary = "classified " + data.at("status").get<std::string>();
        else if (kind == "forcing" && data.contains("forcing_number"))
            summary = data.at("forcing_number").is_null()
                          ? "no forcing number found"
                          : "forcing number " + data.at("forcing_number").dump();
        else if (kind == "curve" && data.contains("curve")) {
            summary = "medians";
            for (const auto& pt : data.at("curve"))
                summary += " " + pt.at("median").dump() + "@" + pt.at("N").dump();
        } else if (kind == "separator" && data.contains("separator")) {
            summary = data.at("separator").is_null()
                          ? "no full separator"
                          : "separator " + data.at("separator").get<std::string>();
        } else if (kind == "sandwich" && data.contains("least_n")) {
            summary = data.at("least_n").is_null() ? "no n found"
                                                   : "least n = " + data.at("least_n").dump();
        }
        if (e.value("budget_exhausted", false)) summary += " [budget exhausted]";
        os << name << std::string(name_w - name.size(), ' ') << "  " << verdict
           << std::string(verdict_w - verdict.size(), ' ') << "  " << flag
           << std::string(flag.size() < 13 ? 13 - flag.size() : 1, ' ') << " " << summary
           << "\n";
    }
    if (report.contains("summary")) os << "summary: " << report.at("summary").dump() << "\n";
    return os.str();
}

} // namespace rampr::verify
