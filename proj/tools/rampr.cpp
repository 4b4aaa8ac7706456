#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "rampr/json_io.hpp"
#include "rampr/verify.hpp"

using namespace rampr;

namespace {

// exit codes: 0 success (absence of a witness is success), 1 user/parse
// error, 2 budget exhausted with partial results, 3 internal soundness
// violation.
constexpr int kOk = 0;
constexpr int kUserError = 1;
constexpr int kBudget = 2;
constexpr int kUnsound = 3;

struct GlobalOpts {
    uint64_t budget = 50000000;
    unsigned workers = 1;
    std::string format = "json"; // json | csv | text
    std::string output;          // empty = stdout
    std::vector<uint64_t> seeds;
};

void emit(const GlobalOpts& g, const json& report, const std::string& csv,
          const std::string& text) {
    std::string payload;
    if (g.format == "json") payload = report.dump(2) + "\n";
    else if (g.format == "csv") payload = csv;
    else payload = text;
    if (g.output.empty()) {
        std::cout << payload;
    } else {
        std::ofstream out(g.output, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file: " + g.output);
        out << payload;
    }
}

json run_config_json(const std::string& subcommand, const GlobalOpts& g, const json& extra) {
    json run{{"subcommand", subcommand},
             {"budget", g.budget},
             {"workers", g.workers},
             {"format", g.format}};
    if (!g.seeds.empty()) run["seeds"] = g.seeds;
    for (auto& [k, v] : extra.items()) run[k] = v;
    return run;
}

Configuration load_config(const std::string& spec) {
    if (auto c = catalog_lookup(spec)) return *c;
    if (spec.rfind("config", 0) == 0) return parse_config(spec);
    std::ifstream in(spec);
    if (!in) throw ConfigError("no catalog entry, inline config or readable file: " + spec);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_config(text);
}

Coloring load_coloring(const std::string& spec, uint64_t N) {
    std::ifstream in(spec);
    if (in) {
        json j = json::parse(in);
        return coloring_from_json(j, N);
    }
    return parse_coloring_spec(spec, N);
}

// "1x+1y=1z" or "2x+3y=7z": the three-coefficient linear shorthand.
bool parse_equation_shorthand(const std::string& s, long long& a, long long& b, long long& c) {
    size_t i = 0;
    auto number = [&](long long& out) {
        size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) { out = 1; return; }
        out = std::stoll(s.substr(start, i - start));
    };
    auto expect = [&](char ch) {
        if (i >= s.size() || s[i] != ch) throw ConfigError("bad equation shorthand: " + s);
        ++i;
    };
    number(a); expect('x'); expect('+');
    number(b); expect('y'); expect('=');
    number(c); expect('z');
    return i == s.size();
}

std::vector<long long> parse_ll_list(const std::string& s) {
    std::vector<long long> out;
    size_t i = 0;
    while (i < s.size()) {
        size_t j = s.find(',', i);
        if (j == std::string::npos) j = s.size();
        out.push_back(std::stoll(s.substr(i, j - i)));
        i = j + 1;
    }
    return out;
}

search::SampleSpec parse_samples(const std::string& s) {
    // "a:1..200,b<=200,regime:square[,k=3]"
    search::SampleSpec spec;
    size_t i = 0;
    while (i < s.size()) {
        size_t j = s.find(',', i);
        if (j == std::string::npos) j = s.size();
        std::string part = s.substr(i, j - i);
        if (part.rfind("a:", 0) == 0) {
            size_t dots = part.find("..");
            if (dots == std::string::npos) throw ConfigError("bad sample spec: " + part);
            spec.a_lo = std::stoull(part.substr(2, dots - 2));
            spec.a_hi = std::stoull(part.substr(dots + 2));
        } else if (part.rfind("b<=", 0) == 0) {
            spec.b_hi = std::stoull(part.substr(3));
        } else if (part.rfind("regime:", 0) == 0) {
            std::string r = part.substr(7);
            using R = search::SampleSpec::Regime;
            if (r == "all") spec.regime = R::AllPairs;
            else if (r == "square") spec.regime = R::SquareGap;
            else if (r == "pow") spec.regime = R::PowerGap;
            else if (r == "exp") spec.regime = R::ExpGap;
            else if (r == "mul") spec.regime = R::MultipleGap;
            else throw ConfigError("unknown sample regime: " + r);
        } else if (part.rfind("k=", 0) == 0) {
            spec.k = std::stoull(part.substr(2));
        } else if (!part.empty()) {
            throw ConfigError("bad sample spec fragment: " + part);
        }
        i = j + 1;
    }
    return spec;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"rampr: finite search and decision workbench for block and Ramsey "
                 "partition regularity over the positive integers"};
    app.require_subcommand(1);

    GlobalOpts g;
    if (const char* env = std::getenv("RAMPR_BUDGET")) g.budget = std::strtoull(env, nullptr, 10);
    app.add_option("--budget", g.budget, "node budget for searches (env RAMPR_BUDGET)");
    app.add_option("--workers", g.workers, "worker threads (default 1; output is identical)");
    app.add_option("--format", g.format, "output format: json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--output", g.output, "write the report to a file instead of stdout");
    app.add_option("--seed", g.seeds, "seed list for seeded experiments");

    // decide
    auto* decide = app.add_subcommand("decide", "classify an equation");
    decide->fallthrough();
    std::string eq, coeffs, moreira, gensumprod, twovar, axn;
    decide->add_option("--equation", eq, "linear shorthand ax+by=cz, e.g. \"1x+1y=1z\"");
    decide->add_option("--coeffs", coeffs, "coefficient list c1,c2,... for sum(ci*xi)=0");
    decide->add_option("--moreira", moreira, "a,b,c,k1,k2,k3 for a*x^k1+b*y^k2=c*z^k3");
    decide->add_option("--gensumprod", gensumprod, "n,m,k,r,s for n*x+m*y ~ k*x^r*y^s");
    decide->add_option("--two-var", twovar, "two-variable polynomial over x,y, e.g. \"x^2-y^2\"");
    decide->add_option("--axn", axn,
                       "a;n;P;Q with P,Q univariate polynomials, e.g. \"1;2;y;z\"");

    // witness
    auto* witness = app.add_subcommand("witness", "lexicographically least monochromatic witness");
    witness->fallthrough();
    std::string w_config, w_coloring = "mono";
    uint64_t w_bound = 100;
    std::vector<std::string> w_asym;
    witness->add_option("--config", w_config, "catalog name, inline config or file")->required();
    witness->add_option("--coloring", w_coloring, "coloring spec or file");
    witness->add_option("--bound", w_bound, "domain bound N");
    witness->add_option("--asym", w_asym, "ratio constraint var>FACTORvar, e.g. \"x>5y\"");

    // force
    auto* force = app.add_subcommand("force", "forcing number by avoidance backtracking");
    force->fallthrough();
    std::string f_config;
    uint32_t f_colors = 2;
    uint64_t f_bound = 40;
    force->add_option("--config", f_config)->required();
    force->add_option("--colors", f_colors, "number of colors r");
    force->add_option("--bound", f_bound, "largest N to try");

    // avoid
    auto* avoid = app.add_subcommand("avoid", "explicit avoiding coloring");
    avoid->fallthrough();
    std::string a_config;
    uint32_t a_colors = 2;
    uint64_t a_bound = 10;
    avoid->add_option("--config", a_config)->required();
    avoid->add_option("--colors", a_colors);
    avoid->add_option("--bound", a_bound);

    // ramsey-h
    auto* ramseyh = app.add_subcommand("ramsey-h", "maximum finite Ramsey set via cliques");
    ramseyh->fallthrough();
    std::string r_config, r_coloring = "mono", r_mode = "uniform";
    uint64_t r_bound = 100;
    ramseyh->add_option("--config", r_config)->required();
    ramseyh->add_option("--coloring", r_coloring);
    ramseyh->add_option("--bound", r_bound);
    ramseyh->add_option("--mode", r_mode)->check(CLI::IsMember({"uniform", "perpair"}));
    uint64_t r_hcap = 0;
    ramseyh->add_option("--hcap", r_hcap,
                        "override the vertex cap (default: computed from the bound)");

    // separate
    auto* separate = app.add_subcommand("separate", "hunt an invariant separating f and g");
    separate->fallthrough();
    std::string s_f, s_g, s_samples = "a:1..100,b<=100,regime:square";
    std::vector<std::string> s_family;
    separate->add_option("--f", s_f, "expression over x,y")->required();
    separate->add_option("--g", s_g, "expression over x,y")->required();
    separate->add_option("--samples", s_samples, "e.g. a:1..200,b<=200,regime:square");
    separate->add_option("--family", s_family,
                         "descriptor specs (default: the shipped family)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a verification corpus");
    verify_cmd->fallthrough();
    std::string v_corpus, v_only;
    verify_cmd->add_option("--corpus", v_corpus, "corpus JSON file")->required();
    verify_cmd->add_option("--only", v_only, "run only the entry with this name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    search::Budget budget{g.budget};
    int exit_code = kOk;

    try {
        if (*decide) {
            Verdict v{Status::OpenInPaper, "", "open.problem"};
            json input;
            if (!eq.empty()) {
                long long a, b, c;
                parse_equation_shorthand(eq, a, b, c);
                v = rado_three(a, b, c);
                input["equation"] = eq;
            } else if (!coeffs.empty()) {
                v = rado_columns(parse_ll_list(coeffs));
                input["coeffs"] = coeffs;
            } else if (!moreira.empty()) {
                auto p = parse_ll_list(moreira);
                if (p.size() != 6) throw ConfigError("--moreira wants 6 numbers");
                v = classify_moreira(p[0], p[1], p[2], p[3], p[4], p[5]);
                input["moreira"] = moreira;
            } else if (!gensumprod.empty()) {
                auto p = parse_ll_list(gensumprod);
                if (p.size() != 5) throw ConfigError("--gensumprod wants 5 numbers");
                v = classify_gensumprod(p[0], p[1], p[2], p[3], p[4]);
                input["gensumprod"] = gensumprod;
            } else if (!twovar.empty()) {
                v = classify_two_var(bipoly_from_expr(parse_expr(twovar), "x", "y"));
                input["two_var"] = twovar;
            } else if (!axn.empty()) {
                // a;n;P;Q
                std::vector<std::string> parts;
                size_t i = 0;
                while (i <= axn.size()) {
                    size_t j = axn.find(';', i);
                    if (j == std::string::npos) j = axn.size();
                    parts.push_back(axn.substr(i, j - i));
                    i = j + 1;
                }
                if (parts.size() != 4) throw ConfigError("--axn wants a;n;P;Q");
                IntPoly P = poly_from_expr(parse_expr(parts[2]), "y");
                IntPoly Q = poly_from_expr(parse_expr(parts[3]), "z");
                v = classify_axn(std::stoll(parts[0]), std::stoul(parts[1]), P, Q);
                input["axn"] = axn;
            } else {
                throw ConfigError("decide: pass one of --equation/--coeffs/--moreira/"
                                  "--gensumprod/--two-var/--axn");
            }
            json rep = report_envelope(run_config_json("decide", g, input));
            rep["result"] = verdict_to_json(v);
            std::string csv = "status,reason,citation\n\"" + std::string(to_string(v.status)) +
                              "\",\"" + v.reason + "\",\"" + v.citation + "\"\n";
            std::string text = std::string(to_string(v.status)) + ": " + v.reason + " [" +
                               v.citation + "]\n";
            emit(g, rep, csv, text);
        } else if (*witness) {
            Configuration c = load_config(w_config);
            Coloring col = load_coloring(w_coloring, w_bound);
            std::vector<search::RatioConstraint> ratios;
            for (const auto& s : w_asym) {
                size_t gt = s.find('>');
                if (gt == std::string::npos) throw ConfigError("bad --asym, want var>Kvar");
                size_t k = gt + 1, start = k;
                while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
                uint64_t factor = k > start ? std::stoull(s.substr(start, k - start)) : 1;
                ratios.push_back({s.substr(0, gt), s.substr(k), factor});
            }
            search::SearchStats stats;
            auto w = search::find_witness(c, col, w_bound, FunctionTable::builtins(), budget,
                                          stats, ratios);
            json run = run_config_json("witness", g,
                                       json{{"config", c.to_text()},
                                            {"coloring", w_coloring},
                                            {"bound", w_bound}});
            json rep = report_envelope(run);
            rep["nodes"] = stats.nodes;
            rep["result"] = w ? witness_to_json(c, *w) : json(nullptr);
            std::string text = w ? ("witness: " + witness_to_json(c, *w).dump() + "\n")
                                 : "no witness\n";
            std::string csv = "found\n" + std::string(w ? "1" : "0") + "\n";
            emit(g, rep, csv, text);
        } else if (*force) {
            Configuration c = load_config(f_config);
            search::SearchStats stats;
            auto n = search::forcing_number(c, f_colors, f_bound, FunctionTable::builtins(),
                                            budget, stats);
            json rep = report_envelope(run_config_json(
                "force", g,
                json{{"config", c.to_text()}, {"colors", f_colors}, {"bound", f_bound}}));
            rep["nodes"] = stats.nodes;
            rep["result"] = json{{"forcing_number", n ? json(*n) : json(nullptr)}};
            std::string text = n ? ("forcing number: " + std::to_string(*n) + "\n")
                                 : "no forcing number up to the bound\n";
            std::string csv = "forcing_number\n" + (n ? std::to_string(*n) : "") + "\n";
            emit(g, rep, csv, text);
        } else if (*avoid) {
            Configuration c = load_config(a_config);
            search::SearchStats stats;
            auto col = search::avoiding_coloring(c, a_colors, a_bound,
                                                 FunctionTable::builtins(), budget, stats);
            json rep = report_envelope(run_config_json(
                "avoid", g,
                json{{"config", c.to_text()}, {"colors", a_colors}, {"bound", a_bound}}));
            rep["nodes"] = stats.nodes;
            rep["result"] = col ? coloring_to_json(*col) : json(nullptr);
            std::string text = col ? ("avoider: " + col->describe() + "\n") : "no avoider\n";
            std::string csv = "found\n" + std::string(col ? "1" : "0") + "\n";
            emit(g, rep, csv, text);
        } else if (*ramseyh) {
            Configuration c = load_config(r_config);
            Coloring col = load_coloring(r_coloring, r_bound);
            auto mode = r_mode == "uniform" ? search::HMode::Uniform : search::HMode::PerPair;
            std::optional<uint64_t> hcap;
            if (r_hcap > 0) hcap = r_hcap;
            auto report = search::max_ramsey_set(c, col, r_bound, mode,
                                                 FunctionTable::builtins(), budget, g.workers,
                                                 hcap);
            json rep = report_envelope(run_config_json(
                "ramsey-h", g,
                json{{"config", c.to_text()},
                     {"coloring", r_coloring},
                     {"bound", r_bound},
                     {"mode", r_mode}}));
            rep["coloring"] = coloring_to_json(col);
            rep["result"] = ramsey_report_to_json(report);
            if (!report.exhausted) exit_code = kBudget;
            std::string csv = "N,mode,size,home_color,exhausted\n" + std::to_string(r_bound) +
                              "," + r_mode + "," + std::to_string(report.size) + "," +
                              std::to_string(report.home_color) + "," +
                              (report.exhausted ? "1" : "0") + "\n";
            std::string text = "max |H| = " + std::to_string(report.size) + " at N = " +
                               std::to_string(r_bound) + (report.exhausted ? "" : " (truncated)") +
                               "\n";
            emit(g, rep, csv, text);
        } else if (*separate) {
            std::vector<InvariantDescriptor> family;
            if (s_family.empty()) family = search::default_separator_family();
            else
                for (const auto& spec : s_family) family.push_back(parse_descriptor_spec(spec));
            auto samples = parse_samples(s_samples);
            auto report = search::separator_search(parse_expr(s_f), parse_expr(s_g), family,
                                                   samples);
            json rep = report_envelope(run_config_json(
                "separate", g,
                json{{"f", s_f}, {"g", s_g}, {"samples", samples.to_string()}}));
            rep["result"] = separator_report_to_json(report, family);
            std::string csv = "descriptor,failures\n";
            for (size_t i = 0; i < family.size(); ++i)
                csv += "\"" + family[i].to_string() + "\"," +
                       std::to_string(report.failure_counts[i]) + "\n";
            std::string text = report.winner
                ? ("separator: " + family[*report.winner].to_string() + "\n")
                : "no full separator in the family\n";
            emit(g, rep, csv, text);
        } else if (*verify_cmd) {
            std::ifstream in(v_corpus);
            if (!in) throw ConfigError("cannot read corpus file: " + v_corpus);
            json doc = json::parse(in);
            auto entries = verify::corpus_from_json(doc);
            if (!v_only.empty()) {
                std::vector<verify::CorpusEntry> filtered;
                for (auto& e : entries)
                    if (e.name == v_only) filtered.push_back(e);
                if (filtered.empty()) throw ConfigError("no corpus entry named " + v_only);
                entries = std::move(filtered);
            }
            verify::RunOptions opt;
            opt.budget = budget;
            opt.workers = g.workers;
            json report = verify::run_corpus(entries, opt);
            json rep = report_envelope(run_config_json(
                "verify", g, json{{"corpus", v_corpus}, {"only", v_only}}));
            rep["result"] = report;
            std::string csv = "name,experiment,paper_verdict,flag,N,point,value\n";
            for (const auto& e : report.at("entries")) {
                std::string head = "\"" + e.at("name").get<std::string>() + "\"," +
                                   e.value("experiment", std::string()) + "," +
                                   e.at("paper_verdict").get<std::string>() + "," +
                                   e.at("flag").get<std::string>();
                const json& data = e.contains("data") ? e.at("data") : json();
                if (data.contains("curve")) {
                    for (const auto& pt : data.at("curve")) {
                        const auto& sizes = pt.at("sizes");
                        for (size_t i = 0; i < sizes.size(); ++i)
                            csv += head + "," + pt.at("N").dump() + "," + std::to_string(i) +
                                   "," + sizes[i].dump() + "\n";
                    }
                } else if (data.contains("forcing_number")) {
                    csv += head + ",,," + data.at("forcing_number").dump() + "\n";
                } else if (data.contains("status")) {
                    csv += head + ",,," + data.at("status").dump() + "\n";
                } else {
                    csv += head + ",,,\n";
                }
            }
            emit(g, rep, csv, verify::render_corpus_text(report));
        }
    } catch (const search::BudgetExceeded& e) {
        json rep = report_envelope(run_config_json("(exhausted)", g, json::object()));
        rep["result"] = nullptr;
        rep["budget_exhausted"] = true;
        rep["nodes_at_stop"] = e.nodes;
        rep["phase"] = e.phase;
        try {
            emit(g, rep, "budget_exhausted\n1\n", "budget exhausted during " + e.phase + "\n");
        } catch (...) {
        }
        std::cerr << "error: " << e.what() << " after " << e.nodes << " nodes\n";
        return kBudget;
    } catch (const SoundnessError& e) {
        std::cerr << "internal error: " << e.what()
                  << " (the verifier rejected a search output; this is a bug)\n";
        return kUnsound;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "; see the grammar notes in README.md\n";
        return kUserError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUserError;
    }
    return exit_code;
}
