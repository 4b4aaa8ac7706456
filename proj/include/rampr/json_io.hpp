#pragma once

#include <json.hpp>

#include "rampr/coloring.hpp"
#include "rampr/config.hpp"
#include "rampr/decide.hpp"
#include "rampr/search.hpp"
#include "rampr/version.hpp"

namespace rampr {

using json = nlohmann::json;

inline json verdict_to_json(const Verdict& v) {
    return json{{"status", to_string(v.status)},
                {"reason", v.reason},
                {"citation", v.citation},
                {"citation_text", citation_text(v.citation)}};
}

inline json witness_to_json(const Configuration& c, const Witness& w) {
    json assignment = json::object();
    for (size_t i = 0; i < c.vars.size(); ++i)
        assignment[c.vars[i]] = w.values[i];
    return json{{"assignment", assignment}, {"block_colors", w.block_colors}};
}

inline json descriptor_to_json(const InvariantDescriptor& d) {
    using Op = InvariantDescriptor::Op;
    switch (d.op) {
    case Op::VpMod: return json{{"op", "vpmod"}, {"p", d.p}, {"m", d.m}};
    case Op::Smod: return json{{"op", "smod"}, {"p", d.p}};
    case Op::LmMod: return json{{"op", "lmmod"}, {"base", d.p}, {"m", d.m}};
    case Op::LmIterMod:
        return json{{"op", "lmitermod"}, {"base", d.p}, {"k", d.k}, {"m", d.m}};
    case Op::ResMod: return json{{"op", "resmod"}, {"m", d.m}};
    case Op::Tuple: {
        json items = json::array();
        for (const auto& it : d.items) items.push_back(descriptor_to_json(it));
        return json{{"op", "tuple"}, {"items", items}};
    }
    case Op::PostMod:
        return json{{"op", "postmod"}, {"inner", descriptor_to_json(d.items.front())},
                    {"m", d.m}};
    }
    return {};
}

inline InvariantDescriptor descriptor_from_json(const json& j) {
    std::string op = j.at("op").get<std::string>();
    if (op == "vpmod") return InvariantDescriptor::vp_mod(j.at("p"), j.at("m"));
    if (op == "smod") return InvariantDescriptor::smod(j.at("p"));
    if (op == "lmmod") return InvariantDescriptor::lm_mod(j.at("base"), j.at("m"));
    if (op == "lmitermod")
        return InvariantDescriptor::lm_iter_mod(j.at("base"), j.at("k"), j.at("m"));
    if (op == "resmod") return InvariantDescriptor::res_mod(j.at("m"));
    if (op == "tuple") {
        std::vector<InvariantDescriptor> items;
        for (const auto& it : j.at("items")) items.push_back(descriptor_from_json(it));
        return InvariantDescriptor::tuple(std::move(items));
    }
    if (op == "postmod")
        return InvariantDescriptor::post_mod(descriptor_from_json(j.at("inner")), j.at("m"));
    throw ColoringError("coloring json: unknown descriptor op '" + op + "'");
}

/// Serialized colorings carry their constructor, not just the table, so the
/// reports stay self-describing. Explicit tables use run-length encoding
/// when it is shorter.
inline json coloring_to_json(const Coloring& c) {
    json j;
    j["colors"] = c.num_colors();
    j["N"] = c.domain_bound();
    switch (c.backing()) {
    case Coloring::Backing::Explicit: {
        j["kind"] = "explicit";
        const auto& t = c.table();
        std::vector<std::pair<uint32_t, uint64_t>> runs;
        for (uint32_t v : t) {
            if (!runs.empty() && runs.back().first == v) ++runs.back().second;
            else runs.emplace_back(v, 1);
        }
        if (runs.size() * 2 < t.size()) {
            json rle = json::array();
            for (auto [v, len] : runs) rle.push_back(json::array({v, len}));
            j["rle"] = rle;
        } else {
            j["table"] = t;
        }
        break;
    }
    case Coloring::Backing::Invariant:
        j["kind"] = "invariant";
        j["descriptor"] = descriptor_to_json(*c.descriptor());
        break;
    case Coloring::Backing::Random:
        j["kind"] = "random";
        j["seed"] = c.seed();
        break;
    case Coloring::Backing::Product: {
        j["kind"] = "product";
        json factors = json::array();
        for (const auto& f : *c.factors()) factors.push_back(coloring_to_json(f));
        j["factors"] = factors;
        break;
    }
    }
    return j;
}

inline Coloring coloring_from_json(const json& j, std::optional<uint64_t> bound = std::nullopt) {
    std::string kind = j.at("kind").get<std::string>();
    uint64_t N = bound ? *bound : j.at("N").get<uint64_t>();
    if (kind == "explicit") {
        std::vector<uint32_t> table;
        if (j.contains("table")) {
            table = j.at("table").get<std::vector<uint32_t>>();
        } else {
            for (const auto& run : j.at("rle")) {
                uint32_t v = run.at(0);
                uint64_t len = run.at(1);
                table.insert(table.end(), len, v);
            }
        }
        return Coloring::explicit_table(std::move(table), j.at("colors").get<uint32_t>());
    }
    if (kind == "invariant")
        return Coloring::from_invariant(descriptor_from_json(j.at("descriptor")), N);
    if (kind == "random")
        return Coloring::random(j.at("seed").get<uint64_t>(), j.at("colors").get<uint32_t>(), N);
    if (kind == "product") {
        std::vector<Coloring> factors;
        for (const auto& f : j.at("factors")) factors.push_back(coloring_from_json(f, N));
        return Coloring::product(std::move(factors));
    }
    throw ColoringError("coloring json: unknown kind '" + kind + "'");
}

inline json ramsey_report_to_json(const search::RamseySetReport& r) {
    return json{{"mode", search::to_string(r.mode)},
                {"N", r.N},
                {"size", r.size},
                {"H", r.best_H},
                {"home_color", r.home_color},
                {"aux_colors", r.aux_colors},
                {"exhausted", r.exhausted},
                {"nodes", r.nodes}};
}

inline json separator_report_to_json(const search::SeparatorReport& r,
                                     const std::vector<InvariantDescriptor>& family) {
    json descs = json::array();
    for (size_t i = 0; i < family.size(); ++i) {
        json d;
        d["descriptor"] = family[i].to_string();
        d["failures"] = r.failure_counts[i];
        json fails = json::array();
        for (auto [a, b] : r.first_failures[i]) fails.push_back(json::array({a, b}));
        d["first_failures"] = fails;
        descs.push_back(d);
    }
    json out{{"samples", r.samples}, {"family", descs}};
    if (r.winner) {
        out["separator"] = family[*r.winner].to_string();
        out["separator_index"] = *r.winner;
    } else {
        out["separator"] = nullptr;
    }
    return out;
}

/// Envelope shared by every CLI report: schema version, tool identity and
/// the run configuration it answers.
inline json report_envelope(const json& run_config) {
    return json{{"schema_version", kSchemaVersion},
                {"tool", json{{"name", kToolName}, {"version", kToolVersion}}},
                {"run", run_config}};
}

} // namespace rampr
