#pragma once

#include <optional>

#include "rampr/parse.hpp"

namespace rampr {

/// The built-in configurations. Two Schur forms ship under distinct names on
/// purpose: "schur" carries the x!=y atom and the Ramsey pair, while
/// "schur-classical" is the x<=y forcing-number form.
inline const std::vector<Configuration>& builtin_catalog() {
    static const std::vector<Configuration> entries = [] {
        auto mk = [](const char* name, const char* text) {
            Configuration c = parse_config(text);
            c.name = name;
            return c;
        };
        std::vector<Configuration> out;
        out.push_back(mk("schur",
            "config { vars x y z; blocks (x y z); ramsey (x, y); formula x + y = z & x != y; }"));
        out.push_back(mk("schur-classical",
            "config { vars x y z; blocks (x y z); formula x + y = z & (x < y | x = y); }"));
        out.push_back(mk("difference",
            "config { vars x y z; blocks (x y z); ramsey (x, y); formula x + z = y; }"));
        out.push_back(mk("product",
            "config { vars x y z; blocks (x y z); ramsey (x, y); formula x*y = z; }"));
        out.push_back(mk("ratio",
            "config { vars x y z; blocks (x y z); ramsey (x, y); formula z*x = y; }"));
        out.push_back(mk("pairwise-sum-product",
            "config { vars x y z t; blocks (x y) (z t); ramsey (x, y); "
            "formula x + y = z & x*y = t & x != y; }"));
        out.push_back(mk("exp-product",
            "config { vars x y z t; blocks (x y) (z t); ramsey (x, y); "
            "formula x^y = z & x*y = t; }"));
        out.push_back(mk("exp-symmetric",
            "config { vars x y z t; blocks (x y) (z t); ramsey (x, y); "
            "formula x^y = z & y^x = t; }"));
        out.push_back(mk("shift-exp",
            "config { vars x y z t; blocks (x y) (z t); ramsey (x, y); "
            "formula x*2^y = z & x + y = t; }"));
        out.push_back(mk("pythagorean",
            "config { vars x y z; blocks (x y) (z); ramsey (x, y); formula x^2 + y^2 = z^2; }"));
        out.push_back(mk("square-plus-y",
            "config { vars x y z; blocks (x y z); ramsey (x, y); formula x^2 + y = z; }"));
        out.push_back(mk("3ap",
            "config { vars x y z; blocks (x y z); ramsey (x, y); "
            "formula x + y = 2*z | x + z = 2*y | y + z = 2*x; }"));
        out.push_back(mk("3ap-distinct",
            "config { vars x y z; blocks (x y z); formula x + z = 2*y & x < y; }"));
        out.push_back(mk("exp-gap",
            "config { vars x y z; blocks (x y) (z); ramsey (x, y); "
            "formula x + exp2(y) = exp2(z); }"));
        return out;
    }();
    return entries;
}

inline std::optional<Configuration> catalog_lookup(const std::string& name) {
    for (const auto& c : builtin_catalog())
        if (c.name == name) return c;
    return std::nullopt;
}

/// The pairwise sum-product formula (x+y=z) & (x*y=t) & (x!=y) under an
/// arbitrary block arrangement. Used by the verification corpus to spell out
/// every row of its block/Ramsey tables.
inline Configuration pairwise_sum_product_variant(
    std::vector<std::vector<std::string>> blocks,
    std::optional<std::pair<std::string, std::string>> ramsey,
    std::string name) {
    Configuration c;
    c.name = std::move(name);
    c.vars = {"x", "y", "z", "t"};
    c.formula = parse_formula("x + y = z & x*y = t & x != y");
    c.blocks = std::move(blocks);
    c.ramsey = std::move(ramsey);
    c.validate();
    return c;
}

} // namespace rampr
