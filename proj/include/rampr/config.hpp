#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rampr/expr.hpp"

namespace rampr {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Atom {
    enum class Cmp { Eq, Neq, Lt };
    Cmp cmp = Cmp::Eq;
    Expr lhs, rhs;

    std::string to_string() const {
        const char* op = cmp == Cmp::Eq ? " = " : cmp == Cmp::Neq ? " != " : " < ";
        return lhs.to_string() + op + rhs.to_string();
    }
};

/// Positive boolean combination of atoms. There is no negation operator;
/// Neq is a primitive atom instead, which keeps searches monotone.
class Formula {
public:
    enum class Kind { Leaf, And, Or };

    Formula() : kind_(Kind::And) {} // empty conjunction == true

    static Formula leaf(Atom a) {
        Formula f;
        f.kind_ = Kind::Leaf;
        f.atom_ = std::move(a);
        return f;
    }
    static Formula conj(std::vector<Formula> kids) {
        Formula f;
        f.kind_ = Kind::And;
        f.kids_ = std::move(kids);
        return f;
    }
    static Formula disj(std::vector<Formula> kids) {
        Formula f;
        f.kind_ = Kind::Or;
        f.kids_ = std::move(kids);
        return f;
    }

    Kind kind() const { return kind_; }
    const Atom& atom() const { return atom_; }
    const std::vector<Formula>& children() const { return kids_; }

    void collect_vars(std::set<std::string>& out) const {
        if (kind_ == Kind::Leaf) {
            atom_.lhs.collect_vars(out);
            atom_.rhs.collect_vars(out);
        } else {
            for (const auto& k : kids_) k.collect_vars(out);
        }
    }

    void collect_functions(std::set<std::string>& out) const {
        if (kind_ == Kind::Leaf) {
            atom_.lhs.collect_functions(out);
            atom_.rhs.collect_functions(out);
        } else {
            for (const auto& k : kids_) k.collect_functions(out);
        }
    }

    /// Every atom reachable from the root through And nodes only. These must
    /// hold in any satisfying assignment, which is what makes direct atom
    /// solving sound during search.
    void top_conjuncts(std::vector<const Atom*>& out) const {
        if (kind_ == Kind::Leaf) {
            out.push_back(&atom_);
        } else if (kind_ == Kind::And) {
            for (const auto& k : kids_) k.top_conjuncts(out);
        }
    }

    std::string to_string() const { return render(0); }

private:
    // precedence: Or 1, And 2
    std::string render(int parent) const {
        switch (kind_) {
        case Kind::Leaf:
            return atom_.to_string();
        case Kind::And: {
            if (kids_.empty()) return "0 = 0";
            std::string s;
            for (size_t i = 0; i < kids_.size(); ++i) {
                if (i) s += " & ";
                s += kids_[i].render(2);
            }
            return parent > 2 ? "(" + s + ")" : s;
        }
        case Kind::Or: {
            std::string s;
            for (size_t i = 0; i < kids_.size(); ++i) {
                if (i) s += " | ";
                s += kids_[i].render(1);
            }
            return parent > 1 ? "(" + s + ")" : s;
        }
        }
        return {};
    }

    Kind kind_;
    Atom atom_;
    std::vector<Formula> kids_;
};

/// A configuration: variables, a positive formula over them, an ordered block
/// partition, and optionally the designated pair (x, y), which must live in
/// the first block with x listed before y.
struct Configuration {
    std::string name;
    std::vector<std::string> vars;
    Formula formula;
    std::vector<std::vector<std::string>> blocks;
    std::optional<std::pair<std::string, std::string>> ramsey;

    size_t var_index(const std::string& v) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == v) return i;
        throw ConfigError("unknown variable: " + v);
    }

    /// Block index of each variable, in var order.
    std::vector<size_t> block_map() const {
        std::vector<size_t> out(vars.size(), SIZE_MAX);
        for (size_t b = 0; b < blocks.size(); ++b)
            for (const auto& v : blocks[b])
                out[var_index(v)] = b;
        return out;
    }

    void validate(const FunctionTable& fns = FunctionTable::builtins()) const {
        if (vars.empty()) throw ConfigError("configuration has no variables");
        std::set<std::string> seen;
        for (const auto& v : vars)
            if (!seen.insert(v).second)
                throw ConfigError("duplicate variable: " + v);

        if (blocks.empty()) throw ConfigError("configuration has no blocks");
        std::set<std::string> in_blocks;
        for (const auto& blk : blocks) {
            if (blk.empty()) throw ConfigError("empty block");
            for (const auto& v : blk) {
                if (!seen.count(v)) throw ConfigError("block mentions unknown variable: " + v);
                if (!in_blocks.insert(v).second)
                    throw ConfigError("variable in two blocks: " + v);
            }
        }
        if (in_blocks.size() != vars.size())
            throw ConfigError("blocks do not cover all variables");

        if (ramsey) {
            const auto& [x, y] = *ramsey;
            if (x == y) throw ConfigError("ramsey pair must name two distinct variables");
            const auto& b1 = blocks.front();
            auto px = std::find(b1.begin(), b1.end(), x);
            auto py = std::find(b1.begin(), b1.end(), y);
            if (px == b1.end() || py == b1.end())
                throw ConfigError("ramsey pair must lie in the first block");
            if (px >= py)
                throw ConfigError("ramsey pair must be listed in order inside the first block");
        }

        std::set<std::string> formula_vars;
        formula.collect_vars(formula_vars);
        for (const auto& v : formula_vars)
            if (!seen.count(v))
                throw ConfigError("formula mentions unknown variable: " + v);

        std::set<std::string> used_fns;
        formula.collect_functions(used_fns);
        for (const auto& f : used_fns)
            if (!fns.has(f))
                throw ConfigError("formula uses unregistered function symbol: " + f);
    }

    std::string to_text() const {
        std::string s = "config { vars";
        for (const auto& v : vars) s += " " + v;
        s += "; blocks";
        for (const auto& blk : blocks) {
            s += " (";
            for (size_t i = 0; i < blk.size(); ++i) {
                if (i) s += " ";
                s += blk[i];
            }
            s += ")";
        }
        s += ";";
        if (ramsey) s += " ramsey (" + ramsey->first + ", " + ramsey->second + ");";
        s += " formula " + formula.to_string() + "; }";
        return s;
    }
};

/// A satisfying assignment plus the color of each block. Values are indexed
/// by the configuration's var order and are always >= 1.
struct Witness {
    std::vector<uint64_t> values;
    std::vector<uint32_t> block_colors;
};

inline bool atom_holds(const Atom& a, const std::function<std::optional<BigInt>(const std::string&)>& lookup,
                       const FunctionTable& fns) {
    BigInt l = eval(a.lhs, lookup, fns);
    BigInt r = eval(a.rhs, lookup, fns);
    switch (a.cmp) {
    case Atom::Cmp::Eq: return l == r;
    case Atom::Cmp::Neq: return l != r;
    case Atom::Cmp::Lt: return l < r;
    }
    return false;
}

inline bool formula_holds(const Formula& f,
                          const std::function<std::optional<BigInt>(const std::string&)>& lookup,
                          const FunctionTable& fns) {
    switch (f.kind()) {
    case Formula::Kind::Leaf:
        return atom_holds(f.atom(), lookup, fns);
    case Formula::Kind::And:
        for (const auto& k : f.children())
            if (!formula_holds(k, lookup, fns)) return false;
        return true;
    case Formula::Kind::Or:
        for (const auto& k : f.children())
            if (formula_holds(k, lookup, fns)) return true;
        return false;
    }
    return false;
}

/// Does the witness's assignment satisfy the formula? Block colors are not
/// checked here; color checking belongs to the search layer.
inline bool holds(const Configuration& c, const Witness& w,
                  const FunctionTable& fns = FunctionTable::builtins()) {
    if (w.values.size() != c.vars.size())
        throw ConfigError("witness does not cover all variables");
    auto lookup = [&](const std::string& n) -> std::optional<BigInt> {
        for (size_t i = 0; i < c.vars.size(); ++i)
            if (c.vars[i] == n) return BigInt(w.values[i]);
        return std::nullopt;
    };
    return formula_holds(c.formula, lookup, fns);
}

} // namespace rampr
