#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "rampr/bigint.hpp"

namespace rampr {

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Named total unary maps that may appear in formulas, e.g. exp2(y) = 2^y.
/// The registry travels with run configurations so reports stay
/// self-describing.
class FunctionTable {
public:
    void add(std::string name, std::function<BigInt(const BigInt&)> fn) {
        fns_[std::move(name)] = std::move(fn);
    }

    bool has(const std::string& name) const { return fns_.count(name) != 0; }

    BigInt apply(const std::string& name, const BigInt& arg) const {
        auto it = fns_.find(name);
        if (it == fns_.end())
            throw EvalError("unknown function symbol: " + name);
        return it->second(arg);
    }

    std::vector<std::string> names() const {
        std::vector<std::string> out;
        for (const auto& [k, v] : fns_) out.push_back(k);
        return out;
    }

    static const FunctionTable& builtins() {
        static const FunctionTable table = [] {
            FunctionTable t;
            t.add("exp2", [](const BigInt& n) {
                if (n.is_negative()) throw EvalError("exp2: negative argument");
                return BigInt::pow(BigInt(2), n.to_u64());
            });
            t.add("sq", [](const BigInt& n) { return n * n; });
            return t;
        }();
        return table;
    }

private:
    std::map<std::string, std::function<BigInt(const BigInt&)>> fns_;
};

/// Immutable integer expression tree: constants, variables, +, -, *, ^ and
/// registered unary function symbols.
class Expr {
public:
    enum class Kind { Const, Var, Add, Sub, Mul, Pow, Apply };

    Expr() : Expr(constant(BigInt())) {}

    static Expr constant(BigInt v) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Const;
        n->value = std::move(v);
        return Expr(std::move(n));
    }
    static Expr constant(long long v) { return constant(BigInt(v)); }

    static Expr var(std::string name) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Var;
        n->name = std::move(name);
        return Expr(std::move(n));
    }

    static Expr add(Expr a, Expr b) { return binary(Kind::Add, std::move(a), std::move(b)); }
    static Expr sub(Expr a, Expr b) { return binary(Kind::Sub, std::move(a), std::move(b)); }
    static Expr mul(Expr a, Expr b) { return binary(Kind::Mul, std::move(a), std::move(b)); }
    static Expr pow(Expr base, Expr exp) { return binary(Kind::Pow, std::move(base), std::move(exp)); }

    static Expr apply(std::string fn, Expr arg) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Apply;
        n->name = std::move(fn);
        n->a = arg.node_;
        return Expr(std::move(n));
    }

    Kind kind() const { return node_->kind; }
    const BigInt& value() const { return node_->value; }
    const std::string& name() const { return node_->name; }
    Expr lhs() const { return Expr(node_->a); }
    Expr rhs() const { return Expr(node_->b); }

    void collect_vars(std::set<std::string>& out) const {
        switch (node_->kind) {
        case Kind::Const: return;
        case Kind::Var: out.insert(node_->name); return;
        case Kind::Apply: lhs().collect_vars(out); return;
        default:
            lhs().collect_vars(out);
            rhs().collect_vars(out);
        }
    }

    void collect_functions(std::set<std::string>& out) const {
        switch (node_->kind) {
        case Kind::Const:
        case Kind::Var: return;
        case Kind::Apply:
            out.insert(node_->name);
            lhs().collect_functions(out);
            return;
        default:
            lhs().collect_functions(out);
            rhs().collect_functions(out);
        }
    }

    /// Canonical, reparsable rendering.
    std::string to_string() const { return render(0); }

private:
    struct Node {
        Kind kind;
        BigInt value;
        std::string name;
        std::shared_ptr<const Node> a, b;
    };

    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static Expr binary(Kind k, Expr a, Expr b) {
        auto n = std::make_shared<Node>();
        n->kind = k;
        n->a = a.node_;
        n->b = b.node_;
        return Expr(std::move(n));
    }

    // precedence: add/sub 1, mul 2, pow 3, atoms 4
    std::string render(int parent) const {
        auto wrap = [&](int level, std::string s) {
            return level < parent ? "(" + s + ")" : s;
        };
        switch (node_->kind) {
        case Kind::Const:
            return node_->value.is_negative() ? "(" + node_->value.to_string() + ")"
                                              : node_->value.to_string();
        case Kind::Var:
            return node_->name;
        case Kind::Add:
            return wrap(1, lhs().render(1) + " + " + rhs().render(2));
        case Kind::Sub:
            return wrap(1, lhs().render(1) + " - " + rhs().render(2));
        case Kind::Mul:
            return wrap(2, lhs().render(2) + "*" + rhs().render(3));
        case Kind::Pow:
            return wrap(3, lhs().render(4) + "^" + rhs().render(3));
        case Kind::Apply:
            return node_->name + "(" + lhs().render(0) + ")";
        }
        return {};
    }

    std::shared_ptr<const Node> node_;
};

/// Exact evaluation. Pow requires a nonnegative exponent; Sub is free, so
/// intermediate values may be negative.
inline BigInt eval(const Expr& e,
                   const std::function<std::optional<BigInt>(const std::string&)>& lookup,
                   const FunctionTable& fns = FunctionTable::builtins()) {
    switch (e.kind()) {
    case Expr::Kind::Const:
        return e.value();
    case Expr::Kind::Var: {
        auto v = lookup(e.name());
        if (!v) throw EvalError("unbound variable: " + e.name());
        return *v;
    }
    case Expr::Kind::Add:
        return eval(e.lhs(), lookup, fns) + eval(e.rhs(), lookup, fns);
    case Expr::Kind::Sub:
        return eval(e.lhs(), lookup, fns) - eval(e.rhs(), lookup, fns);
    case Expr::Kind::Mul:
        return eval(e.lhs(), lookup, fns) * eval(e.rhs(), lookup, fns);
    case Expr::Kind::Pow: {
        BigInt base = eval(e.lhs(), lookup, fns);
        BigInt exp = eval(e.rhs(), lookup, fns);
        if (exp.is_negative()) throw EvalError("negative exponent");
        return BigInt::pow(base, exp.to_u64());
    }
    case Expr::Kind::Apply:
        return fns.apply(e.name(), eval(e.lhs(), lookup, fns));
    }
    throw EvalError("corrupt expression node");
}

inline BigInt eval(const Expr& e, const std::map<std::string, BigInt>& assignment,
                   const FunctionTable& fns = FunctionTable::builtins()) {
    return eval(
        e,
        [&](const std::string& n) -> std::optional<BigInt> {
            auto it = assignment.find(n);
            if (it == assignment.end()) return std::nullopt;
            return it->second;
        },
        fns);
}

} // namespace rampr
