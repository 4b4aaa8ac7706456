#pragma once

#include <string>
#include <vector>

#include "rampr/expr.hpp"

namespace rampr {

/// Dense univariate integer polynomial; c[i] is the coefficient of X^i.
/// Normalized so the top coefficient is nonzero (zero polynomial is empty).
struct IntPoly {
    std::vector<BigInt> c;

    static IntPoly zero() { return {}; }
    static IntPoly constant(BigInt v) {
        IntPoly p;
        p.c.push_back(std::move(v));
        p.normalize();
        return p;
    }
    static IntPoly x() {
        IntPoly p;
        p.c = {BigInt(0), BigInt(1)};
        return p;
    }

    bool is_zero() const { return c.empty(); }
    long degree() const { return static_cast<long>(c.size()) - 1; }
    const BigInt& leading() const {
        if (c.empty()) throw std::domain_error("leading coefficient of zero polynomial");
        return c.back();
    }
    BigInt coeff(size_t i) const { return i < c.size() ? c[i] : BigInt(); }

    void normalize() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        IntPoly out;
        out.c.resize(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < out.c.size(); ++i)
            out.c[i] = a.coeff(i) + b.coeff(i);
        out.normalize();
        return out;
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        IntPoly out;
        out.c.resize(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < out.c.size(); ++i)
            out.c[i] = a.coeff(i) - b.coeff(i);
        out.normalize();
        return out;
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        IntPoly out;
        out.c.assign(a.c.size() + b.c.size() - 1, BigInt());
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j)
                out.c[i + j] += a.c[i] * b.c[j];
        out.normalize();
        return out;
    }
    IntPoly operator-() const {
        IntPoly out = *this;
        for (auto& v : out.c) v = -v;
        return out;
    }
    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c == b.c; }

    IntPoly scaled(const BigInt& k) const {
        IntPoly out = *this;
        for (auto& v : out.c) v = v * k;
        out.normalize();
        return out;
    }

    BigInt eval(const BigInt& at) const {
        BigInt acc;
        for (size_t i = c.size(); i-- > 0;)
            acc = acc * at + c[i];
        return acc;
    }

    IntPoly pow(uint64_t e) const {
        IntPoly out = constant(BigInt(1));
        IntPoly base = *this;
        while (e) {
            if (e & 1) out = out * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return out;
    }

    std::string to_string(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = c.size(); i-- > 0;) {
            if (c[i].is_zero()) continue;
            if (!s.empty()) s += c[i].is_negative() ? " - " : " + ";
            else if (c[i].is_negative()) s += "-";
            BigInt mag = c[i].is_negative() ? -c[i] : c[i];
            if (i == 0) {
                s += mag.to_string();
            } else {
                if (!(mag == BigInt(1))) s += mag.to_string() + "*";
                s += var;
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }
};

/// Interpret an expression as a polynomial in a single named variable.
/// Throws EvalError when the expression is not polynomial in that variable.
inline IntPoly poly_from_expr(const Expr& e, const std::string& var) {
    switch (e.kind()) {
    case Expr::Kind::Const:
        return IntPoly::constant(e.value());
    case Expr::Kind::Var:
        if (e.name() != var)
            throw EvalError("polynomial conversion: unexpected variable " + e.name());
        return IntPoly::x();
    case Expr::Kind::Add:
        return poly_from_expr(e.lhs(), var) + poly_from_expr(e.rhs(), var);
    case Expr::Kind::Sub:
        return poly_from_expr(e.lhs(), var) - poly_from_expr(e.rhs(), var);
    case Expr::Kind::Mul:
        return poly_from_expr(e.lhs(), var) * poly_from_expr(e.rhs(), var);
    case Expr::Kind::Pow: {
        std::set<std::string> rhs_vars;
        e.rhs().collect_vars(rhs_vars);
        if (!rhs_vars.empty()) throw EvalError("polynomial conversion: variable exponent");
        BigInt exp = eval(e.rhs(), std::map<std::string, BigInt>{});
        if (exp.is_negative()) throw EvalError("polynomial conversion: negative exponent");
        return poly_from_expr(e.lhs(), var).pow(exp.to_u64());
    }
    case Expr::Kind::Apply:
        throw EvalError("polynomial conversion: function symbol " + e.name());
    }
    throw EvalError("corrupt expression node");
}

/// Dense bivariate integer polynomial: cx[i] is the Z[y]-coefficient of x^i.
struct BiPoly {
    std::vector<IntPoly> cx;

    bool is_zero() const {
        for (const auto& p : cx)
            if (!p.is_zero()) return false;
        return true;
    }

    void normalize() {
        while (!cx.empty() && cx.back().is_zero()) cx.pop_back();
    }

    IntPoly coeff(size_t i) const { return i < cx.size() ? cx[i] : IntPoly::zero(); }

    friend BiPoly operator+(const BiPoly& a, const BiPoly& b) {
        BiPoly out;
        out.cx.resize(std::max(a.cx.size(), b.cx.size()));
        for (size_t i = 0; i < out.cx.size(); ++i)
            out.cx[i] = a.coeff(i) + b.coeff(i);
        out.normalize();
        return out;
    }
    friend BiPoly operator-(const BiPoly& a, const BiPoly& b) {
        BiPoly out;
        out.cx.resize(std::max(a.cx.size(), b.cx.size()));
        for (size_t i = 0; i < out.cx.size(); ++i)
            out.cx[i] = a.coeff(i) - b.coeff(i);
        out.normalize();
        return out;
    }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
        BiPoly out;
        if (a.cx.empty() || b.cx.empty()) return out;
        out.cx.assign(a.cx.size() + b.cx.size() - 1, IntPoly::zero());
        for (size_t i = 0; i < a.cx.size(); ++i)
            for (size_t j = 0; j < b.cx.size(); ++j)
                out.cx[i + j] = out.cx[i + j] + a.cx[i] * b.cx[j];
        out.normalize();
        return out;
    }

    BiPoly pow(uint64_t e) const {
        BiPoly out;
        out.cx = {IntPoly::constant(BigInt(1))};
        BiPoly base = *this;
        while (e) {
            if (e & 1) out = out * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return out;
    }

    /// Remainder of division by (x - y), by Horner in x over Z[y]. The
    /// remainder equals the diagonal substitution P(y, y); it vanishes
    /// exactly when (x - y) divides P.
    IntPoly rem_x_minus_y() const {
        IntPoly acc = IntPoly::zero();
        for (size_t i = cx.size(); i-- > 0;)
            acc = acc * IntPoly::x() + cx[i];
        return acc;
    }
};

inline BiPoly bipoly_from_expr(const Expr& e, const std::string& vx, const std::string& vy) {
    switch (e.kind()) {
    case Expr::Kind::Const: {
        BiPoly out;
        out.cx = {IntPoly::constant(e.value())};
        out.normalize();
        return out;
    }
    case Expr::Kind::Var: {
        BiPoly out;
        if (e.name() == vx) {
            out.cx = {IntPoly::zero(), IntPoly::constant(BigInt(1))};
        } else if (e.name() == vy) {
            out.cx = {IntPoly::x()};
        } else {
            throw EvalError("polynomial conversion: unexpected variable " + e.name());
        }
        return out;
    }
    case Expr::Kind::Add:
        return bipoly_from_expr(e.lhs(), vx, vy) + bipoly_from_expr(e.rhs(), vx, vy);
    case Expr::Kind::Sub:
        return bipoly_from_expr(e.lhs(), vx, vy) - bipoly_from_expr(e.rhs(), vx, vy);
    case Expr::Kind::Mul:
        return bipoly_from_expr(e.lhs(), vx, vy) * bipoly_from_expr(e.rhs(), vx, vy);
    case Expr::Kind::Pow: {
        std::set<std::string> rhs_vars;
        e.rhs().collect_vars(rhs_vars);
        if (!rhs_vars.empty()) throw EvalError("polynomial conversion: variable exponent");
        BigInt exp = eval(e.rhs(), std::map<std::string, BigInt>{});
        if (exp.is_negative()) throw EvalError("polynomial conversion: negative exponent");
        return bipoly_from_expr(e.lhs(), vx, vy).pow(exp.to_u64());
    }
    case Expr::Kind::Apply:
        throw EvalError("polynomial conversion: function symbol " + e.name());
    }
    throw EvalError("corrupt expression node");
}

} // namespace rampr
