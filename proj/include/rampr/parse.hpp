#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "rampr/config.hpp"

namespace rampr {

struct ParseError : std::runtime_error {
    int line, col;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " at line " + std::to_string(line_) + ", column " +
                             std::to_string(col_)),
          line(line_), col(col_) {}
};

namespace detail {

struct Token {
    enum class Type { Ident, Number, Symbol, End };
    Type type = Type::End;
    std::string text;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { next(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token prev = tok_;
        skip_space();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        if (pos_ >= src_.size()) {
            tok_.type = Token::Type::End;
            return prev;
        }
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            tok_.type = Token::Type::Ident;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                tok_.text += advance();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            tok_.type = Token::Type::Number;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                tok_.text += advance();
        } else {
            tok_.type = Token::Type::Symbol;
            tok_.text += advance();
            if (tok_.text == "!" && pos_ < src_.size() && src_[pos_] == '=')
                tok_.text += advance();
        }
        return prev;
    }

    struct State { size_t pos; int line, col; Token tok; };
    State save() const { return {pos_, line_, col_, tok_}; }
    void restore(const State& s) { pos_ = s.pos; line_ = s.line; col_ = s.col; tok_ = s.tok; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, tok_.line, tok_.col);
    }

private:
    char advance() {
        char c = src_[pos_++];
        if (c == '\n') { ++line_; col_ = 1; } else { ++col_; }
        return c;
    }
    void skip_space() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') { // comment to end of line
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    Configuration parse_config() {
        expect_ident("config");
        expect_symbol("{");
        Configuration c;
        bool have_formula = false;
        while (!at_symbol("}")) {
            if (lex_.peek().type != Token::Type::Ident)
                lex_.fail("expected a section keyword (vars/blocks/ramsey/formula)");
            std::string kw = lex_.peek().text;
            lex_.next();
            if (kw == "vars") {
                while (lex_.peek().type == Token::Type::Ident)
                    c.vars.push_back(lex_.next().text);
            } else if (kw == "blocks") {
                while (at_symbol("(")) {
                    lex_.next();
                    std::vector<std::string> blk;
                    while (lex_.peek().type == Token::Type::Ident)
                        blk.push_back(lex_.next().text);
                    expect_symbol(")");
                    c.blocks.push_back(std::move(blk));
                }
            } else if (kw == "ramsey") {
                expect_symbol("(");
                std::string x = expect_any_ident();
                expect_symbol(",");
                std::string y = expect_any_ident();
                expect_symbol(")");
                c.ramsey = {x, y};
            } else if (kw == "formula") {
                c.formula = parse_formula();
                have_formula = true;
            } else {
                lex_.fail("unknown section '" + kw + "'");
            }
            if (!at_symbol("}")) expect_symbol(";"); // final semicolon optional
        }
        expect_symbol("}");
        if (!have_formula) lex_.fail("configuration has no formula");
        return c;
    }

    Formula parse_formula() {
        std::vector<Formula> disjuncts{parse_conj()};
        while (at_symbol("|")) {
            lex_.next();
            disjuncts.push_back(parse_conj());
        }
        if (disjuncts.size() == 1) return disjuncts.front();
        return Formula::disj(std::move(disjuncts));
    }

    Expr parse_expr() { return parse_sum(); }

    void expect_end() {
        if (lex_.peek().type != Token::Type::End) lex_.fail("trailing input");
    }

private:
    Formula parse_conj() {
        std::vector<Formula> conjuncts{parse_atom()};
        while (at_symbol("&")) {
            lex_.next();
            conjuncts.push_back(parse_atom());
        }
        if (conjuncts.size() == 1) return conjuncts.front();
        return Formula::conj(std::move(conjuncts));
    }

    Formula parse_atom() {
        // Either a comparison between expressions or a parenthesized formula.
        // "(" is ambiguous, so try the comparison first and backtrack.
        auto mark = lex_.save();
        try {
            Atom a;
            a.lhs = parse_expr();
            a.cmp = parse_cmp();
            a.rhs = parse_expr();
            return Formula::leaf(std::move(a));
        } catch (const ParseError&) {
            lex_.restore(mark);
        }
        expect_symbol("(");
        Formula inner = parse_formula();
        expect_symbol(")");
        return inner;
    }

    Atom::Cmp parse_cmp() {
        if (at_symbol("=")) { lex_.next(); return Atom::Cmp::Eq; }
        if (at_symbol("!=")) { lex_.next(); return Atom::Cmp::Neq; }
        if (at_symbol("<")) { lex_.next(); return Atom::Cmp::Lt; }
        lex_.fail("expected a comparison (=, !=, <)");
    }

    Expr parse_sum() {
        Expr e = parse_prod();
        while (at_symbol("+") || at_symbol("-")) {
            bool plus = lex_.peek().text == "+";
            lex_.next();
            Expr r = parse_prod();
            e = plus ? Expr::add(e, r) : Expr::sub(e, r);
        }
        return e;
    }

    Expr parse_prod() {
        Expr e = parse_unary();
        while (at_symbol("*")) {
            lex_.next();
            e = Expr::mul(e, parse_unary());
        }
        return e;
    }

    Expr parse_unary() {
        if (at_symbol("-")) {
            lex_.next();
            return Expr::sub(Expr::constant(0LL), parse_unary());
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_primary();
        if (at_symbol("^")) {
            lex_.next();
            return Expr::pow(base, parse_unary());
        }
        return base;
    }

    Expr parse_primary() {
        const Token& t = lex_.peek();
        if (t.type == Token::Type::Number) {
            return Expr::constant(BigInt::from_decimal(lex_.next().text));
        }
        if (t.type == Token::Type::Ident) {
            std::string name = lex_.next().text;
            if (at_symbol("(")) {
                lex_.next();
                Expr arg = parse_expr();
                expect_symbol(")");
                return Expr::apply(name, arg);
            }
            return Expr::var(name);
        }
        if (at_symbol("(")) {
            lex_.next();
            Expr e = parse_expr();
            expect_symbol(")");
            return e;
        }
        lex_.fail("expected a number, variable, function call or '('");
    }

    bool at_symbol(const std::string& s) const {
        return lex_.peek().type == Token::Type::Symbol && lex_.peek().text == s;
    }
    void expect_symbol(const std::string& s) {
        if (!at_symbol(s)) lex_.fail("expected '" + s + "'");
        lex_.next();
    }
    void expect_ident(const std::string& s) {
        if (lex_.peek().type != Token::Type::Ident || lex_.peek().text != s)
            lex_.fail("expected '" + s + "'");
        lex_.next();
    }
    std::string expect_any_ident() {
        if (lex_.peek().type != Token::Type::Ident) lex_.fail("expected an identifier");
        return lex_.next().text;
    }

    Lexer lex_;
};

} // namespace detail

/// Parse the textual configuration grammar:
///   config { vars x y z; blocks (x y z); ramsey (x, y); formula x+y=z & x!=y; }
inline Configuration parse_config(std::string_view text,
                                  const FunctionTable& fns = FunctionTable::builtins()) {
    detail::Parser p(text);
    Configuration c = p.parse_config();
    p.expect_end();
    c.validate(fns);
    return c;
}

inline Expr parse_expr(std::string_view text) {
    detail::Parser p(text);
    Expr e = p.parse_expr();
    p.expect_end();
    return e;
}

inline Formula parse_formula(std::string_view text) {
    detail::Parser p(text);
    Formula f = p.parse_formula();
    p.expect_end();
    return f;
}

} // namespace rampr
