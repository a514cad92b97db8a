#pragma once

// Expression grammar shared by field elements, CDVF elements and symbol sums.
//
//   sum    := sym ('+' sym)* | '0'
//   sym    := 'sym' '(' expr ',' expr ')'
//   expr   := ['-'] term (('+' | '-') term)*
//   term   := power (('*' | '/')? power)*        juxtaposition multiplies
//   power  := atom ('^' ['-'] integer)?
//   atom   := integer | identifier | '(' expr ')'
//
// Identifiers name field variables; `pi` is the uniformizer in CDVF input.

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "pdim/ratfunc.hpp"

namespace pdim {

struct Expr {
    enum class Kind { Integer, Name, Add, Sub, Mul, Div, Neg, Pow };
    Kind kind = Kind::Integer;
    std::int64_t value = 0;  // integer literal or exponent
    std::string name;
    std::vector<Expr> args;
    std::size_t line = 1, column = 1;
};

namespace detail {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    Expr parse_expr_only() {
        Expr e = expr();
        expect_end();
        return e;
    }

    std::vector<std::pair<Expr, Expr>> parse_sum_only() {
        std::vector<std::pair<Expr, Expr>> out;
        skip_ws();
        if (peek() == '0') {
            ++i_;
            expect_end();
            return out;
        }
        out.push_back(sym());
        while (accept('+')) out.push_back(sym());
        expect_end();
        return out;
    }

private:
    std::string_view s_;
    std::size_t i_ = 0;

    std::pair<std::size_t, std::size_t> position() const {
        std::size_t line = 1, col = 1;
        for (std::size_t k = 0; k < i_ && k < s_.size(); ++k) {
            if (s_[k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }

    [[noreturn]] void fail(const std::string& what) const {
        const auto [line, col] = position();
        throw ParseError(what, line, col);
    }

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++i_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    void expect_end() {
        if (peek() != '\0') fail(std::string("unexpected '") + s_[i_] + "'");
    }

    Expr node(Expr::Kind k) const {
        Expr e;
        e.kind = k;
        std::tie(e.line, e.column) = position();
        return e;
    }

    static Expr binary(Expr::Kind k, Expr a, Expr b) {
        Expr e;
        e.kind = k;
        e.line = a.line;
        e.column = a.column;
        e.args.push_back(std::move(a));
        e.args.push_back(std::move(b));
        return e;
    }

    std::pair<Expr, Expr> sym() {
        skip_ws();
        if (s_.substr(i_, 3) != "sym") fail("expected 'sym('");
        i_ += 3;
        expect('(');
        Expr a = expr();
        expect(',');
        Expr b = expr();
        expect(')');
        return {std::move(a), std::move(b)};
    }

    Expr expr() {
        Expr acc;
        if (peek() == '-') {
            Expr n = node(Expr::Kind::Neg);
            ++i_;
            n.args.push_back(term());
            acc = std::move(n);
        } else {
            acc = term();
        }
        for (;;) {
            const char c = peek();
            if (c == '+') {
                ++i_;
                acc = binary(Expr::Kind::Add, std::move(acc), term());
            } else if (c == '-') {
                ++i_;
                acc = binary(Expr::Kind::Sub, std::move(acc), term());
            } else {
                return acc;
            }
        }
    }

    bool starts_atom() {
        const char c = peek();
        return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    Expr term() {
        Expr acc = power();
        for (;;) {
            if (accept('*')) {
                acc = binary(Expr::Kind::Mul, std::move(acc), power());
            } else if (accept('/')) {
                acc = binary(Expr::Kind::Div, std::move(acc), power());
            } else if (starts_atom()) {
                acc = binary(Expr::Kind::Mul, std::move(acc), power());
            } else {
                return acc;
            }
        }
    }

    std::int64_t integer() {
        skip_ws();
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_]))) fail("expected integer");
        std::int64_t v = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            v = checked_add(checked_mul(v, 10), s_[i_] - '0');
            ++i_;
        }
        return v;
    }

    std::int64_t checked_add(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_add_overflow(a, b, &r)) fail("integer literal too large");
        return r;
    }
    std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
        std::int64_t r;
        if (__builtin_mul_overflow(a, b, &r)) fail("integer literal too large");
        return r;
    }

    Expr power() {
        Expr base = atom();
        if (!accept('^')) return base;
        Expr e = node(Expr::Kind::Pow);
        const bool neg = accept('-');
        std::int64_t k = integer();
        e.value = neg ? -k : k;
        e.line = base.line;
        e.column = base.column;
        e.args.push_back(std::move(base));
        return e;
    }

    Expr atom() {
        const char c = peek();
        if (c == '(') {
            ++i_;
            Expr e = expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Expr e = node(Expr::Kind::Integer);
            e.value = integer();
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            Expr e = node(Expr::Kind::Name);
            while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                e.name += s_[i_++];
            return e;
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected '") + c + "'");
    }
};

}  // namespace detail

inline Expr parse_expr(std::string_view text) { return detail::Parser(text).parse_expr_only(); }

inline std::vector<std::pair<Expr, Expr>> parse_symbol_list(std::string_view text) {
    return detail::Parser(text).parse_sum_only();
}

/// Evaluates an expression tree bottom-up. `leaf_int` and `leaf_name` build
/// leaves; the value type must support + - * / unary- and pow(int).
template <class V, class IntLeaf, class NameLeaf>
V evaluate(const Expr& e, const IntLeaf& leaf_int, const NameLeaf& leaf_name) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::Integer: return leaf_int(e);
        case K::Name: return leaf_name(e);
        case K::Neg: return -evaluate<V>(e.args[0], leaf_int, leaf_name);
        case K::Pow: return evaluate<V>(e.args[0], leaf_int, leaf_name).pow(e.value);
        default: break;
    }
    V a = evaluate<V>(e.args[0], leaf_int, leaf_name);
    V b = evaluate<V>(e.args[1], leaf_int, leaf_name);
    switch (e.kind) {
        case K::Add: return a + b;
        case K::Sub: return a - b;
        case K::Mul: return a * b;
        case K::Div:
            if (b.is_zero()) throw ParseError("division by zero", e.args[1].line, e.args[1].column);
            return a / b;
        default: throw Error("bad expression node");
    }
}

inline RatFunc to_ratfunc(const Expr& e, const FieldDescriptor& field) {
    const std::size_t n = field.num_vars();
    return evaluate<RatFunc>(
        e, [&](const Expr& x) { return RatFunc::constant(field.p, n, x.value); },
        [&](const Expr& x) {
            for (std::size_t j = 0; j < n; ++j)
                if (field.var_names[j] == x.name) return RatFunc::variable(field, j);
            throw ParseError("unknown variable '" + x.name + "'", x.line, x.column);
        });
}

inline RatFunc parse_ratfunc(std::string_view text, const FieldDescriptor& field) {
    return to_ratfunc(parse_expr(text), field);
}

}  // namespace pdim
