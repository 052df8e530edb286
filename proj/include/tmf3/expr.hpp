#pragma once

// Expression language of the command line: a small arithmetic grammar over
// rationals, a1, a3, c4, c6, Delta and q, with the maps fstar, qstar, hstar,
// tstar, delta and the truncation O(q^N).
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' unary)?          right associative
//   atom    := INT | INT/INT | IDENT | CALL '(' expr ')' | '(' expr ')'

#include "tmf3/levelmaps.hpp"
#include "tmf3/qexp.hpp"

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace tmf3 {

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) +
                             ": " + message),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_, column_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Kind { Number, Ident, Neg, Add, Sub, Mul, Div, Pow, Call };
    Kind kind = Kind::Number;
    Rational value;    // Number
    std::string name;  // Ident, Call
    std::vector<ExprPtr> args;

    friend bool operator==(const Expr& a, const Expr& b) {
        if (a.kind != b.kind || a.value != b.value || a.name != b.name || a.args.size() != b.args.size()) return false;
        for (std::size_t i = 0; i < a.args.size(); ++i)
            if (!(*a.args[i] == *b.args[i])) return false;
        return true;
    }
};

inline const std::vector<std::string>& known_identifiers() {
    static const std::vector<std::string> v{"a1", "a3", "c4", "c6", "Delta", "q"};
    return v;
}

inline const std::vector<std::string>& known_functions() {
    static const std::vector<std::string> v{"fstar", "qstar", "hstar", "tstar", "delta", "O"};
    return v;
}

namespace detail {

struct Token {
    enum class Type { Number, Ident, Op, LParen, RParen, End };
    Type type = Type::End;
    std::string text;
    Rational value;
    int line = 1, column = 1;
};

inline bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

inline std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto is_digit = [&](std::size_t k) { return k < text.size() && std::isdigit(static_cast<unsigned char>(text[k])); };
    auto is_alpha = [&](std::size_t k) {
        return k < text.size() && (std::isalnum(static_cast<unsigned char>(text[k])) || text[k] == '_');
    };
    auto advance = [&](std::size_t n) {
        i += n;
        col += static_cast<int>(n);
    };
    while (i < text.size()) {
        const char ch = text[i];
        if (ch == '\n') {
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(ch))) {
            advance(1);
            continue;
        }
        Token tok;
        tok.line = line;
        tok.column = col;
        if (is_digit(i)) {
            std::size_t j = i;
            while (is_digit(j)) ++j;
            std::size_t end = j;
            // INT/INT with no spaces is one rational literal
            if (j + 1 < text.size() && text[j] == '/' && is_digit(j + 1)) {
                end = j + 1;
                while (is_digit(end)) ++end;
            }
            if (is_alpha(end)) throw ParseError(line, col + static_cast<int>(end - i), "malformed number literal");
            tok.type = Token::Type::Number;
            tok.text = text.substr(i, end - i);
            if (end > j) {
                BigInt den(text.substr(j + 1, end - j - 1), 10);
                if (den == 0) throw ParseError(line, col, "malformed rational literal " + tok.text + " (zero denominator)");
                tok.value = make_rational(BigInt(text.substr(i, j - i), 10), den);
            } else {
                tok.value = make_rational(BigInt(tok.text, 10));
            }
            advance(end - i);
        } else if (std::isalpha(static_cast<unsigned char>(ch))) {
            std::size_t j = i;
            while (is_alpha(j)) ++j;
            tok.type = Token::Type::Ident;
            tok.text = text.substr(i, j - i);
            advance(j - i);
        } else if (ch == '+' || ch == '-' || ch == '*' || ch == '/' || ch == '^') {
            tok.type = Token::Type::Op;
            tok.text = std::string(1, ch);
            advance(1);
        } else if (ch == '(' || ch == ')') {
            tok.type = ch == '(' ? Token::Type::LParen : Token::Type::RParen;
            tok.text = std::string(1, ch);
            advance(1);
        } else {
            throw ParseError(line, col, std::string("unexpected character '") + ch + "'");
        }
        out.push_back(std::move(tok));
    }
    Token end;
    end.line = line;
    end.column = col;
    out.push_back(end);
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    ExprPtr parse_all() {
        ExprPtr e = expr();
        if (peek().type == Token::Type::RParen) fail(peek(), "unbalanced ')'");
        if (peek().type != Token::Type::End) fail(peek(), "unexpected '" + peek().text + "'");
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }
    bool at_op(char c) const { return peek().type == Token::Type::Op && peek().text[0] == c; }
    [[noreturn]] static void fail(const Token& t, const std::string& msg) { throw ParseError(t.line, t.column, msg); }

    static ExprPtr node(Expr::Kind k, std::vector<ExprPtr> args, std::string name = {}) {
        auto e = std::make_shared<Expr>();
        e->kind = k;
        e->args = std::move(args);
        e->name = std::move(name);
        return e;
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        while (at_op('+') || at_op('-')) {
            auto k = take().text == "+" ? Expr::Kind::Add : Expr::Kind::Sub;
            lhs = node(k, {lhs, term()});
        }
        return lhs;
    }
    ExprPtr term() {
        ExprPtr lhs = unary();
        while (at_op('*') || at_op('/')) {
            auto k = take().text == "*" ? Expr::Kind::Mul : Expr::Kind::Div;
            lhs = node(k, {lhs, unary()});
        }
        return lhs;
    }
    ExprPtr unary() {
        if (at_op('-')) {
            take();
            return node(Expr::Kind::Neg, {unary()});
        }
        return power();
    }
    ExprPtr power() {
        ExprPtr base = atom();
        if (at_op('^')) {
            take();
            return node(Expr::Kind::Pow, {base, unary()});
        }
        return base;
    }
    ExprPtr atom() {
        const Token& t = peek();
        switch (t.type) {
            case Token::Type::Number: {
                take();
                auto e = std::make_shared<Expr>();
                e->value = t.value;
                return e;
            }
            case Token::Type::Ident: {
                take();
                if (contains(known_functions(), t.text)) {
                    if (peek().type != Token::Type::LParen) fail(peek(), "expected '(' after " + t.text);
                    const Token& open = take();
                    ExprPtr arg = expr();
                    if (peek().type != Token::Type::RParen) fail(open, "unbalanced '('");
                    take();
                    return node(Expr::Kind::Call, {arg}, t.text);
                }
                if (!contains(known_identifiers(), t.text)) fail(t, "unknown identifier '" + t.text + "'");
                return node(Expr::Kind::Ident, {}, t.text);
            }
            case Token::Type::LParen: {
                const Token& open = take();
                ExprPtr inner = expr();
                if (peek().type != Token::Type::RParen) fail(open, "unbalanced '('");
                take();
                return inner;
            }
            case Token::Type::RParen:
                fail(t, "unbalanced ')'");
            case Token::Type::Op:
                fail(t, "unexpected operator '" + t.text + "'");
            case Token::Type::End:
                break;
        }
        fail(t, "unexpected end of input");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse(const std::string& text) { return detail::Parser(text).parse_all(); }

/// Fully parenthesized rendering; parse(print(e)) == e.
inline std::string print(const Expr& e) {
    auto bin = [&](const char* op) { return "(" + print(*e.args[0]) + " " + op + " " + print(*e.args[1]) + ")"; };
    switch (e.kind) {
        case Expr::Kind::Number:
            return e.value < 0 ? "(-" + to_string(Rational(-e.value)) + ")" : to_string(e.value);
        case Expr::Kind::Ident:
            return e.name;
        case Expr::Kind::Neg:
            return "(-" + print(*e.args[0]) + ")";
        case Expr::Kind::Add:
            return bin("+");
        case Expr::Kind::Sub:
            return bin("-");
        case Expr::Kind::Mul:
            return bin("*");
        case Expr::Kind::Div:
            return bin("/");
        case Expr::Kind::Pow:
            return "(" + print(*e.args[0]) + "^" + print(*e.args[1]) + ")";
        case Expr::Kind::Call:
            return e.name + "(" + print(*e.args[0]) + ")";
    }
    return {};
}

// ---------------------------------------------------------------------------
// Evaluation

/// A rational, a level-one form, an element of the localized Gamma_1(3)
/// ring, or a truncated q-series.
using Value = std::variant<Rational, LevelOneForm, LocElem, QSeries>;

inline std::string to_string(const Value& v) {
    if (const auto* r = std::get_if<Rational>(&v)) return tmf3::to_string(*r);
    return std::visit(
        [](const auto& x) -> std::string {
            if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Rational>) return {};
            else return x.to_string();
        },
        v);
}

inline std::string value_kind(const Value& v) {
    static const char* names[] = {"rational", "level-one form", "Gamma_1(3) form", "q-series"};
    return names[v.index()];
}

struct EvalOptions {
    long precision = 20;  // q-series are computed through q^precision
};

namespace detail {

inline LevelOneForm as_level_one(const Value& v, const char* where) {
    if (const auto* r = std::get_if<Rational>(&v)) return LevelOneForm::monomial({0, 0, 0}, *r);
    if (const auto* f = std::get_if<LevelOneForm>(&v)) return *f;
    throw DomainError(std::string(where) + ": expected a level-one form, got a " + value_kind(v));
}

inline LocElem as_gamma1(const Value& v, const char* where) {
    if (const auto* r = std::get_if<Rational>(&v)) return LocElem(*r);
    if (const auto* f = std::get_if<LocElem>(&v)) return *f;
    throw DomainError(std::string(where) + ": expected a polynomial in a1, a3, got a " + value_kind(v));
}

inline QSeries as_series(const Value& v, long N) {
    if (const auto* r = std::get_if<Rational>(&v)) return QSeries::constant(*r, N);
    if (const auto* f = std::get_if<LevelOneForm>(&v)) return q_expansion(*f, N);
    if (const auto* s = std::get_if<QSeries>(&v)) return *s;
    throw DomainError("cannot expand a Gamma_1(3) form in q");
}

// Brings both operands into a common ring: index of the result alternative.
inline std::size_t common_kind(const Value& a, const Value& b) {
    std::size_t i = a.index(), j = b.index();
    if (i == 0) return j;
    if (j == 0 || i == j) return i;
    if ((i == 1 && j == 3) || (i == 3 && j == 1)) return 3;
    throw DomainError("cannot combine a " + value_kind(a) + " with a " + value_kind(b) +
                      "; apply fstar or qstar to move a level-one form to Gamma_0(3)");
}

template <class Op>
Value arith(const Value& a, const Value& b, long N, Op op) {
    switch (common_kind(a, b)) {
        case 0:
            return op(std::get<Rational>(a), std::get<Rational>(b));
        case 1:
            return op(as_level_one(a, "arith"), as_level_one(b, "arith"));
        case 2:
            return op(as_gamma1(a, "arith"), as_gamma1(b, "arith"));
        default:
            return op(as_series(a, N), as_series(b, N));
    }
}

inline const auto plus_op = [](const auto& x, const auto& y) -> Value {
    return std::decay_t<decltype(x)>(x + y);
};
inline const auto minus_op = [](const auto& x, const auto& y) -> Value {
    return std::decay_t<decltype(x)>(x - y);
};
inline const auto times_op = [](const auto& x, const auto& y) -> Value {
    return std::decay_t<decltype(x)>(x * y);
};

inline long integer_exponent(const Value& v) {
    const auto* r = std::get_if<Rational>(&v);
    if (!r || !is_integer(*r) || !r->get_num().fits_slong_p()) throw DomainError("exponent must be an integer");
    return r->get_num().get_si();
}

inline Value divide(const Value& a, const Value& b, long N) {
    if (const auto* r = std::get_if<Rational>(&b)) {
        if (*r == 0) throw DomainError("division by zero");
        Rational inv = 1 / *r;
        return arith(a, Value(inv), N, times_op);
    }
    if (const auto* f = std::get_if<LevelOneForm>(&b)) {
        if (f->terms().size() != 1 || f->terms().begin()->first.a != 0 || f->terms().begin()->first.eps != 0)
            throw DomainError("only c * Delta^d is invertible among level-one forms");
        return arith(a, Value(f->pow(-1)), N, times_op);
    }
    if (const auto* g = std::get_if<LocElem>(&b)) {
        auto inv = g->inverse();
        if (!inv) throw DomainError("divisor " + g->to_string() + " is not a unit in the localization");
        return arith(a, Value(*inv), N, times_op);
    }
    throw DomainError("division by a q-series is not supported");
}

inline Value power(const Value& base, long e) {
    return std::visit(
        [&](const auto& x) -> Value {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, Rational>) {
                if (x == 0 && e < 0) throw DomainError("division by zero");
                return tmf3::pow(x, e);
            } else {
                return x.pow(e);
            }
        },
        base);
}

inline Value call(const std::string& name, const Value& arg) {
    if (name == "fstar") return fstar(as_level_one(arg, "fstar")).elem();
    if (name == "qstar") return qstar(as_level_one(arg, "qstar")).elem();
    if (name == "hstar") return hstar(as_level_one(arg, "hstar"));
    if (name == "delta") return delta(as_level_one(arg, "delta")).elem();
    if (name == "tstar") return tstar(Gamma03Form(as_gamma1(arg, "tstar"))).elem();
    throw DomainError("unknown function " + name);
}

// n from O(q^n), read off the syntax: q^n itself vanishes at the working precision.
inline long big_o_exponent(const Expr& arg) {
    if (arg.kind == Expr::Kind::Ident && arg.name == "q") return 1;
    if (arg.kind == Expr::Kind::Pow && arg.args[0]->kind == Expr::Kind::Ident && arg.args[0]->name == "q" &&
        arg.args[1]->kind == Expr::Kind::Number && is_integer(arg.args[1]->value) && arg.args[1]->value >= 1 &&
        arg.args[1]->value.get_num().fits_slong_p())
        return arg.args[1]->value.get_num().get_si();
    throw DomainError("O(...) expects q^n with an integer n >= 1");
}

}  // namespace detail

inline Value evaluate(const Expr& e, const EvalOptions& opt = {}) {
    const long N = opt.precision;
    auto arg = [&](std::size_t i) { return evaluate(*e.args[i], opt); };
    using detail::minus_op, detail::plus_op, detail::times_op;
    switch (e.kind) {
        case Expr::Kind::Number:
            return e.value;
        case Expr::Kind::Ident:
            if (e.name == "a1") return LocElem(a1());
            if (e.name == "a3") return LocElem(a3());
            if (e.name == "c4") return LevelOneForm::c4();
            if (e.name == "c6") return LevelOneForm::c6();
            if (e.name == "Delta") return LevelOneForm::delta();
            if (e.name == "q") return QSeries::q(N);
            throw DomainError("unknown identifier " + e.name);
        case Expr::Kind::Neg:
            return detail::arith(Value(Rational(-1)), arg(0), N, times_op);
        case Expr::Kind::Add:
            return detail::arith(arg(0), arg(1), N, plus_op);
        case Expr::Kind::Sub:
            return detail::arith(arg(0), arg(1), N, minus_op);
        case Expr::Kind::Mul:
            return detail::arith(arg(0), arg(1), N, times_op);
        case Expr::Kind::Div:
            return detail::divide(arg(0), arg(1), N);
        case Expr::Kind::Pow:
            return detail::power(arg(0), detail::integer_exponent(arg(1)));
        case Expr::Kind::Call:
            if (e.name == "O") return QSeries(detail::big_o_exponent(*e.args[0]) - 1);
            return detail::call(e.name, arg(0));
    }
    throw DomainError("malformed expression");
}

inline Value evaluate(const std::string& text, const EvalOptions& opt = {}) { return evaluate(*parse(text), opt); }

}  // namespace tmf3
