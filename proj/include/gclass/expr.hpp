#pragma once

#include <cctype>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "gclass/jet.hpp"
#include "gclass/series.hpp"

// Expression trees over {rational constants, x, z, + - * /, integer powers,
// log, exp}: closed forms of 3-connected generating functions and of the
// singular-frame data r(x), T_i(x).  Supports symbolic differentiation and
// evaluation over any coefficient type (long double, Jet, Series).

namespace gclass {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum Kind { CONST, VARX, VARZ, ADD, SUB, MUL, DIV, NEG, POW, LOG, EXP } kind;
    Rational value;   // CONST
    long ipow = 0;    // POW exponent
    ExprPtr a, b;

    Expr(Kind k, Rational v) : kind(k), value(std::move(v)) {}
    Expr(Kind k, ExprPtr aa, ExprPtr bb = nullptr) : kind(k), a(std::move(aa)), b(std::move(bb)) {}
};

inline ExprPtr e_const(Rational v) { return std::make_shared<Expr>(Expr::CONST, std::move(v)); }
inline ExprPtr e_const(long n, long d = 1) { return e_const(Rational(n, d)); }
inline ExprPtr e_x() { return std::make_shared<Expr>(Expr::VARX, Rational(0)); }
inline ExprPtr e_z() { return std::make_shared<Expr>(Expr::VARZ, Rational(0)); }
inline ExprPtr e_add(ExprPtr a, ExprPtr b) { return std::make_shared<Expr>(Expr::ADD, std::move(a), std::move(b)); }
inline ExprPtr e_sub(ExprPtr a, ExprPtr b) { return std::make_shared<Expr>(Expr::SUB, std::move(a), std::move(b)); }
inline ExprPtr e_mul(ExprPtr a, ExprPtr b) { return std::make_shared<Expr>(Expr::MUL, std::move(a), std::move(b)); }
inline ExprPtr e_div(ExprPtr a, ExprPtr b) { return std::make_shared<Expr>(Expr::DIV, std::move(a), std::move(b)); }
inline ExprPtr e_neg(ExprPtr a) { return std::make_shared<Expr>(Expr::NEG, std::move(a)); }
inline ExprPtr e_log(ExprPtr a) { return std::make_shared<Expr>(Expr::LOG, std::move(a)); }
inline ExprPtr e_exp(ExprPtr a) { return std::make_shared<Expr>(Expr::EXP, std::move(a)); }
inline ExprPtr e_pow(ExprPtr a, long n) {
    auto e = std::make_shared<Expr>(Expr::POW, std::move(a));
    const_cast<Expr&>(*e).ipow = n;
    return e;
}

inline bool is_const_zero(const ExprPtr& e) { return e->kind == Expr::CONST && e->value == 0; }
inline bool is_const_one(const ExprPtr& e) { return e->kind == Expr::CONST && e->value == 1; }

// light simplification keeps derivative trees from exploding
inline ExprPtr s_add(ExprPtr a, ExprPtr b) {
    if (is_const_zero(a)) return b;
    if (is_const_zero(b)) return a;
    return e_add(std::move(a), std::move(b));
}
inline ExprPtr s_sub(ExprPtr a, ExprPtr b) {
    if (is_const_zero(b)) return a;
    if (is_const_zero(a)) return e_neg(std::move(b));
    return e_sub(std::move(a), std::move(b));
}
inline ExprPtr s_mul(ExprPtr a, ExprPtr b) {
    if (is_const_zero(a) || is_const_zero(b)) return e_const(0);
    if (is_const_one(a)) return b;
    if (is_const_one(b)) return a;
    return e_mul(std::move(a), std::move(b));
}
inline ExprPtr s_div(ExprPtr a, ExprPtr b) {
    if (is_const_zero(a)) return e_const(0);
    if (is_const_one(b)) return a;
    return e_div(std::move(a), std::move(b));
}

// d/dx (wrt_x = true) or d/dz
inline ExprPtr diff(const ExprPtr& e, bool wrt_x) {
    switch (e->kind) {
        case Expr::CONST: return e_const(0);
        case Expr::VARX: return e_const(wrt_x ? 1 : 0);
        case Expr::VARZ: return e_const(wrt_x ? 0 : 1);
        case Expr::ADD: return s_add(diff(e->a, wrt_x), diff(e->b, wrt_x));
        case Expr::SUB: return s_sub(diff(e->a, wrt_x), diff(e->b, wrt_x));
        case Expr::MUL: return s_add(s_mul(diff(e->a, wrt_x), e->b), s_mul(e->a, diff(e->b, wrt_x)));
        case Expr::DIV:
            return s_div(s_sub(s_mul(diff(e->a, wrt_x), e->b), s_mul(e->a, diff(e->b, wrt_x))),
                         e_pow(e->b, 2));
        case Expr::NEG: {
            auto d = diff(e->a, wrt_x);
            return is_const_zero(d) ? d : e_neg(d);
        }
        case Expr::POW: {
            if (e->ipow == 0) return e_const(0);
            auto d = diff(e->a, wrt_x);
            if (is_const_zero(d)) return d;
            return s_mul(s_mul(e_const(e->ipow), e_pow(e->a, e->ipow - 1)), d);
        }
        case Expr::LOG: return s_div(diff(e->a, wrt_x), e->a);
        case Expr::EXP: return s_mul(diff(e->a, wrt_x), e);
    }
    throw std::logic_error("unreachable");
}

// ---- generic evaluation -------------------------------------------------

inline Rational from_rational(const Rational&, const Rational& q) { return q; }
inline long double from_rational(const long double&, const Rational& q) { return (long double)q.get_d(); }
inline Jet from_rational(const Jet& model, const Rational& q) {
    return Jet::constant(model.order(), (long double)q.get_d());
}
template <class K>
Series<K> from_rational(const Series<K>& model, const Rational& q) {
    Series<K> s = make_scalar(model, 0);
    s.c[0] = from_rational(model.c[0], q);
    return s;
}

// exact-rational evaluation supports the field operations and integer powers
inline Rational t_powi(const Rational& v, long n) {
    Rational r(1), b = v;
    long e = n < 0 ? -n : n;
    for (; e > 0; e >>= 1) {
        if (e & 1) r *= b;
        if (e > 1) b *= b;
    }
    return n < 0 ? Rational(1) / r : r;
}
inline Rational t_log(const Rational&) {
    throw std::domain_error("log has no exact rational evaluation");
}
inline Rational t_exp(const Rational&) {
    throw std::domain_error("exp has no exact rational evaluation");
}

inline long double t_log(const long double& v) {
    if (v <= 0.0L) throw std::domain_error("log of non-positive value");
    return logl(v);
}
inline long double t_exp(const long double& v) { return expl(v); }
inline long double t_powi(const long double& v, long n) { return powl(v, (long double)n); }
inline Jet t_log(const Jet& v) { return jet_log(v); }
inline Jet t_exp(const Jet& v) { return jet_exp(v); }
inline Jet t_powi(const Jet& v, long n) { return jet_pow(v, n); }
template <class K>
Series<K> t_log(const Series<K>& v) {
    // shift out a constant factor when possible so the formal log applies
    if (is_one_val(v.c[0])) return log(v);
    throw std::domain_error("series log needs constant term 1");
}
template <class K>
Series<K> t_exp(const Series<K>& v) {
    if (is_zero_val(v.c[0])) return exp(v);
    throw std::domain_error("series exp needs constant term 0");
}
template <class K>
Series<K> t_powi(const Series<K>& v, long n) { return pow_int(v, n); }

template <class T>
T eval(const ExprPtr& e, const T& x, const T& z) {
    switch (e->kind) {
        case Expr::CONST: return from_rational(x, e->value);
        case Expr::VARX: return x;
        case Expr::VARZ: return z;
        case Expr::ADD: return eval(e->a, x, z) + eval(e->b, x, z);
        case Expr::SUB: return eval(e->a, x, z) - eval(e->b, x, z);
        case Expr::MUL: return eval(e->a, x, z) * eval(e->b, x, z);
        case Expr::DIV: return eval(e->a, x, z) / eval(e->b, x, z);
        case Expr::NEG: return from_rational(x, Rational(0)) - eval(e->a, x, z);
        case Expr::POW: return t_powi(eval(e->a, x, z), e->ipow);
        case Expr::LOG: return t_log(eval(e->a, x, z));
        case Expr::EXP: return t_exp(eval(e->a, x, z));
    }
    throw std::logic_error("unreachable");
}

// ---- parser --------------------------------------------------------------

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " at line " + std::to_string(l) + ", column " + std::to_string(c)),
          line(l), column(c) {}
};

class ExprParser {
  public:
    explicit ExprParser(std::string text, int line = 1) : s_(std::move(text)), line_(line) {}

    ExprPtr parse() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

  private:
    std::string s_;
    size_t pos_ = 0;
    int line_;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, static_cast<int>(pos_) + 1);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    ExprPtr parse_expr() {
        auto e = parse_term();
        for (;;) {
            if (eat('+')) e = e_add(e, parse_term());
            else if (eat('-')) e = e_sub(e, parse_term());
            else return e;
        }
    }
    ExprPtr parse_term() {
        auto e = parse_unary();
        for (;;) {
            if (eat('*')) e = e_mul(e, parse_unary());
            else if (eat('/')) e = e_div(e, parse_unary());
            else return e;
        }
    }
    ExprPtr parse_unary() {
        if (eat('-')) return e_neg(parse_unary());
        if (eat('+')) return parse_unary();
        return parse_power();
    }
    ExprPtr parse_power() {
        auto base = parse_atom();
        if (eat('^')) {
            bool neg = eat('-');
            skip_ws();
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected integer exponent");
            long n = 0;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) n = n * 10 + (s_[pos_++] - '0');
            return e_pow(base, neg ? -n : n);
        }
        return base;
    }
    ExprPtr parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string id = s_.substr(start, pos_ - start);
            if (id == "x") return e_x();
            if (id == "z") return e_z();
            if (id == "log" || id == "exp") {
                if (!eat('(')) fail("expected '(' after " + id);
                auto arg = parse_expr();
                if (!eat(')')) fail("expected ')'");
                return id == "log" ? e_log(arg) : e_exp(arg);
            }
            fail("unknown symbol '" + id + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }
    ExprPtr parse_number() {
        std::string digits;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) digits += s_[pos_++];
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            std::string frac;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) frac += s_[pos_++];
            if (frac.empty()) fail("expected digits after decimal point");
            BigInt num(digits + frac);
            BigInt den = 1;
            for (size_t i = 0; i < frac.size(); ++i) den *= 10;
            Rational q(num, den);
            q.canonicalize();
            return e_const(q);
        }
        return e_const(Rational(BigInt(digits)));
    }
};

inline ExprPtr parse_expr(const std::string& text, int line = 1) { return ExprParser(text, line).parse(); }

}  // namespace gclass
