#pragma once
#include <cctype>
#include <functional>
#include <sstream>
#include <vector>

#include "qdt/ratfunc.hpp"

namespace qdt {

namespace detail {

/**
 * Renders one Laurent polynomial. `mono` maps an exponent of the internal
 * symbol to the printed power-product (empty string for exponent 0).
 */
inline std::string renderPoly(const LaurentPoly& p, const std::function<std::string(int)>& mono) {
    if (p.isZero()) return "0";
    std::string out;
    // Descending exponents read like hand-written polynomials.
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const auto& [e, c] = *it;
        bool neg = c < 0;
        Rat a = neg ? Rat(-c) : c;
        std::string m = mono(e);
        std::string body;
        if (m.empty())
            body = ratToString(a);
        else if (a == 1)
            body = m;
        else
            body = ratToString(a) + "*" + m;
        if (out.empty())
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    }
    return out;
}

inline std::string renderFraction(const RationalFunction& f,
                                  const std::function<std::string(int)>& mono) {
    if (f.isLaurent()) return renderPoly(f.num(), mono);
    return "(" + renderPoly(f.num(), mono) + ")/(" + renderPoly(f.den(), mono) + ")";
}

/** Minimal expression parser shared by the coefficient rings. */
class ExprParser {
public:
    ExprParser(const std::string& src,
               const std::function<RationalFunction(const std::string&)>& symbol)
        : s_(src), symbol_(symbol) {}

    RationalFunction parse() {
        RationalFunction r = expr();
        skipWs();
        if (pos_ != s_.size()) throw std::invalid_argument("trailing input in expression: " + s_);
        return r;
    }

private:
    const std::string& s_;
    std::function<RationalFunction(const std::string&)> symbol_;
    size_t pos_ = 0;

    void skipWs() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skipWs();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skipWs();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    RationalFunction expr() {
        RationalFunction acc = term();
        for (;;) {
            if (eat('+'))
                acc += term();
            else if (eat('-'))
                acc -= term();
            else
                return acc;
        }
    }
    RationalFunction term() {
        RationalFunction acc = factor();
        for (;;) {
            if (eat('*'))
                acc *= factor();
            else if (eat('/'))
                acc /= factor();
            else
                return acc;
        }
    }
    RationalFunction factor() {
        if (eat('-')) return -factor();
        RationalFunction base = atom();
        if (eat('^')) {
            bool neg = eat('-');
            long e = integer();
            base = base.pow(neg ? -e : e);
        }
        return base;
    }
    long integer() {
        skipWs();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw std::invalid_argument("expected integer in expression: " + s_);
        return std::stol(s_.substr(start, pos_ - start));
    }
    RationalFunction atom() {
        if (eat('(')) {
            RationalFunction r = expr();
            if (!eat(')')) throw std::invalid_argument("unbalanced parentheses: " + s_);
            return r;
        }
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return RationalFunction::constant(Rat(Int(s_.substr(start, pos_ - start))));
        }
        size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) throw std::invalid_argument("unexpected token in expression: " + s_);
        return symbol_(s_.substr(start, pos_ - start));
    }
};

} // namespace detail

/**
 * Rational function in the half-Tate symbol s, with the convention s^2 = L.
 * Houses motives, Tate twists and stack counts; rendered in terms of L with
 * s appearing only for genuinely odd weights.
 */
class MotiveRat {
public:
    MotiveRat() = default;

    static MotiveRat zero() { return {}; }
    static MotiveRat one() { return fromRat(1); }
    static MotiveRat fromRat(const Rat& c) {
        MotiveRat m;
        m.f_ = RationalFunction::constant(c);
        return m;
    }
    static MotiveRat integer(long n) { return fromRat(Rat(n)); }
    /** L^k (k may be negative). */
    static MotiveRat L(int k = 1) { return halfTate(2 * k); }
    /** s^e (e may be negative). */
    static MotiveRat halfTate(int e) {
        MotiveRat m;
        m.f_ = RationalFunction::monomial(1, e);
        return m;
    }

    bool isZero() const { return f_.isZero(); }
    const RationalFunction& ratfunc() const { return f_; }

    friend MotiveRat operator+(const MotiveRat& a, const MotiveRat& b) { return wrap(a.f_ + b.f_); }
    friend MotiveRat operator-(const MotiveRat& a, const MotiveRat& b) { return wrap(a.f_ - b.f_); }
    friend MotiveRat operator*(const MotiveRat& a, const MotiveRat& b) { return wrap(a.f_ * b.f_); }
    friend MotiveRat operator/(const MotiveRat& a, const MotiveRat& b) { return wrap(a.f_ / b.f_); }
    MotiveRat operator-() const { return wrap(-f_); }
    MotiveRat& operator+=(const MotiveRat& o) { return *this = *this + o; }
    MotiveRat& operator-=(const MotiveRat& o) { return *this = *this - o; }
    MotiveRat& operator*=(const MotiveRat& o) { return *this = *this * o; }
    MotiveRat& operator/=(const MotiveRat& o) { return *this = *this / o; }
    bool operator==(const MotiveRat& o) const = default;
    MotiveRat pow(long e) const { return wrap(f_.pow(e)); }

    /** Adams operation psi_k: s -> s^k (hence L -> L^k). Requires k >= 1. */
    MotiveRat adams(int k) const {
        if (k < 1) throw std::invalid_argument("adams operation needs k >= 1");
        return wrap(f_.dilated(k));
    }

    /** Evaluates at L = q. Only integral Tate weights are evaluable. */
    Rat evalAtPrime(long q) const {
        if (!f_.isEven()) throw std::domain_error("non-integral Tate weight");
        // Substitute u = s^2 by halving every exponent, then evaluate at q.
        LaurentPoly n, d;
        for (const auto& [e, c] : f_.num().terms()) n.addTerm(e / 2, c);
        for (const auto& [e, c] : f_.den().terms()) d.addTerm(e / 2, c);
        Rat dv = d.evaluate(q);
        if (dv == 0) throw std::domain_error("pole at evaluation point");
        return n.evaluate(q) / dv;
    }

    /** Laurent polynomial in s (no genuine denominator). */
    bool isLaurent() const { return f_.isLaurent(); }
    /** Laurent polynomial in L (integral Tate weights only). */
    bool isLaurentInL() const { return f_.isLaurent() && f_.isEven(); }
    /** Honest polynomial in L. */
    bool isPolyInL() const { return isLaurentInL() && (f_.isZero() || f_.num().lowDeg() >= 0); }

    /** Ascending coefficient list of a polynomial in L. */
    std::vector<Rat> polyCoeffsInL() const {
        if (!isPolyInL()) throw std::domain_error("not a polynomial in L");
        std::vector<Rat> out;
        if (f_.isZero()) return out;
        out.resize(static_cast<size_t>(f_.num().deg() / 2) + 1, Rat(0));
        for (const auto& [e, c] : f_.num().terms()) out[static_cast<size_t>(e / 2)] = c;
        return out;
    }

    std::string str() const {
        return detail::renderFraction(f_, [](int e) -> std::string {
            if (e == 0) return "";
            int lpow = e >= 0 ? e / 2 : -((-e + 1) / 2); // floor(e/2)
            bool odd = (e % 2 + 2) % 2 == 1;
            std::string lpart;
            if (lpow == 1)
                lpart = "L";
            else if (lpow != 0)
                lpart = "L^" + std::to_string(lpow);
            if (!odd) return lpart;
            return lpart.empty() ? "s" : "s*" + lpart;
        });
    }

    static MotiveRat parse(const std::string& src) {
        detail::ExprParser p(src, [](const std::string& name) -> RationalFunction {
            if (name == "L") return RationalFunction::monomial(1, 2);
            if (name == "s") return RationalFunction::monomial(1, 1);
            throw std::invalid_argument("unknown symbol in motive expression: " + name);
        });
        return wrap(p.parse());
    }

private:
    RationalFunction f_;
    static MotiveRat wrap(RationalFunction f) {
        MotiveRat m;
        m.f_ = std::move(f);
        return m;
    }
};

/** [GL_n] = prod_{k=0}^{n-1} (L^n - L^k). */
inline MotiveRat glMotive(int n) {
    MotiveRat acc = MotiveRat::one();
    for (int k = 0; k < n; ++k) acc *= MotiveRat::L(n) - MotiveRat::L(k);
    return acc;
}

/** Rational function in the quantum parameter v over Q. */
class RatV {
public:
    RatV() = default;

    static RatV zero() { return {}; }
    static RatV one() { return fromRat(1); }
    static RatV fromRat(const Rat& c) {
        RatV r;
        r.f_ = RationalFunction::constant(c);
        return r;
    }
    static RatV v(int e = 1) {
        RatV r;
        r.f_ = RationalFunction::monomial(1, e);
        return r;
    }

    bool isZero() const { return f_.isZero(); }
    const RationalFunction& ratfunc() const { return f_; }

    friend RatV operator+(const RatV& a, const RatV& b) { return wrap(a.f_ + b.f_); }
    friend RatV operator-(const RatV& a, const RatV& b) { return wrap(a.f_ - b.f_); }
    friend RatV operator*(const RatV& a, const RatV& b) { return wrap(a.f_ * b.f_); }
    friend RatV operator/(const RatV& a, const RatV& b) { return wrap(a.f_ / b.f_); }
    RatV operator-() const { return wrap(-f_); }
    RatV& operator+=(const RatV& o) { return *this = *this + o; }
    RatV& operator-=(const RatV& o) { return *this = *this - o; }
    RatV& operator*=(const RatV& o) { return *this = *this * o; }
    RatV& operator/=(const RatV& o) { return *this = *this / o; }
    bool operator==(const RatV& o) const = default;
    RatV pow(long e) const { return wrap(f_.pow(e)); }

    Rat evaluate(const Rat& x) const { return f_.evaluate(x); }

    std::string str() const {
        return detail::renderFraction(f_, [](int e) -> std::string {
            if (e == 0) return "";
            if (e == 1) return "v";
            return "v^" + std::to_string(e);
        });
    }

    static RatV parse(const std::string& src) {
        detail::ExprParser p(src, [](const std::string& name) -> RationalFunction {
            if (name == "v") return RationalFunction::monomial(1, 1);
            throw std::invalid_argument("unknown symbol in v-expression: " + name);
        });
        return wrap(p.parse());
    }

private:
    RationalFunction f_;
    static RatV wrap(RationalFunction f) {
        RatV r;
        r.f_ = std::move(f);
        return r;
    }
};

} // namespace qdt
