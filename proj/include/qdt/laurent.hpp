#pragma once
#include <map>
#include <stdexcept>
#include <utility>

#include "qdt/rational.hpp"

namespace qdt {

/**
 * Sparse Laurent polynomial in one formal symbol, exact rational coefficients.
 * The symbol itself is anonymous here; callers fix its meaning (s, v, ...).
 */
class LaurentPoly {
public:
    LaurentPoly() = default;

    static LaurentPoly monomial(const Rat& c, int e) {
        LaurentPoly p;
        if (c != 0) p.terms_[e] = c;
        return p;
    }
    static LaurentPoly constant(const Rat& c) { return monomial(c, 0); }
    static LaurentPoly one() { return constant(1); }

    bool isZero() const { return terms_.empty(); }
    const std::map<int, Rat>& terms() const { return terms_; }

    int lowDeg() const {
        if (isZero()) throw std::invalid_argument("degree of zero polynomial");
        return terms_.begin()->first;
    }
    int deg() const {
        if (isZero()) throw std::invalid_argument("degree of zero polynomial");
        return terms_.rbegin()->first;
    }
    Rat coeff(int e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }
    Rat leadingCoeff() const { return terms_.rbegin()->second; }

    void addTerm(int e, const Rat& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) addTerm(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [e, c] : o.terms_) addTerm(e, -c);
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    LaurentPoly operator-() const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly r;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.addTerm(ea + eb, ca * cb);
        return r;
    }
    LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
    LaurentPoly scaled(const Rat& c) const {
        LaurentPoly r;
        if (c == 0) return r;
        for (const auto& [e, k] : terms_) r.terms_[e] = k * c;
        return r;
    }
    bool operator==(const LaurentPoly& o) const = default;

    /** Multiplication by x^k. */
    LaurentPoly shifted(int k) const {
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e + k] = c;
        return r;
    }
    /** Substitution x -> x^k, k >= 1 (a ring endomorphism). */
    LaurentPoly dilated(int k) const {
        if (k < 1) throw std::invalid_argument("dilation exponent must be >= 1");
        LaurentPoly r;
        for (const auto& [e, c] : terms_) r.terms_[e * k] = c;
        return r;
    }

    /** Evaluation; x must be nonzero if negative exponents occur. */
    Rat evaluate(const Rat& x) const {
        Rat acc = 0;
        for (const auto& [e, c] : terms_) {
            if (e < 0 && x == 0) throw std::domain_error("pole at evaluation point");
            Rat p = 1;
            Rat base = e >= 0 ? x : Rat(1) / x;
            for (int j = 0; j < (e >= 0 ? e : -e); ++j) p *= base;
            acc += c * p;
        }
        return acc;
    }

    /** gcd of numerators / lcm of denominators of all coefficients; positive. Zero poly -> 0. */
    Rat ratContent() const {
        if (isZero()) return 0;
        Int g = 0, l = 1;
        for (const auto& [e, c] : terms_) {
            g = intGcd(g, ratNum(c));
            l = intLcm(l, ratDen(c));
        }
        if (g < 0) g = -g;
        return Rat(g, l);
    }

private:
    std::map<int, Rat> terms_;
};

/** Long division over Q; both operands must have non-negative support. */
inline std::pair<LaurentPoly, LaurentPoly> polyDivMod(LaurentPoly a, const LaurentPoly& b) {
    if (b.isZero()) throw std::invalid_argument("division by zero polynomial");
    if (b.lowDeg() < 0 || (!a.isZero() && a.lowDeg() < 0))
        throw std::invalid_argument("polyDivMod needs non-negative support");
    LaurentPoly q;
    while (!a.isZero() && a.deg() >= b.deg()) {
        int e = a.deg() - b.deg();
        Rat c = a.leadingCoeff() / b.leadingCoeff();
        LaurentPoly m = LaurentPoly::monomial(c, e);
        q += m;
        a -= m * b;
    }
    return {q, a};
}

inline LaurentPoly polyDivExact(const LaurentPoly& a, const LaurentPoly& b) {
    auto [q, r] = polyDivMod(a, b);
    if (!r.isZero()) throw std::logic_error("inexact polynomial division");
    return q;
}

/** Monic gcd over Q of the polynomial parts (x factors stripped first). */
inline LaurentPoly polyGcd(LaurentPoly a, LaurentPoly b) {
    if (a.isZero() && b.isZero()) return {};
    if (!a.isZero()) a = a.shifted(-a.lowDeg());
    if (!b.isZero()) b = b.shifted(-b.lowDeg());
    while (!b.isZero()) {
        auto [q, r] = polyDivMod(a, b);
        (void)q;
        a = b;
        b = r;
        if (!b.isZero()) b = b.shifted(-b.lowDeg());
    }
    return a.scaled(Rat(1) / a.leadingCoeff());
}

} // namespace qdt
