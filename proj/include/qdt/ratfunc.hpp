#pragma once
#include "qdt/laurent.hpp"

namespace qdt {

/**
 * Quotient of Laurent polynomials in one symbol, kept in canonical form:
 *  - denominator is an honest polynomial with nonzero constant term,
 *    integer coefficients and positive leading coefficient;
 *  - numerator/denominator are coprime (Laurent gcd) with jointly coprime
 *    integer contents;
 *  - zero is 0/1.
 * Equality is structural.
 */
class RationalFunction {
public:
    RationalFunction() : den_(LaurentPoly::one()) {}
    RationalFunction(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.isZero()) throw std::invalid_argument("zero denominator");
        canonicalize();
    }
    static RationalFunction fromPoly(LaurentPoly p) {
        return RationalFunction(std::move(p), LaurentPoly::one());
    }
    static RationalFunction constant(const Rat& c) { return fromPoly(LaurentPoly::constant(c)); }
    static RationalFunction monomial(const Rat& c, int e) {
        return fromPoly(LaurentPoly::monomial(c, e));
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    bool isZero() const { return num_.isZero(); }
    bool isLaurent() const { return den_ == LaurentPoly::one(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.isZero()) throw std::invalid_argument("division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }
    bool operator==(const RationalFunction& o) const = default;

    RationalFunction pow(long e) const {
        if (e < 0) {
            if (isZero()) throw std::invalid_argument("inverse of zero");
            return RationalFunction(den_, num_).pow(-e);
        }
        RationalFunction acc = constant(1), base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    /** Substitution x -> x^k, k >= 1. */
    RationalFunction dilated(int k) const {
        return RationalFunction(num_.dilated(k), den_.dilated(k));
    }

    Rat evaluate(const Rat& x) const {
        Rat d = den_.evaluate(x);
        if (d == 0) throw std::domain_error("pole at evaluation point");
        return num_.evaluate(x) / d;
    }

    /** True when every exponent appearing in num and den is even. */
    bool isEven() const {
        for (const auto& [e, c] : num_.terms())
            if (e % 2 != 0) return false;
        for (const auto& [e, c] : den_.terms())
            if (e % 2 != 0) return false;
        return true;
    }

private:
    LaurentPoly num_, den_;

    void canonicalize() {
        if (num_.isZero()) {
            den_ = LaurentPoly::one();
            return;
        }
        // Push the denominator's monomial part into the numerator.
        int dl = den_.lowDeg();
        den_ = den_.shifted(-dl);
        num_ = num_.shifted(-dl);
        // Cancel the polynomial gcd.
        LaurentPoly g = polyGcd(num_, den_);
        if (g != LaurentPoly::one()) {
            num_ = polyDivExact(num_.shifted(-num_.lowDeg()), g).shifted(num_.lowDeg());
            den_ = polyDivExact(den_, g);
        }
        // Joint content normalization: integer coefficients, coprime contents.
        Rat scale = Rat(ratDen(num_.ratContent()) , 1) * Rat(ratDen(den_.ratContent()), 1);
        LaurentPoly n = num_.scaled(scale), d = den_.scaled(scale);
        Int cg = intGcd(ratNum(n.ratContent()), ratNum(d.ratContent()));
        if (cg > 1) {
            n = n.scaled(Rat(1, cg));
            d = d.scaled(Rat(1, cg));
        }
        if (d.leadingCoeff() < 0) {
            n = -n;
            d = -d;
        }
        num_ = n;
        den_ = d;
    }
};

} // namespace qdt
