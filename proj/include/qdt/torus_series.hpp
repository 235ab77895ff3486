#pragma once
#include <functional>
#include <map>
#include <vector>

#include "qdt/dimvec.hpp"
#include "qdt/motive.hpp"
#include "qdt/rational.hpp"

namespace qdt {

/**
 * Truncated series sum_{ht(g) <= bound} c_g e_g over the commutative monoid
 * algebra of Z_{>=0}^n. Coefficients beyond the height cutoff are unknown, not
 * zero: every operation stays inside the common bound of its operands.
 */
class TorusSeries {
public:
    TorusSeries(int numVertices, int bound);

    static TorusSeries zero(int numVertices, int bound) { return {numVertices, bound}; }
    static TorusSeries one(int numVertices, int bound);
    static TorusSeries monomial(const DimVector& g, const MotiveRat& c, int bound);

    int numVertices() const { return n_; }
    int bound() const { return bound_; }
    /** Coefficient of e_g; throws when ht(g) exceeds the bound. */
    const MotiveRat& coeff(const DimVector& g) const;
    void setCoeff(const DimVector& g, const MotiveRat& c);
    void addCoeff(const DimVector& g, const MotiveRat& c);
    const std::map<DimVector, MotiveRat, GradedLex>& terms() const { return terms_; }

    bool isZero() const { return terms_.empty(); }
    bool operator==(const TorusSeries& o) const;

    TorusSeries operator+(const TorusSeries& o) const;
    TorusSeries operator-(const TorusSeries& o) const;
    TorusSeries operator-() const;
    TorusSeries operator*(const TorusSeries& o) const;
    TorusSeries scaled(const MotiveRat& c) const;

    /** Multiplicative inverse; requires a nonzero constant term. */
    TorusSeries inverse() const;

    /** psi_k: adams on coefficients, g -> k*g on indices (overflow drops out of bound). */
    TorusSeries adamsSeries(int k) const;

    /** Keep coefficients at g with pred(g) true, zero the rest (g = 0 included). */
    TorusSeries filtered(const std::function<bool(const DimVector&)>& pred) const;

    /** Truncate to a smaller height cutoff. */
    TorusSeries truncated(int bound) const;

    std::string str() const;

private:
    int n_;
    int bound_;
    std::map<DimVector, MotiveRat, GradedLex> terms_;

    void requireCompatible(const TorusSeries& o) const;
};

/** Exp(f) = exp(sum_{k>=1} psi_k(f)/k); requires f(0) = 0. Exp(f+g) = Exp(f)Exp(g). */
TorusSeries plethysticExp(const TorusSeries& f);

/** Two-sided inverse of plethysticExp; requires A(0) = 1. */
TorusSeries plethysticLog(const TorusSeries& a);

/**
 * Stability data: one point of the upper half plane per vertex, exact rational
 * coordinates. Z(g) = sum_i g^i z_i.
 */
class CentralCharge {
public:
    CentralCharge(std::vector<Rat> re, std::vector<Rat> im);

    int numVertices() const { return static_cast<int>(re_.size()); }
    std::pair<Rat, Rat> eval(const DimVector& g) const;

    /**
     * Primitive integer direction of Z(g), second component positive. Two
     * classes share a ray exactly when their keys coincide.
     */
    std::pair<Int, Int> rayKey(const DimVector& g) const;

    /**
     * Checks that non-proportional classes within the height bound land on
     * distinct rays; throws "degenerate charge" otherwise.
     */
    void requireGeneric(int bound) const;

    std::string str() const;

private:
    std::vector<Rat> re_, im_;
};

/** Decreasing-argument order on ray keys (arguments lie in (0, pi)). */
struct RayArgDecreasing {
    bool operator()(const std::pair<Int, Int>& a, const std::pair<Int, Int>& b) const {
        // arg(a) > arg(b)  <=>  re_a/im_a < re_b/im_b  <=>  re_a im_b < re_b im_a.
        if (a.first * b.second != b.first * a.second)
            return a.first * b.second < b.first * a.second;
        return a < b;
    }
};

} // namespace qdt
