#pragma once
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdt {

/** Element of Z^I in declaration order; non-negativity is enforced at use sites. */
using DimVector = std::vector<int>;

inline int ht(const DimVector& g) { return std::accumulate(g.begin(), g.end(), 0); }

inline bool isNonNegative(const DimVector& g) {
    for (int x : g)
        if (x < 0) return false;
    return true;
}

inline bool isZeroVec(const DimVector& g) {
    for (int x : g)
        if (x != 0) return false;
    return true;
}

inline DimVector dvAdd(const DimVector& a, const DimVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension vector size mismatch");
    DimVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

/** Partial subtraction: throws when the difference leaves Z_{>=0}^I. */
inline DimVector dvSub(const DimVector& a, const DimVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension vector size mismatch");
    DimVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        r[i] = a[i] - b[i];
        if (r[i] < 0) throw std::invalid_argument("dimension vector subtraction out of range");
    }
    return r;
}

inline DimVector dvScale(int k, const DimVector& a) {
    DimVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = k * a[i];
    return r;
}

/** Componentwise a <= b. */
inline bool dvLeq(const DimVector& a, const DimVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension vector size mismatch");
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

/** Dot product (the twist pairing uses this, not the Euler form). */
inline long dot(const DimVector& a, const DimVector& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dimension vector size mismatch");
    long s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += static_cast<long>(a[i]) * b[i];
    return s;
}

/** Graded-lex order: by height, ties broken lexicographically. */
struct GradedLex {
    bool operator()(const DimVector& a, const DimVector& b) const {
        int ha = ht(a), hb = ht(b);
        if (ha != hb) return ha < hb;
        return a < b;
    }
};

inline std::string dvToString(const DimVector& g) {
    std::string s = "(";
    for (size_t i = 0; i < g.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(g[i]);
    }
    return s + ")";
}

/** All gamma in Z_{>=0}^n with 1 <= ht(gamma) <= bound, graded-lex order. */
std::vector<DimVector> dimVectorsUpTo(int n, int bound);

} // namespace qdt
