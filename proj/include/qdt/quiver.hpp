#pragma once
#include <string>
#include <utility>
#include <vector>

#include "qdt/dimvec.hpp"

namespace qdt {

/**
 * Finite quiver: ordered vertex set plus a list of arrows. Parallel arrows and
 * loops are kept as individual list entries so constructions that reference
 * single arrows (the cubic potential below) stay well-formed.
 */
class Quiver {
public:
    Quiver(std::vector<std::string> vertexNames, std::vector<std::pair<int, int>> arrows);

    int numVertices() const { return static_cast<int>(names_.size()); }
    int numArrows() const { return static_cast<int>(arrows_.size()); }
    const std::vector<std::string>& vertexNames() const { return names_; }
    const std::vector<std::pair<int, int>>& arrows() const { return arrows_; }
    int source(int a) const { return arrows_[static_cast<size_t>(a)].first; }
    int target(int a) const { return arrows_[static_cast<size_t>(a)].second; }

    /** Number of arrows i -> j. */
    int arrowCount(int i, int j) const;
    /** Number of loops at i. */
    int loopCount(int i) const { return arrowCount(i, i); }
    /** A vertex is real when it carries no loop, imaginary otherwise. */
    bool isRealVertex(int i) const { return loopCount(i) == 0; }

    /** Index of a named vertex; throws on unknown names. */
    int vertexIndex(const std::string& name) const;

    /** Deterministic serialization, the basis for cache keys. */
    std::string canonicalString() const;

private:
    std::vector<std::string> names_;
    std::vector<std::pair<int, int>> arrows_;
};

/** One signed cyclic word of arrows; word[0] is the leftmost (last applied) factor. */
struct PotentialTerm {
    int coeff = 1;
    std::vector<int> word;
};
using Potential = std::vector<PotentialTerm>;

/** Double of a quiver: arrows 0..m-1 are the originals, m+k reverses arrow k. */
struct DoubleQuiver {
    Quiver quiver;
    int originalArrows;

    int reverseOf(int a) const {
        return a < originalArrows ? a + originalArrows : a - originalArrows;
    }
};

/**
 * Triple of a quiver: the double plus one loop per vertex (loop of vertex v has
 * arrow index 2m+v), together with the cubic potential obtained by expanding
 * sum_a [a,a*] l into trace-cyclic words a a* l_{t(a)} - a* a l_{s(a)}.
 */
struct TripleQuiver {
    Quiver quiver;
    int originalArrows;
    Potential potential;

    int reverseOf(int a) const {
        return a < originalArrows ? a + originalArrows : a - originalArrows;
    }
    int loopOf(int vertex) const { return 2 * originalArrows + vertex; }
};

DoubleQuiver makeDouble(const Quiver& q);
TripleQuiver makeTriple(const Quiver& q);

/** chi_Q(g1,g2) = -sum_{a} g1^{s(a)} g2^{t(a)} + sum_i g1^i g2^i. Bilinear. */
long eulerForm(const Quiver& q, const std::vector<int>& g1, const std::vector<int>& g2);

/** (g1,g2) = chi(g1,g2) + chi(g2,g1); on unit vectors (i,j) = 2 delta_ij - a_ij - a_ji. */
long symEulerForm(const Quiver& q, const std::vector<int>& g1, const std::vector<int>& g2);

/**
 * Lattice reflection s_i(g) = g - (g,e_i) e_i at a real vertex. Imaginary
 * vertices are refused: there (e_i,e_i) <= 0 and the formula is no involution.
 */
std::vector<int> reflectClass(const Quiver& q, const std::vector<int>& g, int i);

/** Fourth root of unity i^k, exponent kept mod 4. */
class FourthRoot {
public:
    FourthRoot() : k_(0) {}
    static FourthRoot iPow(long e) { return FourthRoot(static_cast<int>(((e % 4) + 4) % 4)); }
    static FourthRoot minusOnePow(long e) { return iPow(2 * e); }

    int exponent() const { return k_; }
    FourthRoot operator*(const FourthRoot& o) const { return iPow(k_ + o.k_); }
    bool operator==(const FourthRoot& o) const = default;

    std::string str() const;

private:
    explicit FourthRoot(int k) : k_(k) {}
    int k_;
};

/** i^{g.g} with the plain dot product (not the Euler form). */
FourthRoot ksTwist(const std::vector<int>& g);

Quiver makeA1();
Quiver makeA2();
Quiver makeJordan();
Quiver makeKronecker();
/** One vertex with g loops. */
Quiver makeLoops(int g);

} // namespace qdt
