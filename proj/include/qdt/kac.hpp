#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qdt/dimvec.hpp"
#include "qdt/gf.hpp"
#include "qdt/quiver.hpp"
#include "qdt/rational.hpp"

namespace qdt {

/**
 * Counting polynomials a_g(q) for absolutely indecomposable representation
 * classes, one entry per 0 < ht(g) <= bound. Coefficients ascending in q; the
 * zero polynomial is stored as an empty vector.
 */
struct KacTable {
    std::string quiverHash;
    int bound = 0;
    std::map<DimVector, std::vector<Int>, GradedLex> poly;

    const std::vector<Int>& at(const DimVector& g) const;
    /** {g -> ascending coefficient array} as a JSON object. */
    std::string toJson() const;
};

/**
 * Hua's generating-function method: sum over I-tuples of partitions, then
 * (q-1) * plethystic Log. Exact rational-function arithmetic throughout; a
 * coefficient that fails to come out polynomial with non-negative integer
 * coefficients signals a bug and raises logic_error.
 */
KacTable huaKac(const Quiver& q, int bound);

Rat evalKacPoly(const std::vector<Int>& coeffs, const Rat& q);

/**
 * One isomorphism-class orbit of representations of a fixed dimension vector
 * over a fixed finite field. rep is the numerically least configuration code
 * in the orbit (entries packed most-significant-first in a fixed arrow/cell
 * order, so the least code is the lexicographically least representative).
 */
struct OrbitRecord {
    std::uint64_t rep = 0;
    long size = 0;
    bool indecomposable = false;
};

struct OrbitData {
    std::vector<OrbitRecord> orbits;
    std::uint64_t totalConfigs = 0;

    long indecomposableCount() const;
};

/**
 * Full orbit enumeration of Rep(Q, g) over F under the product of general
 * linear groups. Guard: |F|^(#matrix cells) <= 2^24, else InfeasibleError
 * "instance too large" (the idempotent scan inside the indecomposability test
 * is guarded the same way).
 */
OrbitData enumerateOrbits(const Quiver& q, const DimVector& g, const Fq& f);

/** Matrices of the configuration encoded by code, one per arrow. */
std::vector<FqMat> decodeRep(const Quiver& q, const DimVector& g, const Fq& f,
                             std::uint64_t code);

/** Isomorphism classes with local endomorphism ring over the prime field F_q. */
long bruteIndecomposableClasses(const Quiver& q, const DimVector& g, long qPrime);

/** Same count over an arbitrary small field (used for Galois descent). */
long indecomposableClassesOver(const Quiver& q, const DimVector& g, const Fq& f);

/**
 * Absolutely indecomposable classes over F_q, by Moebius descent through the
 * extension fields F_{q^e}. The result of the descent is checked to be a
 * non-negative integer.
 */
long bruteAbsIndec(const Quiver& q, const DimVector& g, long qPrime);

/** Root multiplicity a_g(0); 0 when g is not a root. Throws when g is outside the table. */
long rootMultiplicity(const KacTable& table, const DimVector& g);

/**
 * dim U(n+)_g for the Kac-Moody algebra of a loop-free quiver: coefficient of
 * e_g in prod_{roots a} (1 - e_a)^{-mult(a)}. Loops present -> domain_error
 * "imaginary vertices unsupported by this oracle".
 */
long kmWeightDim(const Quiver& q, const DimVector& g);

} // namespace qdt
