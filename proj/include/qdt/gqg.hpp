#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qdt/dimvec.hpp"
#include "qdt/motive.hpp"
#include "qdt/quiver.hpp"

namespace qdt {

/**
 * Generator E_{(i,l)}: vertex i, layer l >= 1. Layers above one exist only at
 * loop vertices; the weight of the generator is l * e_i.
 */
struct GenIdx {
    int vertex = 0;
    int layer = 1;
    auto operator<=>(const GenIdx&) const = default;
};

using Word = std::vector<GenIdx>;

DimVector wordWeight(const Word& w, int numVertices);

/** Finite Q(v)-combination of words; the free graded algebra over the generators. */
class FreeElt {
public:
    FreeElt() = default;
    static FreeElt zero() { return {}; }
    static FreeElt one() { return term({}); }
    static FreeElt term(Word w, RatV c = RatV::one());

    /** Adds c * w, pruning the entry when the total cancels. */
    void add(const Word& w, const RatV& c);

    const std::map<Word, RatV>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }
    bool operator==(const FreeElt& o) const { return terms_ == o.terms_; }

    FreeElt operator+(const FreeElt& o) const;
    FreeElt operator-(const FreeElt& o) const;
    /** Concatenation product. */
    FreeElt operator*(const FreeElt& o) const;
    FreeElt scaled(const RatV& c) const;

    /** Common weight of all words; throws on inhomogeneous input. */
    DimVector weight(int numVertices) const;

    std::string str() const;

private:
    std::map<Word, RatV> terms_;
};

/** Element of the tensor square, components kept as word pairs. */
class TensorElt {
public:
    void add(const Word& left, const Word& right, const RatV& c);
    const std::map<std::pair<Word, Word>, RatV>& terms() const { return terms_; }
    bool isZero() const { return terms_.empty(); }

private:
    std::map<std::pair<Word, Word>, RatV> terms_;
};

/** [n]_u = u^{n-1} + u^{n-3} + ... + u^{1-n}; [0]_u = 0. */
RatV qInt(int n, const RatV& u);
/** [n]_u! = [1]_u [2]_u ... [n]_u; [0]_u! = 1. */
RatV qFactorial(int n, const RatV& u);

/**
 * Values {E_iota, E_iota} of the form on single generators. Every generator
 * defaults to 1/(1 - v^{-2}); entries in overrides replace that and must be
 * nonzero.
 */
struct FormParams {
    std::map<GenIdx, RatV> overrides;
    RatV value(const GenIdx& g) const;
};

/**
 * The coproduct and the bilinear form it induces on the free algebra.
 *
 * The coproduct sends E_{(i,l)} to sum_{l1+l2=l} v_i^{l1 l2} E_{(i,l1)} (x)
 * E_{(i,l2)} with v_i = v^{(e_i,e_i)/2}, and extends to products through the
 * twisted tensor multiplication (a(x)b)(c(x)d) = v^{eps (|b|,|c|)} (ac(x)bd).
 * The form is the unique bilinear pairing with {E_iota, E_iota} = v_iota,
 * orthogonal weight spaces, and {x y, z} = {x (x) y, delta(z)}.
 */
class CoproductForm {
public:
    explicit CoproductForm(const Quiver& q, int eps = +1, FormParams params = {});

    const Quiver& quiver() const { return q_; }
    int eps() const { return eps_; }

    const TensorElt& coproduct(const Word& w) const;
    TensorElt coproduct(const FreeElt& x) const;

    RatV pairWords(const Word& x, const Word& y) const;
    RatV pairing(const FreeElt& x, const FreeElt& y) const;

private:
    Quiver q_;
    int eps_;
    FormParams params_;
    mutable std::map<Word, TensorElt> coprodMemo_;
    mutable std::map<std::pair<Word, Word>, RatV> pairMemo_;

    TensorElt tensorMul(const TensorElt& a, const TensorElt& b) const;
    TensorElt generatorCoproduct(const GenIdx& g) const;
};

/** All words of total weight g, lexicographic in the generator order. */
std::vector<Word> gradedWords(const Quiver& q, const DimVector& g);

/**
 * The quantum Serre element attached to a generator iota and a distinct real
 * vertex j: sum over l1 + l2 = 1 - (|iota|, e_j) of
 * (-1)^{l1} E_j^{l1} E_iota E_j^{l2} / ([l1]_v! [l2]_v!).
 */
FreeElt serreElement(const Quiver& q, const GenIdx& iota, int j);

/** [E_a, E_b] at a common one-loop vertex. */
FreeElt commutatorElement(const GenIdx& a, const GenIdx& b);

/**
 * Spanning set of the weight-g slice of the two-sided ideal generated by all
 * quantum Serre elements and by the layer commutators at one-loop vertices.
 */
std::vector<FreeElt> relationIdeal(const Quiver& q, const DimVector& g);

/**
 * dim U+[g]: the rank of the bilinear form on the weight-g slice after the
 * relation ideal is quotiented out. Computed twice, as the Gram rank on the
 * full word basis and as the Gram rank on a complement of the relation slice;
 * the relation slice is first checked to pair to zero against every word.
 */
long uPlusDim(const Quiver& q, const DimVector& g, const FormParams& params = {}, int eps = +1);

struct CalibrationReport {
    bool plusPasses = false;
    bool minusPasses = false;
    /** Twist sign selected for downstream defaults. */
    int chosen = +1;
};

/**
 * Tests, for both twist signs, whether every relation element pairs to zero
 * against every word of its weight on the two-vertex sample quivers up to
 * height 4, far enough to reach the first Serre slice on each. Throws when
 * neither sign passes.
 */
CalibrationReport calibrateEpsilon();

struct IrrPrediction {
    long count = 0;
    /** (oracle name, value) for every oracle that applied; all values agree. */
    std::vector<std::pair<std::string, long>> oracles;
};

/**
 * Number of irreducible components of the seminilpotent locus at weight g,
 * cross-checked over every applicable oracle: the layer closed forms at
 * g = l e_i, the Kac-Moody weight-space dimension for loop-free quivers, the
 * form rank, and the leading coefficient of the interpolated seminilpotent
 * count when brute-force enumeration is cheap. Disagreement is a hard error.
 */
IrrPrediction predictedIrrCount(const Quiver& q, const DimVector& g);

} // namespace qdt
