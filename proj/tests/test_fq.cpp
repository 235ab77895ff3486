#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdint>

#include "doctest.h"
#include "qdt/errors.hpp"
#include "qdt/fqcount.hpp"
#include "qdt/kac.hpp"
#include "qdt/motive.hpp"
#include "qdt/quiver.hpp"

using namespace qdt;

namespace {

/** Decode the reverse-arrow matrices (shape g_s x g_t per arrow) from a code. */
std::vector<FqMat> decodeReverse(const Quiver& q, const DimVector& g, const Fq& f,
                                 std::uint64_t code) {
    std::vector<FqMat> mats;
    for (int a = 0; a < q.numArrows(); ++a)
        mats.emplace_back(g[q.source(a)], g[q.target(a)]);
    for (int a = q.numArrows() - 1; a >= 0; --a)
        for (size_t k = mats[static_cast<size_t>(a)].a.size(); k-- > 0;) {
            mats[static_cast<size_t>(a)].a[k] = static_cast<int>(code % f.size());
            code /= static_cast<std::uint64_t>(f.size());
        }
    return mats;
}

/** mu(x, xstar) == 0, checked by direct matrix arithmetic blockwise. */
bool momentVanishes(const Quiver& q, const DimVector& g, const Fq& f,
                    const std::vector<FqMat>& x, const std::vector<FqMat>& xstar) {
    for (int i = 0; i < q.numVertices(); ++i) {
        FqMat block(g[i], g[i]);
        for (int a = 0; a < q.numArrows(); ++a) {
            if (q.target(a) == i)
                block = matAdd(f, block, matMul(f, x[static_cast<size_t>(a)],
                                                xstar[static_cast<size_t>(a)]));
            if (q.source(a) == i)
                block = matSub(f, block, matMul(f, xstar[static_cast<size_t>(a)],
                                                x[static_cast<size_t>(a)]));
        }
        if (!block.isZero()) return false;
    }
    return true;
}

std::uint64_t uintPow(std::uint64_t b, long e) {
    std::uint64_t r = 1;
    for (long k = 0; k < e; ++k) r *= b;
    return r;
}

/** Independent fiber count: full double enumeration, no linear algebra. */
long fiberByDoubleScan(const Quiver& q, const DimVector& g, long p) {
    Fq f(p);
    const long m = momentCellCount(q, g);
    const std::uint64_t side = uintPow(static_cast<std::uint64_t>(p), m);
    long count = 0;
    for (std::uint64_t cx = 0; cx < side; ++cx) {
        std::vector<FqMat> x = decodeRep(q, g, f, cx);
        for (std::uint64_t cs = 0; cs < side; ++cs)
            if (momentVanishes(q, g, f, x, decodeReverse(q, g, f, cs))) ++count;
    }
    return count;
}

} // namespace

TEST_CASE("automorphism group orders") {
    CHECK(groupOrderAt({1}, 2) == 1);
    CHECK(groupOrderAt({1}, 5) == 4);
    CHECK(groupOrderAt({2}, 2) == 6);
    CHECK(groupOrderAt({2}, 3) == 48);
    CHECK(groupOrderAt({3}, 2) == 168);
    CHECK(groupOrderAt({2, 1}, 3) == 96);
    for (int n = 1; n <= 3; ++n)
        for (long p : {2L, 3L})
            CHECK(Rat(groupOrderAt({n}, p)) == glMotive(n).evalAtPrime(p));
}

TEST_CASE("moment fiber counts, pinned") {
    // One loop, dimension 1: the commutator of scalars is identically zero.
    CHECK(countMomentFiber(makeJordan(), {1}, 2) == 4);
    CHECK(countMomentFiber(makeJordan(), {1}, 3) == 9);
    CHECK(countMomentFiber(makeJordan(), {1}, 5) == 25);
    // A2 at (1,1): pairs (x, y) with xy = 0, i.e. 2q-1 of q^2.
    CHECK(countMomentFiber(makeA2(), {1, 1}, 2) == 3);
    CHECK(countMomentFiber(makeA2(), {1, 1}, 3) == 5);
    CHECK(countMomentFiber(makeA2(), {1, 1}, 5) == 9);
    // Commuting pairs of 2x2 matrices over F_2.
    CHECK(countMomentFiber(makeJordan(), {2}, 2) == 88);
}

TEST_CASE("moment fiber counts agree with the direct double scan") {
    for (long p : {2L, 3L}) {
        CHECK(countMomentFiber(makeJordan(), {1}, p) == fiberByDoubleScan(makeJordan(), {1}, p));
        CHECK(countMomentFiber(makeA2(), {1, 1}, p) == fiberByDoubleScan(makeA2(), {1, 1}, p));
        CHECK(countMomentFiber(makeKronecker(), {1, 1}, p) ==
              fiberByDoubleScan(makeKronecker(), {1, 1}, p));
    }
    CHECK(countMomentFiber(makeJordan(), {2}, 2) == fiberByDoubleScan(makeJordan(), {2}, 2));
    CHECK(countMomentFiber(makeLoops(2), {1}, 2) == fiberByDoubleScan(makeLoops(2), {1}, 2));
    CHECK(countMomentFiber(makeA2(), {2, 1}, 3) == fiberByDoubleScan(makeA2(), {2, 1}, 3));
}

TEST_CASE("stack counts") {
    MomentFiberCount j1 = stackCount(makeJordan(), {1}, 2);
    CHECK(j1.raw == 4);
    CHECK(j1.stack == Rat(4));
    MomentFiberCount j2 = stackCount(makeJordan(), {2}, 2);
    CHECK(j2.raw == 88);
    CHECK(j2.stack == Rat(44, 3));
    MomentFiberCount a2 = stackCount(makeA2(), {1, 1}, 3);
    CHECK(a2.raw == 5);
    CHECK(a2.stack == Rat(5, 4));
}

TEST_CASE("enumeration guard") {
    CHECK(momentFiberFeasible(makeJordan(), {2}, 5));
    CHECK_FALSE(momentFiberFeasible(makeLoops(2), {3}, 2));
    CHECK_THROWS_WITH_AS(countMomentFiber(makeLoops(2), {3}, 2), "instance too large",
                         InfeasibleError);
    CHECK_THROWS_WITH_AS(countSeminilpotent(makeLoops(2), {3}, 2), "instance too large",
                         InfeasibleError);
}

TEST_CASE("seminilpotency of single representations") {
    Fq f3(3);
    Quiver jo = makeJordan();
    // x* acting invertibly on a nonzero space can never reach zero.
    FqMat one1(1, 1);
    one1.at(0, 0) = 1;
    FqMat zero1(1, 1);
    CHECK_FALSE(isSeminilpotent(jo, {1}, f3, {zero1}, {one1}));
    CHECK_FALSE(isSeminilpotent(jo, {1}, f3, {one1}, {one1}));
    CHECK(isSeminilpotent(jo, {1}, f3, {one1}, {zero1}));
    CHECK(isSeminilpotent(jo, {1}, f3, {zero1}, {zero1}));

    Quiver a2 = makeA2();
    CHECK(isSeminilpotent(a2, {1, 1}, f3, {one1}, {zero1}));
    CHECK(isSeminilpotent(a2, {1, 1}, f3, {zero1}, {one1}));

    // Nilpotent x* with no room to be graded-compatible: x = 1, x* = J(0).
    Fq f2(2);
    FqMat jblock(2, 2);
    jblock.at(0, 1) = 1;
    FqMat id2 = FqMat::identity(2);
    // x stabilizes everything, x* = jblock: U_1 = closure(im x*) = span(e1) under x = id,
    // U_2 = x*(U_1) = 0: seminilpotent.
    CHECK(isSeminilpotent(jo, {2}, f2, {id2}, {jblock}));
    // x* = id2 stalls immediately.
    CHECK_FALSE(isSeminilpotent(jo, {2}, f2, {jblock}, {id2}));
}

TEST_CASE("greedy filtration agrees with exhaustive search on small instances") {
    struct Case {
        Quiver q;
        DimVector g;
    };
    std::vector<Case> cases = {{makeJordan(), {1}},       {makeJordan(), {2}},
                               {makeA2(), {1, 1}},        {makeA2(), {2, 0}},
                               {makeKronecker(), {1, 1}}, {makeLoops(2), {1}},
                               {makeLoops(2), {2}}};
    Fq f2(2);
    long disagreements = 0, checked = 0;
    for (const Case& c : cases) {
        const long m = momentCellCount(c.q, c.g);
        const std::uint64_t side = uintPow(2, m);
        for (std::uint64_t cx = 0; cx < side; ++cx) {
            std::vector<FqMat> x = decodeRep(c.q, c.g, f2, cx);
            for (std::uint64_t cs = 0; cs < side; ++cs) {
                std::vector<FqMat> xstar = decodeReverse(c.q, c.g, f2, cs);
                bool greedy = isSeminilpotent(c.q, c.g, f2, x, xstar);
                bool exhaustive = seminilpotentExhaustive(c.q, c.g, f2, x, xstar);
                if (greedy != exhaustive) ++disagreements;
                ++checked;
            }
        }
    }
    CHECK(disagreements == 0);
    CHECK(checked > 60000);
}

TEST_CASE("seminilpotent locus counts") {
    CHECK(countSeminilpotent(makeJordan(), {1}, 2) == 2); // x* forced to 0, x free
    CHECK(countSeminilpotent(makeJordan(), {1}, 3) == 3);
    CHECK(countSeminilpotent(makeJordan(), {1}, 5) == 5);
    CHECK(countSeminilpotent(makeA2(), {1, 1}, 2) == 3); // every fiber point passes
    CHECK(countSeminilpotent(makeA2(), {1, 1}, 3) == 5);
    CHECK(countSeminilpotent(makeA1(), {0}, 2) == 1); // zero representation only
    // Kronecker (1,1): x = 0 or x* = 0, counted by hand as 2q^2 - 1.
    CHECK(countSeminilpotent(makeKronecker(), {1, 1}, 2) == 7);
    CHECK(countSeminilpotent(makeKronecker(), {1, 1}, 3) == 17);
}

TEST_CASE("polynomial interpolation of counts") {
    MotiveRat sq = interpolateMotive({{2, Rat(4)}, {3, Rat(9)}, {5, Rat(25)}}, 2);
    CHECK(sq == MotiveRat::L(2));
    MotiveRat lin = interpolateMotive({{2, Rat(3)}, {3, Rat(5)}, {5, Rat(9)}}, 1);
    CHECK(lin == MotiveRat::integer(2) * MotiveRat::L() - MotiveRat::one());
    CHECK_THROWS_WITH_AS(interpolateMotive({{2, Rat(3)}, {3, Rat(5)}, {5, Rat(10)}}, 1),
                         "not polynomial-count at this degree bound", std::domain_error);
    CHECK_THROWS_AS(interpolateMotive({{2, Rat(3)}}, 1), std::invalid_argument);
    CHECK_THROWS_AS(interpolateMotive({{2, Rat(3)}, {2, Rat(3)}}, 1), std::invalid_argument);
    // Rational values interpolate too (stacky counts).
    MotiveRat half = interpolateMotive({{2, Rat(1, 2)}, {3, Rat(1, 2)}}, 1);
    CHECK(half == MotiveRat::fromRat(Rat(1, 2)));
}

TEST_CASE("census fiber motive, pinned closed forms") {
    CHECK(censusFiberMotive(makeJordan(), {1}) == MotiveRat::L(2));
    CHECK(censusFiberMotive(makeA2(), {1, 1}) ==
          MotiveRat::integer(2) * MotiveRat::L() - MotiveRat::one());
    // Commuting pairs of 2x2 matrices: L^6 + L^5 - L^3.
    CHECK(censusFiberMotive(makeJordan(), {2}) == MotiveRat::parse("L^6+L^5-L^3"));
    // A1 has empty representation spaces: the fiber is a point.
    CHECK(censusFiberMotive(makeA1(), {2}) == MotiveRat::one());
    CHECK(censusFiberMotive(makeKronecker(), {1, 1}) == MotiveRat::parse("L^3+L^2-L"));
}

TEST_CASE("census agrees with brute force at every feasible prime") {
    struct Case {
        Quiver q;
        DimVector g;
    };
    std::vector<Case> cases = {
        {makeJordan(), {1}},    {makeJordan(), {2}},    {makeJordan(), {3}},
        {makeA2(), {1, 0}},     {makeA2(), {1, 1}},     {makeA2(), {2, 1}},
        {makeA2(), {2, 0}},     {makeKronecker(), {1, 1}}, {makeKronecker(), {2, 1}},
        {makeLoops(2), {1}},    {makeLoops(2), {2}},
    };
    int checked = 0;
    for (const Case& c : cases)
        for (long p : {2L, 3L, 5L}) {
            if (!momentFiberFeasible(c.q, c.g, p)) continue;
            CHECK(Rat(countMomentFiber(c.q, c.g, p)) == censusFiberMotive(c.q, c.g).evalAtPrime(p));
            ++checked;
        }
    CHECK(checked >= 25);
}

TEST_CASE("seminilpotent leading coefficient matches the weight-space dimension") {
    struct Case {
        Quiver q;
        DimVector g;
    };
    std::vector<Case> cases = {
        {makeA2(), {1, 0}}, {makeA2(), {1, 1}}, {makeA2(), {2, 1}}, {makeKronecker(), {1, 1}}};
    for (const Case& c : cases) {
        const int degBound = static_cast<int>(2 * momentCellCount(c.q, c.g));
        std::vector<std::pair<long, Rat>> samples;
        for (long p : {2L, 3L, 5L, 7L, 11L})
            samples.emplace_back(p, Rat(countSeminilpotent(c.q, c.g, p)));
        MotiveRat interp = interpolateMotive(samples, degBound);

        long d = 0;
        for (int gi : c.g) d += static_cast<long>(gi) * gi;
        d -= eulerForm(c.q, c.g, c.g);
        auto coeffs = interp.polyCoeffsInL();
        CHECK(static_cast<long>(coeffs.size()) - 1 == d);
        CHECK(coeffs.back() == Rat(kmWeightDim(c.q, c.g)));
    }
}
