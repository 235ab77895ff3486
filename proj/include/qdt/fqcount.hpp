#pragma once
#include <string>
#include <vector>

#include "qdt/dimvec.hpp"
#include "qdt/gf.hpp"
#include "qdt/motive.hpp"
#include "qdt/quiver.hpp"
#include "qdt/rational.hpp"

namespace qdt {

struct MomentFiberCount {
    std::string quiverHash;
    DimVector gamma;
    long q = 0;
    Int raw;
    Rat stack;
};

/** |G_g(F_q)| = prod_i prod_{k=0}^{g_i-1} (q^{g_i} - q^k). */
Int groupOrderAt(const DimVector& g, long q);

/** dim Rep(Q, g) = sum_a g_{s(a)} g_{t(a)}. */
long momentCellCount(const Quiver& q, const DimVector& g);

/** Brute-force guard q^(2 dim Rep) <= 2^30. */
bool momentFiberFeasible(const Quiver& q, const DimVector& g, long qPrime);

/**
 * |mu_g^{-1}(0)(F_q)| for the preprojective relation sum_a (x_a x_{a*} - x_{a*} x_a) = 0
 * read blockwise at every vertex. The x_a are enumerated; for fixed x_a the
 * relation is linear homogeneous in the x_{a*}, so those contribute the size
 * of a kernel. Guard exceeded -> InfeasibleError "instance too large".
 */
Int countMomentFiber(const Quiver& q, const DimVector& g, long qPrime);

/** Raw count together with the stacky weight raw / |G_g(F_q)|. */
MomentFiberCount stackCount(const Quiver& q, const DimVector& g, long qPrime);

/**
 * Seminilpotency of a double-quiver representation (x = original arrows,
 * xstar = reverses, xstar[a] paired with x[a]): does a graded filtration
 * V = W_0 >= W_1 >= ... >= 0 exist with x_a(W_k) <= W_k and
 * x_{a*}(W_k) <= W_{k+1}? Decided by the greedy minimal chain
 * U_0 = V, U_{k+1} = smallest x_a-stable graded subspace containing
 * sum_a x_{a*}(U_k); the chain is decreasing and sits term-wise inside any
 * valid filtration, so it reaches 0 exactly when one exists.
 */
bool isSeminilpotent(const Quiver& q, const DimVector& g, const Fq& f,
                     const std::vector<FqMat>& x, const std::vector<FqMat>& xstar);

/** Reference decision by exhaustive search over all graded filtrations. */
bool seminilpotentExhaustive(const Quiver& q, const DimVector& g, const Fq& f,
                             const std::vector<FqMat>& x, const std::vector<FqMat>& xstar);

/** Number of points of mu_g^{-1}(0)(F_q) passing isSeminilpotent. */
Int countSeminilpotent(const Quiver& q, const DimVector& g, long qPrime);

/**
 * Recovers a polynomial-count motive from exact evaluations at distinct
 * primes. Needs degreeBound+1 samples; all samples beyond the first
 * degreeBound+1 act as held-out validation. Inconsistency ->
 * domain_error "not polynomial-count at this degree bound".
 */
MotiveRat interpolateMotive(const std::vector<std::pair<long, Rat>>& samples, int degreeBound);

/**
 * Exact fiber motive [mu_g^{-1}(0)] as an element of Q[L], computed by a
 * census over Jordan-type decompositions: summing q^{dim End x} over the
 * x-side representations reduces to a sum over assignments of partition
 * tuples to Frobenius orbits of eigenvalues ("atoms" (e, (lam_i)_i)), with
 * automorphism factors alpha_lam and arrow interactions e<lam_s,lam_t>.
 * Internally asserts the census completeness identity (the arrowless
 * weight sum collapses to L^(sum g_i^2)) and that the result is a
 * polynomial in L.
 */
MotiveRat censusFiberMotive(const Quiver& q, const DimVector& g);

} // namespace qdt
