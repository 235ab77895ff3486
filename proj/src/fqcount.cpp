#include "qdt/fqcount.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "qdt/combinat.hpp"
#include "qdt/errors.hpp"
#include "qdt/kac.hpp"

namespace qdt {

namespace {

const Int kBruteGuard = Int(1) << 30;

Int intPow(long base, long e) {
    Int r = 1;
    for (long k = 0; k < e; ++k) r *= base;
    return r;
}

void requireFeasible(const Quiver& q, const DimVector& g, long qPrime) {
    if (!momentFiberFeasible(q, g, qPrime)) throw InfeasibleError("instance too large");
}

/** Variable offsets for the reverse-arrow entries; xstar[a] has shape g_s x g_t. */
std::vector<int> reverseVarBase(const Quiver& q, const DimVector& g) {
    std::vector<int> base(static_cast<size_t>(q.numArrows()) + 1, 0);
    for (int a = 0; a < q.numArrows(); ++a)
        base[static_cast<size_t>(a) + 1] =
            base[static_cast<size_t>(a)] + g[q.source(a)] * g[q.target(a)];
    return base;
}

/**
 * Matrix of the linear map xstar -> (sum_{t(a)=i} x_a xstar_a - sum_{s(a)=i} xstar_a x_a)_i
 * for fixed original matrices x. Rows: blocks of g_i x g_i entries per vertex;
 * columns: entries of the xstar matrices.
 */
FqMat momentSystem(const Quiver& q, const DimVector& g, const Fq& f,
                   const std::vector<FqMat>& x) {
    const int n = q.numVertices();
    std::vector<int> eqBase(static_cast<size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) eqBase[static_cast<size_t>(i) + 1] = eqBase[i] + g[i] * g[i];
    std::vector<int> varBase = reverseVarBase(q, g);

    FqMat sys(eqBase[static_cast<size_t>(n)], varBase[static_cast<size_t>(q.numArrows())]);
    for (int a = 0; a < q.numArrows(); ++a) {
        const int s = q.source(a), t = q.target(a);
        const FqMat& xa = x[static_cast<size_t>(a)];
        // (x_a xstar_a)_{r,c} at vertex t: coefficient x_a[r,k] on xstar_a[k,c].
        for (int r = 0; r < g[t]; ++r)
            for (int c = 0; c < g[t]; ++c)
                for (int k = 0; k < g[s]; ++k) {
                    int& cell = sys.at(eqBase[t] + r * g[t] + c, varBase[a] + k * g[t] + c);
                    cell = f.add(cell, xa.at(r, k));
                }
        // -(xstar_a x_a)_{r,c} at vertex s: coefficient -x_a[k,c] on xstar_a[r,k].
        for (int r = 0; r < g[s]; ++r)
            for (int c = 0; c < g[s]; ++c)
                for (int k = 0; k < g[t]; ++k) {
                    int& cell = sys.at(eqBase[s] + r * g[s] + c, varBase[a] + r * g[t] + k);
                    cell = f.sub(cell, xa.at(k, c));
                }
    }
    return sys;
}

std::vector<FqMat> sliceReverse(const Quiver& q, const DimVector& g,
                                const std::vector<int>& cells) {
    std::vector<int> base = reverseVarBase(q, g);
    std::vector<FqMat> xstar;
    for (int a = 0; a < q.numArrows(); ++a) {
        FqMat m(g[q.source(a)], g[q.target(a)]);
        std::copy(cells.begin() + base[a], cells.begin() + base[static_cast<size_t>(a) + 1],
                  m.a.begin());
        xstar.push_back(std::move(m));
    }
    return xstar;
}

FqMat transposeOf(const FqMat& m) {
    FqMat t(m.cols, m.rows);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) t.at(c, r) = m.at(r, c);
    return t;
}

/** Rows of a stacked on rows of b. */
FqMat stackRows(const FqMat& a, const FqMat& b) {
    FqMat out(a.rows + b.rows, a.cols);
    std::copy(a.a.begin(), a.a.end(), out.a.begin());
    std::copy(b.a.begin(), b.a.end(), out.a.begin() + a.a.size());
    return out;
}

using Graded = std::vector<FqMat>; // canonical RREF row basis per vertex

Graded fullGraded(const DimVector& g) {
    Graded u;
    for (int gi : g) u.push_back(FqMat::identity(gi));
    return u;
}

bool gradedIsZero(const Graded& u) {
    for (const FqMat& m : u)
        if (m.rows != 0) return false;
    return true;
}

int gradedDim(const Graded& u) {
    int d = 0;
    for (const FqMat& m : u) d += m.rows;
    return d;
}

/** Is the row space of b contained in the row space of a (a in RREF)? */
bool rowSpaceContains(const Fq& f, const FqMat& a, const FqMat& b) {
    if (b.rows == 0) return true;
    return matRank(f, stackRows(a, b)) == a.rows;
}

bool gradedEq(const Graded& a, const Graded& b) { return a == b; }

/**
 * Smallest graded subspace containing seed that is stable under the original
 * arrows of q acting through x.
 */
Graded stableClosure(const Quiver& q, const DimVector& g, const Fq& f,
                     const std::vector<FqMat>& x, Graded seed) {
    for (size_t i = 0; i < seed.size(); ++i) seed[i] = rowSpaceRref(f, seed[i]);
    bool grew = true;
    while (grew) {
        grew = false;
        for (int a = 0; a < q.numArrows(); ++a) {
            const int s = q.source(a), t = q.target(a);
            if (seed[static_cast<size_t>(s)].rows == 0) continue;
            FqMat image = matMul(f, seed[static_cast<size_t>(s)],
                                 transposeOf(x[static_cast<size_t>(a)]));
            if (rowSpaceContains(f, seed[static_cast<size_t>(t)], image)) continue;
            seed[static_cast<size_t>(t)] =
                rowSpaceRref(f, stackRows(seed[static_cast<size_t>(t)], image));
            grew = true;
        }
    }
    (void)g;
    return seed;
}

/** Graded span of the xstar-images of u. */
Graded reverseImage(const Quiver& q, const DimVector& g, const Fq& f,
                    const std::vector<FqMat>& xstar, const Graded& u) {
    Graded img;
    for (int gi : g) img.push_back(FqMat(0, gi));
    for (int a = 0; a < q.numArrows(); ++a) {
        const int s = q.source(a), t = q.target(a);
        if (u[static_cast<size_t>(t)].rows == 0) continue;
        FqMat rows =
            matMul(f, u[static_cast<size_t>(t)], transposeOf(xstar[static_cast<size_t>(a)]));
        img[static_cast<size_t>(s)] = stackRows(img[static_cast<size_t>(s)], rows);
    }
    for (size_t i = 0; i < img.size(); ++i) img[i] = rowSpaceRref(f, img[i]);
    return img;
}

std::string gradedKey(const Graded& u) {
    std::string key;
    for (const FqMat& m : u) {
        key += std::to_string(m.rows) + ":";
        for (int e : m.a) key += std::to_string(e) + ",";
        key += ";";
    }
    return key;
}

/** All subspaces of F^n as canonical RREF row bases, deterministic order. */
std::vector<FqMat> allSubspaces(const Fq& f, int n) {
    std::vector<FqMat> out;
    std::vector<std::string> seen;
    std::uint64_t total = 1;
    for (int k = 0; k < n * n; ++k) {
        total *= static_cast<std::uint64_t>(f.size());
        if (total > (std::uint64_t(1) << 22))
            throw InfeasibleError("instance too large");
    }
    for (std::uint64_t code = 0; code < total; ++code) {
        FqMat m(n, n);
        std::uint64_t c = code;
        for (int k = 0; k < n * n; ++k) {
            m.a[static_cast<size_t>(k)] = static_cast<int>(c % f.size());
            c /= static_cast<std::uint64_t>(f.size());
        }
        FqMat r = rowSpaceRref(f, m);
        std::string key = std::to_string(r.rows) + ":";
        for (int e : r.a) key += std::to_string(e) + ",";
        if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
            seen.push_back(key);
            out.push_back(std::move(r));
        }
    }
    return out;
}

bool exhaustiveSearch(const Quiver& q, const DimVector& g, const Fq& f,
                      const std::vector<FqMat>& x, const std::vector<FqMat>& xstar,
                      const std::vector<std::vector<FqMat>>& choices, const Graded& w,
                      std::map<std::string, bool>& memo) {
    if (gradedIsZero(w)) return true;
    std::string key = gradedKey(w);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    memo[key] = false; // cycle-safe: chains are strictly decreasing anyway

    Graded need = reverseImage(q, g, f, xstar, w);
    const int n = q.numVertices();
    std::vector<size_t> idx(static_cast<size_t>(n), 0);
    bool found = false;
    while (!found) {
        Graded cand;
        for (int i = 0; i < n; ++i) cand.push_back(choices[static_cast<size_t>(i)][idx[i]]);
        if (gradedDim(cand) < gradedDim(w)) {
            bool ok = true;
            for (int i = 0; i < n && ok; ++i)
                ok = rowSpaceContains(f, w[static_cast<size_t>(i)], cand[static_cast<size_t>(i)]) &&
                     rowSpaceContains(f, cand[static_cast<size_t>(i)], need[static_cast<size_t>(i)]);
            for (int a = 0; a < q.numArrows() && ok; ++a) {
                const int s = q.source(a), t = q.target(a);
                if (cand[static_cast<size_t>(s)].rows == 0) continue;
                FqMat image = matMul(f, cand[static_cast<size_t>(s)],
                                     transposeOf(x[static_cast<size_t>(a)]));
                ok = rowSpaceContains(f, cand[static_cast<size_t>(t)], image);
            }
            if (ok && exhaustiveSearch(q, g, f, x, xstar, choices, cand, memo)) found = true;
        }
        int i = 0;
        while (i < n && ++idx[static_cast<size_t>(i)] == choices[static_cast<size_t>(i)].size())
            idx[static_cast<size_t>(i++)] = 0;
        if (i == n) break;
    }
    memo[key] = found;
    return found;
}

/** N_e(L) = (1/e) sum_{d|e} mu(d) L^{e/d}: number of monic irreducibles of degree e. */
MotiveRat irreducibleCountPoly(int e) {
    MotiveRat acc = MotiveRat::zero();
    for (int d : divisorsOf(e))
        acc = acc + MotiveRat::integer(mobius(d)) * MotiveRat::L(e / d);
    return acc / MotiveRat::integer(e);
}

/** |Aut| of a torsion module with partition lam over a residue field of size t = L^e. */
MotiveRat autMotive(const Partition& lam, int e) {
    Partition conj = conjugate(lam);
    long exp = 0;
    for (int part : conj) exp += static_cast<long>(part) * part;
    MotiveRat acc = MotiveRat::L(static_cast<int>(exp * e));
    for (int m : partMultiplicities(lam))
        for (int j = 1; j <= m; ++j)
            acc = acc * (MotiveRat::one() - MotiveRat::L(-j * e));
    return acc;
}

struct Atom {
    int e = 1;
    std::vector<Partition> lams; // one per vertex, not all empty
    DimVector weight;            // e * (|lam_i|)_i
    MotiveRat autPart;           // prod_i autMotive(lam_i, e)
    long arrowPairing = 0;       // e * sum_ij a_ij <lam_i, lam_j>
};

std::vector<Atom> censusAtoms(const Quiver& q, const DimVector& g) {
    const int n = q.numVertices();
    std::vector<Atom> atoms;
    for (int e = 1; e <= ht(g); ++e) {
        // Enumerate size tuples (|lam_i|) with e*|lam_i| <= g_i, not all zero,
        // then all partition choices of those sizes.
        std::vector<int> sizes(static_cast<size_t>(n), 0);
        while (true) {
            int i = 0;
            while (i < n && ++sizes[static_cast<size_t>(i)] > g[i] / e)
                sizes[static_cast<size_t>(i++)] = 0;
            if (i == n) break;

            std::vector<std::vector<Partition>> parts(static_cast<size_t>(n));
            for (int v = 0; v < n; ++v) parts[static_cast<size_t>(v)] = partitionsOf(sizes[v]);
            std::vector<size_t> idx(static_cast<size_t>(n), 0);
            while (true) {
                Atom atom;
                atom.e = e;
                atom.weight.assign(static_cast<size_t>(n), 0);
                atom.autPart = MotiveRat::one();
                for (int v = 0; v < n; ++v) {
                    atom.lams.push_back(parts[static_cast<size_t>(v)][idx[v]]);
                    atom.weight[static_cast<size_t>(v)] = e * sizes[v];
                    atom.autPart = atom.autPart * autMotive(atom.lams.back(), e);
                }
                for (int i2 = 0; i2 < n; ++i2)
                    for (int j = 0; j < n; ++j) {
                        int aij = q.arrowCount(i2, j);
                        if (aij)
                            atom.arrowPairing +=
                                static_cast<long>(e) * aij *
                                partitionPairing(atom.lams[static_cast<size_t>(i2)],
                                                 atom.lams[static_cast<size_t>(j)]);
                    }
                atoms.push_back(std::move(atom));
                int v = 0;
                while (v < n && ++idx[static_cast<size_t>(v)] == parts[static_cast<size_t>(v)].size())
                    idx[static_cast<size_t>(v++)] = 0;
                if (v == n) break;
            }
        }
    }
    return atoms;
}

struct CensusAccumulator {
    MotiveRat withArrows = MotiveRat::zero();
    MotiveRat arrowless = MotiveRat::zero(); // completeness check side
};

void censusRec(const std::vector<Atom>& atoms, size_t idx, const DimVector& remaining,
               std::map<int, int>& degreeUse, const MotiveRat& autPart, long arrowExp,
               const MotiveRat& factorialPart, CensusAccumulator& acc) {
    if (isZeroVec(remaining)) {
        // ways = prod_e N_e (N_e - 1) ... (N_e - R_e + 1), divided by the
        // per-atom multiplicity factorials already folded into factorialPart.
        MotiveRat ways = MotiveRat::one();
        for (const auto& [e, used] : degreeUse) {
            MotiveRat ne = irreducibleCountPoly(e);
            for (int k = 0; k < used; ++k)
                ways = ways * (ne - MotiveRat::integer(k));
        }
        ways = ways / factorialPart;
        acc.withArrows = acc.withArrows + ways / autPart * MotiveRat::L(static_cast<int>(arrowExp));
        acc.arrowless = acc.arrowless + ways / autPart;
        return;
    }
    if (idx == atoms.size()) return;
    const Atom& atom = atoms[idx];
    // multiplicity 0 branch
    censusRec(atoms, idx + 1, remaining, degreeUse, autPart, arrowExp, factorialPart, acc);
    DimVector rem = remaining;
    MotiveRat aut = autPart;
    MotiveRat fact = factorialPart;
    int reps = 0;
    for (int r = 1; dvLeq(atom.weight, rem); ++r) {
        rem = dvSub(rem, atom.weight);
        aut = aut * atom.autPart;
        fact = fact * MotiveRat::integer(r);
        degreeUse[atom.e] += 1;
        ++reps;
        censusRec(atoms, idx + 1, rem, degreeUse, aut, arrowExp + r * atom.arrowPairing, fact,
                  acc);
    }
    if (reps) {
        degreeUse[atom.e] -= reps;
        if (degreeUse[atom.e] == 0) degreeUse.erase(atom.e);
    }
}

} // namespace

Int groupOrderAt(const DimVector& g, long q) {
    Int order = 1;
    for (int gi : g) {
        Int qn = intPow(q, gi);
        for (int k = 0; k < gi; ++k) order *= qn - intPow(q, k);
    }
    return order;
}

long momentCellCount(const Quiver& q, const DimVector& g) {
    long m = 0;
    for (int a = 0; a < q.numArrows(); ++a)
        m += static_cast<long>(g[q.source(a)]) * g[q.target(a)];
    return m;
}

bool momentFiberFeasible(const Quiver& q, const DimVector& g, long qPrime) {
    if (static_cast<int>(g.size()) != q.numVertices() || !isNonNegative(g))
        throw std::invalid_argument("bad dimension vector");
    return intPow(qPrime, 2 * momentCellCount(q, g)) <= kBruteGuard;
}

Int countMomentFiber(const Quiver& q, const DimVector& g, long qPrime) {
    requireFeasible(q, g, qPrime);
    Fq f(qPrime);
    const long m = momentCellCount(q, g);
    const std::uint64_t total = intPow(qPrime, m).convert_to<std::uint64_t>();

    Int count = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<FqMat> x = decodeRep(q, g, f, code);
        FqMat sys = momentSystem(q, g, f, x);
        int nullity = static_cast<int>(m) - matRank(f, std::move(sys));
        count += intPow(qPrime, nullity);
    }
    return count;
}

MomentFiberCount stackCount(const Quiver& q, const DimVector& g, long qPrime) {
    MomentFiberCount out;
    out.quiverHash = q.canonicalString();
    out.gamma = g;
    out.q = qPrime;
    out.raw = countMomentFiber(q, g, qPrime);
    out.stack = Rat(out.raw, groupOrderAt(g, qPrime));
    return out;
}

bool isSeminilpotent(const Quiver& q, const DimVector& g, const Fq& f,
                     const std::vector<FqMat>& x, const std::vector<FqMat>& xstar) {
    Graded u = fullGraded(g);
    while (!gradedIsZero(u)) {
        Graded next = stableClosure(q, g, f, x, reverseImage(q, g, f, xstar, u));
        if (gradedEq(next, u)) return false;
        u = std::move(next);
    }
    return true;
}

bool seminilpotentExhaustive(const Quiver& q, const DimVector& g, const Fq& f,
                             const std::vector<FqMat>& x, const std::vector<FqMat>& xstar) {
    std::vector<std::vector<FqMat>> choices;
    for (int gi : g) choices.push_back(allSubspaces(f, gi));
    std::map<std::string, bool> memo;
    Graded top = fullGraded(g);
    // The ambient space is trivially stable under the originals.
    return exhaustiveSearch(q, g, f, x, xstar, choices, top, memo);
}

Int countSeminilpotent(const Quiver& q, const DimVector& g, long qPrime) {
    requireFeasible(q, g, qPrime);
    Fq f(qPrime);
    const long m = momentCellCount(q, g);
    const std::uint64_t total = intPow(qPrime, m).convert_to<std::uint64_t>();

    Int count = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<FqMat> x = decodeRep(q, g, f, code);
        std::vector<std::vector<int>> kernel = nullspaceBasis(f, momentSystem(q, g, f, x));
        const int dimK = static_cast<int>(kernel.size());
        const std::uint64_t combos = intPow(qPrime, dimK).convert_to<std::uint64_t>();
        std::vector<int> cells(static_cast<size_t>(m), 0);
        for (std::uint64_t sol = 0; sol < combos; ++sol) {
            std::fill(cells.begin(), cells.end(), 0);
            std::uint64_t c = sol;
            for (int b = 0; b < dimK; ++b) {
                int coef = static_cast<int>(c % static_cast<std::uint64_t>(f.size()));
                c /= static_cast<std::uint64_t>(f.size());
                if (coef == 0) continue;
                for (long v = 0; v < m; ++v)
                    cells[static_cast<size_t>(v)] =
                        f.add(cells[static_cast<size_t>(v)],
                              f.mul(coef, kernel[static_cast<size_t>(b)][static_cast<size_t>(v)]));
            }
            if (isSeminilpotent(q, g, f, x, sliceReverse(q, g, cells)))
                count += 1;
        }
    }
    return count;
}

MotiveRat interpolateMotive(const std::vector<std::pair<long, Rat>>& samples, int degreeBound) {
    if (degreeBound < 0) throw std::invalid_argument("negative degree bound");
    const size_t need = static_cast<size_t>(degreeBound) + 1;
    if (samples.size() < need)
        throw std::invalid_argument("interpolation needs degree bound + 1 samples");
    for (size_t i = 0; i < samples.size(); ++i)
        for (size_t j = i + 1; j < samples.size(); ++j)
            if (samples[i].first == samples[j].first)
                throw std::invalid_argument("duplicate sample point");

    // Lagrange interpolation through the first degreeBound+1 samples.
    MotiveRat result = MotiveRat::zero();
    for (size_t i = 0; i < need; ++i) {
        MotiveRat basis = MotiveRat::fromRat(samples[i].second);
        for (size_t j = 0; j < need; ++j) {
            if (i == j) continue;
            basis = basis * (MotiveRat::L() - MotiveRat::integer(samples[j].first)) /
                    MotiveRat::integer(samples[i].first - samples[j].first);
        }
        result = result + basis;
    }
    for (const auto& [p, val] : samples)
        if (result.evalAtPrime(p) != val)
            throw std::domain_error("not polynomial-count at this degree bound");
    return result;
}

MotiveRat censusFiberMotive(const Quiver& q, const DimVector& g) {
    if (static_cast<int>(g.size()) != q.numVertices() || !isNonNegative(g))
        throw std::invalid_argument("bad dimension vector");
    const long m = momentCellCount(q, g);
    long d = 0;
    for (int gi : g) d += static_cast<long>(gi) * gi;

    std::vector<Atom> atoms = censusAtoms(q, g);
    CensusAccumulator acc;
    std::map<int, int> degreeUse;
    censusRec(atoms, 0, g, degreeUse, MotiveRat::one(), 0, MotiveRat::one(), acc);

    MotiveRat glProduct = MotiveRat::one();
    for (int gi : g) glProduct = glProduct * glMotive(gi);

    if (acc.arrowless * glProduct != MotiveRat::L(static_cast<int>(d)))
        throw std::logic_error("census fails the completeness identity");

    MotiveRat fiber = MotiveRat::L(static_cast<int>(m - d)) * glProduct * acc.withArrows;
    if (!fiber.isPolyInL())
        throw std::logic_error("census fiber motive is not polynomial");
    return fiber;
}

} // namespace qdt
