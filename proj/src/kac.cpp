#include "qdt/kac.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qdt/combinat.hpp"
#include "qdt/errors.hpp"
#include "qdt/motive.hpp"
#include "qdt/torus_series.hpp"

namespace qdt {

namespace {

constexpr std::uint64_t kEnumGuard = std::uint64_t(1) << 24;

/** phi_m(t) = prod_{j=1}^m (1 - t^j) at t = L^{-1}, accumulated into denom. */
void mulPhiAtInvL(MotiveRat& denom, int m) {
    for (int j = 1; j <= m; ++j)
        denom = denom * (MotiveRat::one() - MotiveRat::L(-j));
}

/** b_lam(L^{-1}) = prod_k phi_{m_k(lam)}(L^{-1}). */
MotiveRat huaDenominator(const Partition& lam) {
    MotiveRat d = MotiveRat::one();
    for (int m : partMultiplicities(lam))
        if (m > 0) mulPhiAtInvL(d, m);
    return d;
}

long huaExponent(const Quiver& q, const std::vector<Partition>& lams) {
    const int n = q.numVertices();
    long e = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int aij = q.arrowCount(i, j);
            if (aij) e += static_cast<long>(aij) * partitionPairing(lams[i], lams[j]);
        }
    for (int i = 0; i < n; ++i) e -= partitionPairing(lams[i], lams[i]);
    return e;
}

/** Calls fn once per tuple (lam_1,...,lam_n) with |lam_i| = g_i. */
template <typename Fn>
void forEachPartitionTuple(const DimVector& g, Fn&& fn) {
    const int n = static_cast<int>(g.size());
    std::vector<std::vector<Partition>> choices(n);
    for (int i = 0; i < n; ++i) choices[i] = partitionsOf(g[i]);
    std::vector<size_t> idx(n, 0);
    std::vector<Partition> tuple(n);
    while (true) {
        for (int i = 0; i < n; ++i) tuple[i] = choices[i][idx[i]];
        fn(tuple);
        int i = 0;
        while (i < n && ++idx[i] == choices[i].size()) idx[i++] = 0;
        if (i == n) break;
    }
}

struct CellLayout {
    std::vector<int> rows, cols; // per arrow
    int totalCells = 0;
};

CellLayout layoutOf(const Quiver& q, const DimVector& g) {
    if (static_cast<int>(g.size()) != q.numVertices())
        throw std::invalid_argument("dimension vector size mismatch");
    if (!isNonNegative(g)) throw std::invalid_argument("negative dimension vector");
    CellLayout lay;
    for (int a = 0; a < q.numArrows(); ++a) {
        lay.rows.push_back(g[q.target(a)]);
        lay.cols.push_back(g[q.source(a)]);
        lay.totalCells += lay.rows.back() * lay.cols.back();
    }
    return lay;
}

/** |F|^cells with the enumeration guard applied. */
std::uint64_t guardedPower(int base, int cells) {
    std::uint64_t total = 1;
    for (int k = 0; k < cells; ++k) {
        total *= static_cast<std::uint64_t>(base);
        if (total > kEnumGuard) throw InfeasibleError("instance too large");
    }
    return total;
}

std::uint64_t encodeRep(const CellLayout& lay, const Fq& f, const std::vector<FqMat>& mats) {
    std::uint64_t code = 0;
    for (size_t a = 0; a < mats.size(); ++a)
        for (int e : mats[a].a) code = code * static_cast<std::uint64_t>(f.size()) + e;
    (void)lay;
    return code;
}

/** All invertible n x n matrices over f, paired with their inverses. */
std::vector<std::pair<FqMat, FqMat>> generalLinear(const Fq& f, int n) {
    std::vector<std::pair<FqMat, FqMat>> out;
    std::uint64_t total = guardedPower(f.size(), n * n);
    for (std::uint64_t code = 0; code < total; ++code) {
        FqMat m(n, n);
        std::uint64_t c = code;
        for (int k = n * n - 1; k >= 0; --k) {
            m.a[static_cast<size_t>(k)] = static_cast<int>(c % f.size());
            c /= static_cast<std::uint64_t>(f.size());
        }
        FqMat inv;
        if (matInverse(f, m, inv)) out.emplace_back(std::move(m), std::move(inv));
    }
    return out;
}

/**
 * No nontrivial idempotent endomorphism <=> indecomposable. The endomorphism
 * space is cut out by the linear system f_{t(a)} X_a = X_a f_{s(a)}; its
 * elements are scanned exhaustively.
 */
bool isIndecomposable(const Quiver& q, const DimVector& g, const Fq& f,
                      const std::vector<FqMat>& x) {
    const int n = q.numVertices();
    std::vector<int> varBase(n + 1, 0);
    for (int i = 0; i < n; ++i) varBase[i + 1] = varBase[i] + g[i] * g[i];
    const int numVars = varBase[n];
    if (numVars == 0) return false; // zero-dimensional representation

    int numEqs = 0;
    for (int a = 0; a < q.numArrows(); ++a) numEqs += g[q.target(a)] * g[q.source(a)];
    FqMat sys(numEqs, numVars);
    int row = 0;
    for (int a = 0; a < q.numArrows(); ++a) {
        const int s = q.source(a), t = q.target(a);
        for (int r = 0; r < g[t]; ++r)
            for (int c = 0; c < g[s]; ++c, ++row) {
                // (f_t X_a - X_a f_s)_{r,c} = 0
                for (int k = 0; k < g[t]; ++k) {
                    int& cell = sys.at(row, varBase[t] + r * g[t] + k);
                    cell = f.add(cell, x[static_cast<size_t>(a)].at(k, c));
                }
                for (int k = 0; k < g[s]; ++k) {
                    int& cell = sys.at(row, varBase[s] + k * g[s] + c);
                    cell = f.sub(cell, x[static_cast<size_t>(a)].at(r, k));
                }
            }
    }

    std::vector<std::vector<int>> basis = nullspaceBasis(f, std::move(sys));
    const int dimEnd = static_cast<int>(basis.size());
    std::uint64_t combos = guardedPower(f.size(), dimEnd);

    std::vector<int> endo(static_cast<size_t>(numVars));
    for (std::uint64_t code = 1; code < combos; ++code) {
        std::fill(endo.begin(), endo.end(), 0);
        std::uint64_t c = code;
        for (int b = 0; b < dimEnd; ++b) {
            int coef = static_cast<int>(c % f.size());
            c /= static_cast<std::uint64_t>(f.size());
            if (coef == 0) continue;
            for (int v = 0; v < numVars; ++v)
                endo[static_cast<size_t>(v)] =
                    f.add(endo[static_cast<size_t>(v)],
                          f.mul(coef, basis[static_cast<size_t>(b)][static_cast<size_t>(v)]));
        }
        bool idem = true, isId = true;
        for (int i = 0; i < n && idem; ++i) {
            FqMat fi(g[i], g[i]);
            std::copy(endo.begin() + varBase[i], endo.begin() + varBase[i + 1], fi.a.begin());
            if (matMul(f, fi, fi) != fi) idem = false;
            if (fi != FqMat::identity(g[i])) isId = false;
        }
        if (idem && !isId) return false; // endo != 0 since code != 0
    }
    return true;
}

long absIndecRec(const Quiver& q, const DimVector& g, long p, int k) {
    long count = indecomposableClassesOver(q, g, Fq(p, k));
    int content = 0;
    for (int gi : g) content = std::gcd(content, gi);
    for (int d : divisorsOf(content)) {
        if (d == 1) continue;
        DimVector h(g.size());
        for (size_t i = 0; i < g.size(); ++i) h[i] = g[i] / d;
        long corr = 0;
        for (int e : divisorsOf(d)) corr += mobius(d / e) * absIndecRec(q, h, p, k * e);
        if (corr % d != 0)
            throw std::logic_error("Galois descent correction not divisible at " + dvToString(g));
        count -= corr / d;
    }
    if (count < 0)
        throw std::logic_error("negative absolutely indecomposable count at " + dvToString(g));
    return count;
}

long motiveToCount(const MotiveRat& c, const std::string& what) {
    if (c.isZero()) return 0;
    if (!c.isPolyInL()) throw std::logic_error(what + ": non-polynomial value");
    auto coeffs = c.polyCoeffsInL();
    for (size_t k = 1; k < coeffs.size(); ++k)
        if (coeffs[k] != 0) throw std::logic_error(what + ": non-constant value");
    if (ratDen(coeffs[0]) != 1 || coeffs[0] < 0)
        throw std::logic_error(what + ": not a non-negative integer");
    return ratNum(coeffs[0]).convert_to<long>();
}

} // namespace

const std::vector<Int>& KacTable::at(const DimVector& g) const {
    auto it = poly.find(g);
    if (it == poly.end()) throw std::out_of_range("dimension vector outside Kac table");
    return it->second;
}

std::string KacTable::toJson() const {
    std::ostringstream os;
    os << "{\"quiver\":\"" << quiverHash << "\",\"bound\":" << bound << ",\"entries\":{";
    bool first = true;
    for (const auto& [g, cs] : poly) {
        if (!first) os << ",";
        first = false;
        os << "\"" << dvToString(g) << "\":[";
        for (size_t k = 0; k < cs.size(); ++k) {
            if (k) os << ",";
            os << cs[k];
        }
        os << "]";
    }
    os << "}}";
    return os.str();
}

KacTable huaKac(const Quiver& q, int bound) {
    if (bound < 1) throw std::invalid_argument("Kac table bound must be >= 1");
    const int n = q.numVertices();

    TorusSeries p(n, bound);
    DimVector zero(n, 0);
    std::vector<DimVector> support = dimVectorsUpTo(n, bound);
    support.insert(support.begin(), zero);
    for (const DimVector& g : support) {
        MotiveRat acc = MotiveRat::zero();
        forEachPartitionTuple(g, [&](const std::vector<Partition>& lams) {
            MotiveRat den = MotiveRat::one();
            for (const Partition& lam : lams) den = den * huaDenominator(lam);
            acc = acc + MotiveRat::L(static_cast<int>(huaExponent(q, lams))) / den;
        });
        p.setCoeff(g, acc);
    }

    TorusSeries k = plethysticLog(p).scaled(MotiveRat::L() - MotiveRat::one());

    KacTable table;
    table.quiverHash = q.canonicalString();
    table.bound = bound;
    for (const DimVector& g : dimVectorsUpTo(n, bound)) {
        const MotiveRat& c = k.coeff(g);
        std::vector<Int> coeffs;
        if (!c.isZero()) {
            if (!c.isPolyInL())
                throw std::logic_error("Kac series fails to clear denominators at " +
                                       dvToString(g));
            for (const Rat& r : c.polyCoeffsInL()) {
                if (ratDen(r) != 1)
                    throw std::logic_error("fractional Kac coefficient at " + dvToString(g));
                if (r < 0)
                    throw std::logic_error("negative Kac coefficient at " + dvToString(g));
                coeffs.push_back(ratNum(r));
            }
            while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
        }
        table.poly[g] = std::move(coeffs);
    }
    return table;
}

Rat evalKacPoly(const std::vector<Int>& coeffs, const Rat& x) {
    Rat acc = 0;
    for (size_t k = coeffs.size(); k-- > 0;) acc = acc * x + Rat(coeffs[k]);
    return acc;
}

long OrbitData::indecomposableCount() const {
    long c = 0;
    for (const OrbitRecord& o : orbits) c += o.indecomposable ? 1 : 0;
    return c;
}

std::vector<FqMat> decodeRep(const Quiver& q, const DimVector& g, const Fq& f,
                             std::uint64_t code) {
    CellLayout lay = layoutOf(q, g);
    std::vector<FqMat> mats;
    for (int a = 0; a < q.numArrows(); ++a) mats.emplace_back(lay.rows[a], lay.cols[a]);
    for (int a = q.numArrows() - 1; a >= 0; --a)
        for (size_t k = mats[static_cast<size_t>(a)].a.size(); k-- > 0;) {
            mats[static_cast<size_t>(a)].a[k] = static_cast<int>(code % f.size());
            code /= static_cast<std::uint64_t>(f.size());
        }
    return mats;
}

OrbitData enumerateOrbits(const Quiver& q, const DimVector& g, const Fq& f) {
    CellLayout lay = layoutOf(q, g);
    const std::uint64_t total = guardedPower(f.size(), lay.totalCells);
    const int n = q.numVertices();

    std::vector<std::vector<std::pair<FqMat, FqMat>>> gl(n);
    for (int i = 0; i < n; ++i) gl[i] = generalLinear(f, g[static_cast<size_t>(i)]);

    OrbitData data;
    data.totalConfigs = total;
    std::vector<bool> visited(total, false);
    std::vector<FqMat> transformed(static_cast<size_t>(q.numArrows()));
    for (std::uint64_t code = 0; code < total; ++code) {
        if (visited[code]) continue;
        std::vector<FqMat> x = decodeRep(q, g, f, code);

        OrbitRecord rec;
        rec.rep = code;
        std::vector<size_t> idx(n, 0);
        while (true) {
            for (int a = 0; a < q.numArrows(); ++a) {
                const auto& gt = gl[q.target(a)][idx[q.target(a)]].first;
                const auto& gsInv = gl[q.source(a)][idx[q.source(a)]].second;
                transformed[static_cast<size_t>(a)] =
                    matMul(f, gt, matMul(f, x[static_cast<size_t>(a)], gsInv));
            }
            std::uint64_t image = encodeRep(lay, f, transformed);
            if (!visited[image]) {
                visited[image] = true;
                ++rec.size;
            }
            int i = 0;
            while (i < n && ++idx[i] == gl[i].size()) idx[i++] = 0;
            if (i == n) break;
        }
        rec.indecomposable = isIndecomposable(q, g, f, x);
        data.orbits.push_back(std::move(rec));
    }

    std::uint64_t covered = 0;
    for (const OrbitRecord& o : data.orbits) covered += static_cast<std::uint64_t>(o.size);
    if (covered != total) throw std::logic_error("orbit sizes fail to cover the configuration space");
    return data;
}

long indecomposableClassesOver(const Quiver& q, const DimVector& g, const Fq& f) {
    return enumerateOrbits(q, g, f).indecomposableCount();
}

long bruteIndecomposableClasses(const Quiver& q, const DimVector& g, long qPrime) {
    return indecomposableClassesOver(q, g, Fq(qPrime));
}

long bruteAbsIndec(const Quiver& q, const DimVector& g, long qPrime) {
    return absIndecRec(q, g, qPrime, 1);
}

long rootMultiplicity(const KacTable& table, const DimVector& g) {
    const std::vector<Int>& coeffs = table.at(g);
    if (coeffs.empty()) return 0;
    return coeffs[0].convert_to<long>();
}

long kmWeightDim(const Quiver& q, const DimVector& g) {
    for (int i = 0; i < q.numVertices(); ++i)
        if (!q.isRealVertex(i))
            throw std::domain_error("imaginary vertices unsupported by this oracle");
    const int bound = ht(g);
    if (bound == 0) return 1;
    KacTable table = huaKac(q, bound);

    const int n = q.numVertices();
    TorusSeries prod = TorusSeries::one(n, bound);
    for (const auto& [root, coeffs] : table.poly) {
        if (coeffs.empty() || coeffs[0] == 0) continue;
        long mult = coeffs[0].convert_to<long>();
        TorusSeries factor =
            TorusSeries::one(n, bound) - TorusSeries::monomial(root, MotiveRat::one(), bound);
        for (long m = 0; m < mult; ++m) prod = prod * factor;
    }
    return motiveToCount(prod.inverse().coeff(g), "Kac-Moody weight dimension");
}

} // namespace qdt
