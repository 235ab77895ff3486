#include "qdt/gqg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qdt/combinat.hpp"
#include "qdt/errors.hpp"
#include "qdt/fqcount.hpp"
#include "qdt/kac.hpp"

namespace qdt {

namespace {

/** Word enumeration cutoff; the bases grow like compositions of the height. */
constexpr int kWordHeightLimit = 8;

void requireValidGenerator(const Quiver& q, const GenIdx& g) {
    if (g.vertex < 0 || g.vertex >= q.numVertices())
        throw std::invalid_argument("generator vertex out of range");
    if (g.layer < 1) throw std::invalid_argument("generator layer must be positive");
    if (g.layer > 1 && q.isRealVertex(g.vertex))
        throw std::invalid_argument("layers above one need a loop vertex");
}

long symOnUnits(const Quiver& q, int i, int j) {
    DimVector ei(static_cast<size_t>(q.numVertices()), 0);
    DimVector ej(static_cast<size_t>(q.numVertices()), 0);
    ei[static_cast<size_t>(i)] = 1;
    ej[static_cast<size_t>(j)] = 1;
    return symEulerForm(q, ei, ej);
}

void wordsRec(const Quiver& q, DimVector& remaining, Word& current, std::vector<Word>& out) {
    if (isZeroVec(remaining)) {
        out.push_back(current);
        return;
    }
    for (int i = 0; i < q.numVertices(); ++i) {
        if (remaining[static_cast<size_t>(i)] == 0) continue;
        const int maxLayer = q.isRealVertex(i) ? 1 : remaining[static_cast<size_t>(i)];
        for (int l = 1; l <= maxLayer; ++l) {
            remaining[static_cast<size_t>(i)] -= l;
            current.push_back({i, l});
            wordsRec(q, remaining, current, out);
            current.pop_back();
            remaining[static_cast<size_t>(i)] += l;
        }
    }
}

/** Column rank by fraction-free (Bareiss) elimination; exact over Q(v). */
LaurentPoly exactDiv(LaurentPoly a, const LaurentPoly& b) {
    auto [q, r] = polyDivMod(std::move(a), b);
    if (!r.isZero()) throw std::logic_error("fraction-free elimination lost exactness");
    return q;
}

/**
 * Rank over Q(v). Rational-function elimination is hopeless here: every
 * arithmetic step renormalises through a polynomial gcd, and on the minors
 * of a Gram matrix those gcd chains blow up. Instead each row is scaled by
 * the lcm of its denominators (one scalar of Q(v), rank-preserving) to land
 * in Q[v], and the two-determinant recurrence keeps every division exact, so
 * no gcd is ever taken on an intermediate minor.
 */
long matrixRank(const std::vector<std::vector<RatV>>& m) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    std::vector<std::vector<LaurentPoly>> p(rows, std::vector<LaurentPoly>(cols));
    for (size_t i = 0; i < rows; ++i) {
        // Denominators are Laurent; split off the unit v^lowDeg before lcm.
        LaurentPoly f = LaurentPoly::one();
        for (size_t j = 0; j < cols; ++j) {
            const LaurentPoly& d = m[i][j].ratfunc().den();
            LaurentPoly dj = d.shifted(-d.lowDeg());
            f = f * exactDiv(dj, polyGcd(f, dj));
        }
        int low = 0;
        for (size_t j = 0; j < cols; ++j) {
            if (m[i][j].isZero()) continue;
            const LaurentPoly& d = m[i][j].ratfunc().den();
            p[i][j] = (m[i][j].ratfunc().num() * exactDiv(f, d.shifted(-d.lowDeg())))
                          .shifted(-d.lowDeg());
            low = std::min(low, p[i][j].lowDeg());
        }
        for (size_t j = 0; j < cols; ++j)
            if (!p[i][j].isZero()) p[i][j] = p[i][j].shifted(-low);
    }

    LaurentPoly prev = LaurentPoly::one();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && p[piv][c].isZero()) ++piv;
        if (piv == rows) continue;
        std::swap(p[piv], p[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            for (size_t j = c + 1; j < cols; ++j) {
                LaurentPoly t = p[r][c] * p[i][j] - p[i][c] * p[r][j];
                p[i][j] = t.isZero() ? std::move(t) : exactDiv(std::move(t), prev);
            }
            p[i][c] = LaurentPoly();
        }
        prev = p[r][c];
        ++r;
    }
    return static_cast<long>(r);
}

/** Pivot columns of the row space, Gauss-Jordan over Q(v). */
std::vector<bool> pivotColumns(std::vector<std::vector<RatV>> m) {
    const size_t rows = m.size();
    const size_t cols = rows ? m[0].size() : 0;
    std::vector<bool> piv(cols, false);
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && m[p][c].isZero()) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        RatV inv = RatV::one() / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].isZero()) continue;
            for (size_t j = cols; j-- > c;) m[i][j] -= m[i][c] * m[r][j];
        }
        piv[c] = true;
        ++r;
    }
    return piv;
}

bool relationsInRadical(const CoproductForm& form, const std::vector<FreeElt>& rel,
                        const std::vector<Word>& words) {
    for (const FreeElt& r : rel)
        for (const Word& w : words)
            if (!form.pairing(r, FreeElt::term(w)).isZero()) return false;
    return true;
}

/** All componentwise vectors 0 <= a <= g, lexicographic. */
std::vector<DimVector> boxVectors(const DimVector& g) {
    std::vector<DimVector> out;
    DimVector a(g.size(), 0);
    while (true) {
        out.push_back(a);
        size_t k = a.size();
        while (k-- > 0) {
            if (a[k] < g[k]) {
                ++a[k];
                std::fill(a.begin() + static_cast<long>(k) + 1, a.end(), 0);
                break;
            }
            if (k == 0) return out;
        }
    }
}

} // namespace

DimVector wordWeight(const Word& w, int numVertices) {
    DimVector g(static_cast<size_t>(numVertices), 0);
    for (const GenIdx& x : w) g[static_cast<size_t>(x.vertex)] += x.layer;
    return g;
}

FreeElt FreeElt::term(Word w, RatV c) {
    FreeElt e;
    e.add(w, c);
    return e;
}

void FreeElt::add(const Word& w, const RatV& c) {
    if (c.isZero()) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (fresh) return;
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
}

FreeElt FreeElt::operator+(const FreeElt& o) const {
    FreeElt r = *this;
    for (const auto& [w, c] : o.terms_) r.add(w, c);
    return r;
}

FreeElt FreeElt::operator-(const FreeElt& o) const {
    FreeElt r = *this;
    for (const auto& [w, c] : o.terms_) r.add(w, -c);
    return r;
}

FreeElt FreeElt::operator*(const FreeElt& o) const {
    FreeElt r;
    for (const auto& [w1, c1] : terms_)
        for (const auto& [w2, c2] : o.terms_) {
            Word w = w1;
            w.insert(w.end(), w2.begin(), w2.end());
            r.add(w, c1 * c2);
        }
    return r;
}

FreeElt FreeElt::scaled(const RatV& c) const {
    FreeElt r;
    for (const auto& [w, cw] : terms_) r.add(w, cw * c);
    return r;
}

DimVector FreeElt::weight(int numVertices) const {
    if (terms_.empty()) throw std::invalid_argument("zero element has no weight");
    DimVector g = wordWeight(terms_.begin()->first, numVertices);
    for (const auto& [w, c] : terms_)
        if (wordWeight(w, numVertices) != g)
            throw std::invalid_argument("inhomogeneous element has no weight");
    return g;
}

std::string FreeElt::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (const GenIdx& x : w) os << "*E(" << x.vertex << "," << x.layer << ")";
    }
    return os.str();
}

void TensorElt::add(const Word& left, const Word& right, const RatV& c) {
    if (c.isZero()) return;
    auto key = std::make_pair(left, right);
    auto [it, fresh] = terms_.emplace(std::move(key), c);
    if (fresh) return;
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
}

RatV qInt(int n, const RatV& u) {
    RatV r = RatV::zero();
    for (int k = 0; k < n; ++k) r += u.pow(n - 1 - 2 * k);
    return r;
}

RatV qFactorial(int n, const RatV& u) {
    RatV r = RatV::one();
    for (int k = 2; k <= n; ++k) r *= qInt(k, u);
    return r;
}

RatV FormParams::value(const GenIdx& g) const {
    auto it = overrides.find(g);
    if (it == overrides.end()) return RatV::one() / (RatV::one() - RatV::v(-2));
    if (it->second.isZero()) throw std::invalid_argument("form parameter must be nonzero");
    return it->second;
}

CoproductForm::CoproductForm(const Quiver& q, int eps, FormParams params)
    : q_(q), eps_(eps), params_(std::move(params)) {
    if (eps != 1 && eps != -1) throw std::invalid_argument("twist sign must be +1 or -1");
}

TensorElt CoproductForm::generatorCoproduct(const GenIdx& g) const {
    requireValidGenerator(q_, g);
    // v_i = v^{(e_i,e_i)/2}; the diagonal of the symmetrized form is 2 - 2 omega_i.
    const int halfDiag = 1 - q_.loopCount(g.vertex);
    TensorElt t;
    for (int l1 = 0; l1 <= g.layer; ++l1) {
        const int l2 = g.layer - l1;
        Word left = l1 ? Word{{g.vertex, l1}} : Word{};
        Word right = l2 ? Word{{g.vertex, l2}} : Word{};
        t.add(left, right, RatV::v(halfDiag * l1 * l2));
    }
    return t;
}

TensorElt CoproductForm::tensorMul(const TensorElt& a, const TensorElt& b) const {
    TensorElt r;
    for (const auto& [ab, c1] : a.terms())
        for (const auto& [cd, c2] : b.terms()) {
            const long twist =
                eps_ * symEulerForm(q_, wordWeight(ab.second, q_.numVertices()),
                                    wordWeight(cd.first, q_.numVertices()));
            Word left = ab.first;
            left.insert(left.end(), cd.first.begin(), cd.first.end());
            Word right = ab.second;
            right.insert(right.end(), cd.second.begin(), cd.second.end());
            r.add(left, right, c1 * c2 * RatV::v(static_cast<int>(twist)));
        }
    return r;
}

const TensorElt& CoproductForm::coproduct(const Word& w) const {
    auto it = coprodMemo_.find(w);
    if (it != coprodMemo_.end()) return it->second;
    TensorElt t;
    t.add({}, {}, RatV::one());
    for (const GenIdx& g : w) t = tensorMul(t, generatorCoproduct(g));
    return coprodMemo_.emplace(w, std::move(t)).first->second;
}

TensorElt CoproductForm::coproduct(const FreeElt& x) const {
    TensorElt t;
    for (const auto& [w, c] : x.terms())
        for (const auto& [lr, cw] : coproduct(w).terms()) t.add(lr.first, lr.second, c * cw);
    return t;
}

RatV CoproductForm::pairWords(const Word& x, const Word& y) const {
    const int n = q_.numVertices();
    if (wordWeight(x, n) != wordWeight(y, n)) return RatV::zero();
    if (x.empty()) return RatV::one();
    auto key = std::make_pair(x, y);
    if (auto it = pairMemo_.find(key); it != pairMemo_.end()) return it->second;

    RatV acc = RatV::zero();
    if (x.size() == 1 && y.size() == 1) {
        // Equal weights on single letters force the same generator.
        acc = params_.value(x[0]);
    } else if (x.size() == 1) {
        // {E, y0 yr} = {delta(E), y0 (x) yr}
        const Word y0{y[0]};
        const Word yr(y.begin() + 1, y.end());
        for (const auto& [ab, c] : coproduct(x).terms())
            acc += c * pairWords(ab.first, y0) * pairWords(ab.second, yr);
    } else {
        // {x0 xr, y} = {x0 (x) xr, delta(y)}
        const Word x0{x[0]};
        const Word xr(x.begin() + 1, x.end());
        for (const auto& [ab, c] : coproduct(y).terms())
            acc += c * pairWords(x0, ab.first) * pairWords(xr, ab.second);
    }
    pairMemo_.emplace(std::move(key), acc);
    return acc;
}

RatV CoproductForm::pairing(const FreeElt& x, const FreeElt& y) const {
    RatV acc = RatV::zero();
    for (const auto& [wx, cx] : x.terms())
        for (const auto& [wy, cy] : y.terms()) acc += cx * cy * pairWords(wx, wy);
    return acc;
}

std::vector<Word> gradedWords(const Quiver& q, const DimVector& g) {
    if (static_cast<int>(g.size()) != q.numVertices())
        throw std::invalid_argument("dimension vector size mismatch");
    if (!isNonNegative(g)) throw std::invalid_argument("weight must be non-negative");
    if (ht(g) > kWordHeightLimit) throw InfeasibleError("word height limit exceeded");
    std::vector<Word> out;
    DimVector remaining = g;
    Word current;
    wordsRec(q, remaining, current, out);
    std::sort(out.begin(), out.end());
    return out;
}

FreeElt serreElement(const Quiver& q, const GenIdx& iota, int j) {
    requireValidGenerator(q, iota);
    if (j < 0 || j >= q.numVertices() || !q.isRealVertex(j))
        throw std::invalid_argument("Serre padding vertex must be real");
    if (j == iota.vertex) throw std::invalid_argument("Serre vertex pair must be distinct");
    const long pairing = static_cast<long>(iota.layer) * symOnUnits(q, iota.vertex, j);
    const int total = static_cast<int>(1 - pairing);
    const RatV vj = RatV::v(1);
    FreeElt e;
    for (int l1 = 0; l1 <= total; ++l1) {
        const int l2 = total - l1;
        Word w(static_cast<size_t>(l1), GenIdx{j, 1});
        w.push_back(iota);
        w.insert(w.end(), static_cast<size_t>(l2), GenIdx{j, 1});
        RatV c = RatV::fromRat(l1 % 2 ? -1 : 1) / (qFactorial(l1, vj) * qFactorial(l2, vj));
        e.add(w, c);
    }
    return e;
}

FreeElt commutatorElement(const GenIdx& a, const GenIdx& b) {
    FreeElt e;
    e.add({a, b}, RatV::one());
    e.add({b, a}, -RatV::one());
    return e;
}

std::vector<FreeElt> relationIdeal(const Quiver& q, const DimVector& g) {
    if (ht(g) > kWordHeightLimit) throw InfeasibleError("word height limit exceeded");
    const int n = q.numVertices();
    std::vector<std::pair<FreeElt, DimVector>> gens;

    for (int j = 0; j < n; ++j) {
        if (!q.isRealVertex(j)) continue;
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            const int maxLayer = q.isRealVertex(i) ? 1 : g[static_cast<size_t>(i)];
            for (int l = 1; l <= maxLayer; ++l) {
                const GenIdx iota{i, l};
                const int total = static_cast<int>(1 - l * symOnUnits(q, i, j));
                DimVector w(static_cast<size_t>(n), 0);
                w[static_cast<size_t>(i)] = l;
                w[static_cast<size_t>(j)] = total;
                if (!dvLeq(w, g)) continue;
                gens.emplace_back(serreElement(q, iota, j), w);
            }
        }
    }
    for (int i = 0; i < n; ++i) {
        if (q.loopCount(i) != 1) continue;
        for (int l = 1; 2 * l < g[static_cast<size_t>(i)] + 1; ++l)
            for (int k = l + 1; l + k <= g[static_cast<size_t>(i)]; ++k) {
                DimVector w(static_cast<size_t>(n), 0);
                w[static_cast<size_t>(i)] = l + k;
                if (!dvLeq(w, g)) continue;
                gens.emplace_back(commutatorElement({i, l}, {i, k}), w);
            }
    }

    std::vector<FreeElt> slice;
    for (const auto& [r, w] : gens) {
        const DimVector rem = dvSub(g, w);
        for (const DimVector& a : boxVectors(rem)) {
            const DimVector b = dvSub(rem, a);
            for (const Word& u : gradedWords(q, a))
                for (const Word& u2 : gradedWords(q, b))
                    slice.push_back(FreeElt::term(u) * r * FreeElt::term(u2));
        }
    }
    return slice;
}

long uPlusDim(const Quiver& q, const DimVector& g, const FormParams& params, int eps) {
    const std::vector<Word> words = gradedWords(q, g);
    const size_t w = words.size();
    CoproductForm form(q, eps, params);

    std::vector<std::vector<RatV>> gram(w, std::vector<RatV>(w));
    for (size_t r = 0; r < w; ++r)
        for (size_t c = 0; c < w; ++c) gram[r][c] = form.pairWords(words[r], words[c]);
    const long rankFull = matrixRank(gram);

    const std::vector<FreeElt> rel = relationIdeal(q, g);
    if (!relationsInRadical(form, rel, words))
        throw std::logic_error("relation element escapes the radical");

    std::map<Word, size_t> col;
    for (size_t c = 0; c < w; ++c) col.emplace(words[c], c);
    std::vector<std::vector<RatV>> relRows;
    for (const FreeElt& r : rel) {
        std::vector<RatV> row(w);
        for (const auto& [word, c] : r.terms()) row[col.at(word)] = c;
        relRows.push_back(std::move(row));
    }
    const std::vector<bool> piv =
        relRows.empty() ? std::vector<bool>(w, false) : pivotColumns(std::move(relRows));
    std::vector<size_t> rest;
    for (size_t c = 0; c < w; ++c)
        if (!piv[c]) rest.push_back(c);
    std::vector<std::vector<RatV>> quotGram(rest.size(), std::vector<RatV>(rest.size()));
    for (size_t r = 0; r < rest.size(); ++r)
        for (size_t c = 0; c < rest.size(); ++c) quotGram[r][c] = gram[rest[r]][rest[c]];
    const long rankQuot = matrixRank(quotGram);

    if (rankFull != rankQuot)
        throw std::logic_error("quotient and full-space form ranks disagree");
    return rankFull;
}

CalibrationReport calibrateEpsilon() {
    const auto passes = [](int eps) {
        for (const Quiver& q : {makeA2(), makeKronecker()}) {
            // Height 4 reaches the first Serre slice on the Kronecker quiver.
            for (const DimVector& g : dimVectorsUpTo(q.numVertices(), 4)) {
                CoproductForm form(q, eps);
                if (!relationsInRadical(form, relationIdeal(q, g), gradedWords(q, g)))
                    return false;
            }
        }
        return true;
    };
    CalibrationReport rep;
    rep.plusPasses = passes(+1);
    rep.minusPasses = passes(-1);
    if (!rep.plusPasses && !rep.minusPasses)
        throw std::logic_error("tensor twist calibration failed");
    rep.chosen = rep.plusPasses ? +1 : -1;
    return rep;
}

namespace {

/** Leading coefficient of the interpolated seminilpotent count, when cheap. */
bool countLeadingOracle(const Quiver& q, const DimVector& g, long* out) {
    const long m = momentCellCount(q, g);
    const int degBound = static_cast<int>(2 * m);
    const std::vector<long> primes = firstPrimes(degBound + 1);
    Int work = 1;
    for (long k = 0; k < 2 * m; ++k) work *= primes.back();
    if (work > (Int(1) << 24)) return false;
    for (long p : primes)
        if (!momentFiberFeasible(q, g, p)) return false;

    std::vector<std::pair<long, Rat>> samples;
    for (long p : primes) samples.emplace_back(p, Rat(countSeminilpotent(q, g, p)));
    const MotiveRat poly = interpolateMotive(samples, degBound);
    const std::vector<Rat> cs = poly.polyCoeffsInL();
    if (cs.empty()) return false;
    const Rat lead = cs.back();
    if (ratDen(lead) != 1) throw std::logic_error("seminilpotent count has a fractional leading coefficient");
    *out = static_cast<long>(ratNum(lead));
    return true;
}

} // namespace

IrrPrediction predictedIrrCount(const Quiver& q, const DimVector& g) {
    if (isZeroVec(g)) throw std::invalid_argument("weight must be nonzero");
    IrrPrediction pred;

    int active = -1;
    bool singleVertex = true;
    for (int i = 0; i < q.numVertices(); ++i) {
        if (g[static_cast<size_t>(i)] == 0) continue;
        if (active >= 0) singleVertex = false;
        active = i;
    }
    if (singleVertex) {
        const int l = g[static_cast<size_t>(active)];
        const int loops = q.loopCount(active);
        long c = 1;
        if (loops == 1) c = numPartitions(l);
        if (loops >= 2) c = 1L << (l - 1);
        pred.oracles.emplace_back("layer closed form", c);
    }

    bool loopFree = true;
    for (int i = 0; i < q.numVertices(); ++i) loopFree = loopFree && q.isRealVertex(i);
    if (loopFree) pred.oracles.emplace_back("weight space", kmWeightDim(q, g));

    pred.oracles.emplace_back("form rank", uPlusDim(q, g));

    long lead = 0;
    if (countLeadingOracle(q, g, &lead)) pred.oracles.emplace_back("count leading coefficient", lead);

    pred.count = pred.oracles.front().second;
    for (const auto& [name, value] : pred.oracles)
        if (value != pred.count)
            throw std::logic_error("component count oracles disagree at " + dvToString(g));
    return pred;
}

} // namespace qdt
