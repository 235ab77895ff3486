#include "qdt/torus_series.hpp"

#include <stdexcept>

#include "qdt/combinat.hpp"

namespace qdt {

TorusSeries::TorusSeries(int numVertices, int bound) : n_(numVertices), bound_(bound) {
    if (numVertices < 1) throw std::invalid_argument("series needs at least one vertex");
    if (bound < 0) throw std::invalid_argument("negative truncation bound");
}

TorusSeries TorusSeries::one(int numVertices, int bound) {
    TorusSeries s(numVertices, bound);
    s.setCoeff(DimVector(static_cast<size_t>(numVertices), 0), MotiveRat::one());
    return s;
}

TorusSeries TorusSeries::monomial(const DimVector& g, const MotiveRat& c, int bound) {
    TorusSeries s(static_cast<int>(g.size()), bound);
    s.setCoeff(g, c);
    return s;
}

const MotiveRat& TorusSeries::coeff(const DimVector& g) const {
    static const MotiveRat kZero = MotiveRat::zero();
    if (static_cast<int>(g.size()) != n_) throw std::invalid_argument("dimension vector size mismatch");
    if (ht(g) > bound_) throw std::out_of_range("coefficient outside truncation bound");
    auto it = terms_.find(g);
    return it == terms_.end() ? kZero : it->second;
}

void TorusSeries::setCoeff(const DimVector& g, const MotiveRat& c) {
    if (static_cast<int>(g.size()) != n_) throw std::invalid_argument("dimension vector size mismatch");
    if (!isNonNegative(g)) throw std::invalid_argument("negative dimension vector");
    if (ht(g) > bound_) throw std::out_of_range("coefficient outside truncation bound");
    if (c.isZero())
        terms_.erase(g);
    else
        terms_[g] = c;
}

void TorusSeries::addCoeff(const DimVector& g, const MotiveRat& c) { setCoeff(g, coeff(g) + c); }

void TorusSeries::requireCompatible(const TorusSeries& o) const {
    if (n_ != o.n_) throw std::invalid_argument("vertex set mismatch");
}

bool TorusSeries::operator==(const TorusSeries& o) const {
    return n_ == o.n_ && bound_ == o.bound_ && terms_ == o.terms_;
}

TorusSeries TorusSeries::operator+(const TorusSeries& o) const {
    requireCompatible(o);
    TorusSeries r(n_, std::min(bound_, o.bound_));
    for (const auto& [g, c] : terms_)
        if (ht(g) <= r.bound_) r.addCoeff(g, c);
    for (const auto& [g, c] : o.terms_)
        if (ht(g) <= r.bound_) r.addCoeff(g, c);
    return r;
}

TorusSeries TorusSeries::operator-(const TorusSeries& o) const { return *this + (-o); }

TorusSeries TorusSeries::operator-() const {
    TorusSeries r(n_, bound_);
    for (const auto& [g, c] : terms_) r.terms_[g] = -c;
    return r;
}

TorusSeries TorusSeries::operator*(const TorusSeries& o) const {
    requireCompatible(o);
    TorusSeries r(n_, std::min(bound_, o.bound_));
    for (const auto& [g1, c1] : terms_) {
        int h1 = ht(g1);
        if (h1 > r.bound_) continue;
        for (const auto& [g2, c2] : o.terms_) {
            if (h1 + ht(g2) > r.bound_) continue;
            r.addCoeff(dvAdd(g1, g2), c1 * c2);
        }
    }
    return r;
}

TorusSeries TorusSeries::scaled(const MotiveRat& c) const {
    TorusSeries r(n_, bound_);
    if (c.isZero()) return r;
    for (const auto& [g, x] : terms_) r.terms_[g] = c * x;
    return r;
}

TorusSeries TorusSeries::inverse() const {
    DimVector zeroVec(static_cast<size_t>(n_), 0);
    MotiveRat a0 = coeff(zeroVec);
    if (a0.isZero()) throw std::domain_error("non-unit constant term");
    TorusSeries r(n_, bound_);
    r.setCoeff(zeroVec, MotiveRat::one() / a0);
    for (const DimVector& g : dimVectorsUpTo(n_, bound_)) {
        MotiveRat acc = MotiveRat::zero();
        for (const auto& [d, ad] : terms_) {
            if (isZeroVec(d) || !dvLeq(d, g)) continue;
            acc += ad * r.coeff(dvSub(g, d));
        }
        r.setCoeff(g, -acc / a0);
    }
    return r;
}

TorusSeries TorusSeries::adamsSeries(int k) const {
    if (k < 1) throw std::invalid_argument("adams index must be positive");
    TorusSeries r(n_, bound_);
    for (const auto& [g, c] : terms_) {
        if (k * ht(g) > bound_) continue;
        r.setCoeff(dvScale(k, g), c.adams(k));
    }
    return r;
}

TorusSeries TorusSeries::filtered(const std::function<bool(const DimVector&)>& pred) const {
    TorusSeries r(n_, bound_);
    for (const auto& [g, c] : terms_)
        if (pred(g)) r.terms_[g] = c;
    return r;
}

TorusSeries TorusSeries::truncated(int bound) const {
    if (bound > bound_) throw std::invalid_argument("cannot extend truncation bound");
    TorusSeries r(n_, bound);
    for (const auto& [g, c] : terms_)
        if (ht(g) <= bound) r.terms_[g] = c;
    return r;
}

std::string TorusSeries::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [g, c] : terms_) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ")*e" + dvToString(g);
    }
    return s;
}

TorusSeries plethysticExp(const TorusSeries& f) {
    DimVector zeroVec(static_cast<size_t>(f.numVertices()), 0);
    if (!f.coeff(zeroVec).isZero()) throw std::domain_error("nonzero constant term");
    TorusSeries g(f.numVertices(), f.bound());
    for (int k = 1; k <= f.bound(); ++k)
        g = g + f.adamsSeries(k).scaled(MotiveRat::fromRat(Rat(1, k)));
    // Ordinary exp of g: powers of g gain height at least 1 per factor.
    TorusSeries acc = TorusSeries::one(f.numVertices(), f.bound());
    TorusSeries term = acc;
    for (int m = 1; m <= f.bound(); ++m) {
        term = (term * g).scaled(MotiveRat::fromRat(Rat(1, m)));
        acc = acc + term;
    }
    return acc;
}

TorusSeries plethysticLog(const TorusSeries& a) {
    DimVector zeroVec(static_cast<size_t>(a.numVertices()), 0);
    if (!(a.coeff(zeroVec) == MotiveRat::one()))
        throw std::domain_error("constant term must be 1");
    TorusSeries u = a - TorusSeries::one(a.numVertices(), a.bound());
    // Ordinary log first.
    TorusSeries logA(a.numVertices(), a.bound());
    TorusSeries term = TorusSeries::one(a.numVertices(), a.bound());
    for (int m = 1; m <= a.bound(); ++m) {
        term = term * u;
        Rat c = (m % 2 == 1) ? Rat(1, m) : Rat(-1, m);
        logA = logA + term.scaled(MotiveRat::fromRat(c));
    }
    // Then Moebius-invert the Adams average.
    TorusSeries out(a.numVertices(), a.bound());
    for (int k = 1; k <= std::max(1, a.bound()); ++k) {
        int mu = mobius(k);
        if (mu == 0) continue;
        out = out + logA.adamsSeries(k).scaled(MotiveRat::fromRat(Rat(mu, k)));
    }
    return out;
}

CentralCharge::CentralCharge(std::vector<Rat> re, std::vector<Rat> im)
    : re_(std::move(re)), im_(std::move(im)) {
    if (re_.size() != im_.size() || re_.empty())
        throw std::invalid_argument("central charge component mismatch");
    for (const Rat& y : im_)
        if (y <= 0) throw std::invalid_argument("central charge must lie in the upper half plane");
}

std::pair<Rat, Rat> CentralCharge::eval(const DimVector& g) const {
    if (g.size() != re_.size()) throw std::invalid_argument("dimension vector size mismatch");
    Rat re = 0, im = 0;
    for (size_t i = 0; i < g.size(); ++i) {
        re += Rat(g[i]) * re_[i];
        im += Rat(g[i]) * im_[i];
    }
    return {re, im};
}

std::pair<Int, Int> CentralCharge::rayKey(const DimVector& g) const {
    auto [re, im] = eval(g);
    if (im <= 0) throw std::invalid_argument("ray of the zero class");
    Int d = intLcm(ratDen(re), ratDen(im));
    Int a = ratNum(re) * (d / ratDen(re));
    Int b = ratNum(im) * (d / ratDen(im));
    Int c = intGcd(a < 0 ? Int(-a) : a, b);
    if (c == 0) c = 1;
    return {a / c, b / c};
}

void CentralCharge::requireGeneric(int bound) const {
    std::map<std::pair<Int, Int>, DimVector> seen;
    for (const DimVector& g : dimVectorsUpTo(numVertices(), bound)) {
        int c = 0;
        for (int x : g) c = static_cast<int>(intGcd(Int(c), Int(x)).convert_to<int>());
        DimVector prim(g.size());
        for (size_t i = 0; i < g.size(); ++i) prim[i] = g[i] / c;
        auto key = rayKey(g);
        auto [it, fresh] = seen.emplace(key, prim);
        if (!fresh && it->second != prim) throw std::domain_error("degenerate charge");
    }
}

std::string CentralCharge::str() const {
    std::string s;
    for (size_t i = 0; i < re_.size(); ++i) {
        if (i) s += ";";
        s += ratToString(re_[i]) + "," + ratToString(im_[i]);
    }
    return s;
}

} // namespace qdt
