#include "qdt/dt.hpp"

#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qdt/fqcount.hpp"
#include "qdt/kac.hpp"

namespace qdt {

namespace {

MotiveRat gaugeMotive(const DimVector& g) {
    MotiveRat r = MotiveRat::one();
    for (int gi : g) r = r * glMotive(gi);
    return r;
}

MotiveRat kacMotive(const std::vector<Int>& cs) {
    MotiveRat r = MotiveRat::zero();
    for (size_t k = 0; k < cs.size(); ++k)
        r = r + MotiveRat::fromRat(Rat(cs[k])) * MotiveRat::L(static_cast<int>(k));
    return r;
}

std::string rayToString(const RayKey& r) { return r.first.str() + ":" + r.second.str(); }

double secondsSince(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

OmegaTable extractPerRay(const TorusSeries& a, const CentralCharge& z,
                         std::vector<std::pair<std::string, std::string>>* rays) {
    OmegaTable all;
    for (const auto& [ray, f] : hnFactorize(a, z)) {
        OmegaTable part = extractDt(f);
        all.omega.insert(part.omega.begin(), part.omega.end());
        all.admissible.insert(part.admissible.begin(), part.admissible.end());
        if (rays) rays->emplace_back(rayToString(ray), f.str());
    }
    return all;
}

MotiveRat omegaOrZero(const OmegaTable& t, const DimVector& g) {
    auto it = t.omega.find(g);
    return it == t.omega.end() ? MotiveRat::zero() : it->second;
}

} // namespace

TorusSeries totalSeries(const Quiver& q, int bound, const std::vector<long>& primes) {
    if (bound < 1) throw std::invalid_argument("series bound must be >= 1");
    const int n = q.numVertices();
    TorusSeries a = TorusSeries::one(n, bound);
    for (const DimVector& g : dimVectorsUpTo(n, bound)) {
        MotiveRat fiber = censusFiberMotive(q, g);
        for (long p : primes) {
            if (!momentFiberFeasible(q, g, p)) continue;
            if (fiber.evalAtPrime(p) != Rat(countMomentFiber(q, g, p)))
                throw std::logic_error("fiber motive disagrees with the brute-force count");
        }
        const int chi = static_cast<int>(eulerForm(q, g, g));
        a.setCoeff(g, MotiveRat::L(chi) * fiber / gaugeMotive(g));
    }
    return a;
}

std::vector<std::pair<RayKey, TorusSeries>> hnFactorize(const TorusSeries& a,
                                                        const CentralCharge& z) {
    if (z.numVertices() != a.numVertices())
        throw std::invalid_argument("charge dimension mismatch");
    const DimVector zero(static_cast<size_t>(a.numVertices()), 0);
    if (!(a.coeff(zero) == MotiveRat::one()))
        throw std::invalid_argument("non-unit constant term");
    z.requireGeneric(a.bound());

    // Every class within the bound owns a ray, whether or not a touches it;
    // division can move support onto rays absent from the input.
    std::set<RayKey, RayArgDecreasing> rays;
    for (const DimVector& g : dimVectorsUpTo(a.numVertices(), a.bound()))
        rays.insert(z.rayKey(g));

    std::vector<std::pair<RayKey, TorusSeries>> peeled;
    TorusSeries remainder = a;
    for (const RayKey& r : rays) {
        TorusSeries f = remainder.filtered(
            [&](const DimVector& g) { return isZeroVec(g) || z.rayKey(g) == r; });
        remainder = remainder * f.inverse();
        peeled.emplace_back(r, std::move(f));
    }
    if (!(remainder == TorusSeries::one(a.numVertices(), a.bound())))
        throw std::logic_error("ray peeling left a nontrivial remainder");

    TorusSeries logA = plethysticLog(a);
    size_t at = 0;
    for (const RayKey& r : rays) {
        TorusSeries f = plethysticExp(logA.filtered(
            [&](const DimVector& g) { return !isZeroVec(g) && z.rayKey(g) == r; }));
        if (!(f == peeled[at++].second)) throw std::logic_error("ray factorization routes disagree");
    }

    const TorusSeries one = TorusSeries::one(a.numVertices(), a.bound());
    TorusSeries product = one;
    std::vector<std::pair<RayKey, TorusSeries>> out;
    for (auto& [r, f] : peeled) {
        product = product * f;
        if (!(f == one)) out.emplace_back(r, std::move(f));
    }
    if (!(product == a)) throw std::logic_error("ray factors do not multiply back to the series");
    return out;
}

OmegaTable extractDt(const TorusSeries& a) {
    TorusSeries logA = plethysticLog(a);
    if (!(plethysticExp(logA) == a))
        throw std::logic_error("plethystic reconstruction failed after extraction");
    const MotiveRat oneMinusL = MotiveRat::one() - MotiveRat::L();
    OmegaTable t;
    for (const auto& [g, c] : logA.terms()) {
        if (isZeroVec(g)) continue;
        MotiveRat om = oneMinusL * c;
        t.admissible[g] = om.isLaurent();
        t.omega[g] = om;
    }
    return t;
}

std::string DtReport::toJson() const {
    std::ostringstream os;
    os << "{\"quiver\":\"" << quiverHash << "\",\"bound\":" << bound << ",\"charge\":\"" << charge
       << "\",\"rays\":[";
    for (size_t k = 0; k < rays.size(); ++k) {
        if (k) os << ",";
        os << "{\"ray\":\"" << rays[k].first << "\",\"series\":\"" << rays[k].second << "\"}";
    }
    os << "],\"omega\":{";
    bool first = true;
    for (const auto& [g, om] : invariants.omega) {
        if (!first) os << ",";
        first = false;
        os << "\"" << dvToString(g) << "\":{\"value\":\"" << om.str() << "\",\"admissible\":"
           << (invariants.admissible.at(g) ? "true" : "false") << "}";
    }
    os << "},\"residuals\":{";
    first = true;
    for (const auto& [g, res] : residuals) {
        if (!first) os << ",";
        first = false;
        os << "\"" << dvToString(g) << "\":\"" << res.str() << "\"";
    }
    os << "},\"omegaMatchesKac\":{";
    first = true;
    for (const auto& [g, ok] : omegaMatchesKac) {
        if (!first) os << ",";
        first = false;
        os << "\"" << dvToString(g) << "\":" << (ok ? "true" : "false");
    }
    os << "},\"allResidualsZero\":" << (allResidualsZero ? "true" : "false") << "}";
    return os.str();
}

DtReport dtPipeline(const Quiver& q, int bound, const std::vector<long>& primes,
                    const CentralCharge& z) {
    const auto t0 = std::chrono::steady_clock::now();
    DtReport rep;
    rep.quiverHash = q.canonicalString();
    rep.bound = bound;
    rep.charge = z.str();
    TorusSeries a = totalSeries(q, bound, primes);
    rep.invariants = extractPerRay(a, z, &rep.rays);
    rep.seconds = secondsSince(t0);
    return rep;
}

DtReport verifyKacConjecture(const Quiver& q, int bound, const std::vector<long>& primes) {
    const auto t0 = std::chrono::steady_clock::now();
    DtReport rep;
    rep.quiverHash = q.canonicalString();
    rep.bound = bound;
    rep.charge = "single-ray";
    const int n = q.numVertices();

    TorusSeries lhs = totalSeries(q, bound, primes);
    KacTable kac = huaKac(q, bound);

    TorusSeries arg(n, bound);
    const MotiveRat oneMinusL = MotiveRat::one() - MotiveRat::L();
    for (const DimVector& g : dimVectorsUpTo(n, bound)) {
        MotiveRat aL = kacMotive(kac.at(g));
        if (aL == MotiveRat::zero()) continue;
        arg.setCoeff(g, (MotiveRat::zero() - aL * MotiveRat::L()) / oneMinusL);
    }
    TorusSeries rhs = plethysticExp(arg);
    rep.rays.emplace_back("all", lhs.str());

    rep.invariants = extractDt(lhs);
    for (const DimVector& g : dimVectorsUpTo(n, bound)) {
        MotiveRat res = lhs.coeff(g) - rhs.coeff(g);
        rep.allResidualsZero = rep.allResidualsZero && res == MotiveRat::zero();
        rep.residuals[g] = res;

        MotiveRat want = MotiveRat::zero() - kacMotive(kac.at(g)) * MotiveRat::L();
        bool match = omegaOrZero(rep.invariants, g) == want;
        rep.omegaMatchesKac[g] = match;
        rep.allResidualsZero = rep.allResidualsZero && match;
    }
    rep.seconds = secondsSince(t0);
    return rep;
}

StabilityReport stabilityInvariance(const Quiver& q, int bound, const std::vector<long>& primes,
                                    const CentralCharge& z1, const CentralCharge& z2) {
    TorusSeries a = totalSeries(q, bound, primes);
    StabilityReport rep;
    rep.first = extractPerRay(a, z1, nullptr);
    rep.second = extractPerRay(a, z2, nullptr);
    for (const DimVector& g : dimVectorsUpTo(q.numVertices(), bound)) {
        bool eq = omegaOrZero(rep.first, g) == omegaOrZero(rep.second, g);
        rep.equalAt[g] = eq;
        rep.allEqual = rep.allEqual && eq;
    }
    return rep;
}

} // namespace qdt
