#pragma once
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qdt/dimvec.hpp"
#include "qdt/motive.hpp"
#include "qdt/quiver.hpp"
#include "qdt/torus_series.hpp"

namespace qdt {

/** Primitive integer direction (re, im) of a charge ray, im > 0. */
using RayKey = std::pair<Int, Int>;

/**
 * Total series of the preprojective stack within the height bound: the
 * coefficient of e_g is L^{chi(g,g)} [mu_g^{-1}(0)] / [G_g], assembled from the
 * census motive. Each coefficient is cross-checked against the brute-force
 * point count at every listed prime where that count is feasible; a mismatch
 * is a hard error.
 */
TorusSeries totalSeries(const Quiver& q, int bound, const std::vector<long>& primes);

/**
 * Factorization of a into ray-supported factors, maximal argument first.
 * Computed twice: by peeling the maximal-slope ray and dividing, and by
 * exponentiating the ray restriction of the plethystic logarithm. The two
 * routes must agree coefficient-wise, the product of the factors must
 * reproduce a, and trivial factors are dropped from the result.
 */
std::vector<std::pair<RayKey, TorusSeries>> hnFactorize(const TorusSeries& a,
                                                        const CentralCharge& z);

/** Invariants extracted from one factor, with per-class admissibility flags. */
struct OmegaTable {
    std::map<DimVector, MotiveRat, GradedLex> omega;
    /** True when omega is a Laurent polynomial in the half-Tate variable. */
    std::map<DimVector, bool, GradedLex> admissible;
};

/**
 * Reads off Omega(g) = (1 - L) [e_g] log(a), the coefficients that present a
 * as Sym(sum Omega(g) e_g / (1 - L)). Requires a(0) = 1; checks that the
 * plethystic exponential reassembles a exactly.
 */
OmegaTable extractDt(const TorusSeries& a);

struct DtReport {
    std::string quiverHash;
    int bound = 0;
    std::string charge;
    /** Ray factors, maximal argument first, keyed by rendered direction. */
    std::vector<std::pair<std::string, std::string>> rays;
    OmegaTable invariants;
    /** Per-class difference between the point-count and Kac-series sides. */
    std::map<DimVector, MotiveRat, GradedLex> residuals;
    std::map<DimVector, bool, GradedLex> omegaMatchesKac;
    bool allResidualsZero = true;
    double seconds = 0.0;

    /** Deterministic report body; timing is deliberately excluded. */
    std::string toJson() const;
};

/** Factorize the total series under z and extract invariants per ray. */
DtReport dtPipeline(const Quiver& q, int bound, const std::vector<long>& primes,
                    const CentralCharge& z);

/**
 * Compares the total series against Exp(sum -a_g(L) L e_g / (1 - L)) built
 * from the Kac table, on the single degenerate ray. Residuals and the
 * equivalent check Omega(g) = -a_g(L) L are reported per class.
 */
DtReport verifyKacConjecture(const Quiver& q, int bound, const std::vector<long>& primes);

struct StabilityReport {
    std::map<DimVector, bool, GradedLex> equalAt;
    bool allEqual = true;
    OmegaTable first, second;
};

/**
 * Extracts Omega under two generic charges and compares class by class;
 * missing entries count as zero.
 */
StabilityReport stabilityInvariance(const Quiver& q, int bound, const std::vector<long>& primes,
                                    const CentralCharge& z1, const CentralCharge& z2);

} // namespace qdt
