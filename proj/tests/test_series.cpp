#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qdt/torus_series.hpp"

using namespace qdt;

namespace {

std::mt19937 rng(4242);

MotiveRat randCoeff() {
    std::uniform_int_distribution<int> c(-2, 2), e(0, 2);
    return MotiveRat::fromRat(c(rng)) * MotiveRat::L(e(rng));
}

TorusSeries randSeriesNoConst(int n, int bound) {
    TorusSeries f(n, bound);
    for (const DimVector& g : dimVectorsUpTo(n, bound)) f.setCoeff(g, randCoeff());
    return f;
}

TorusSeries geometric(const MotiveRat& c, int bound) {
    // 1 + c t + c^2 t^2 + ... on one vertex.
    TorusSeries s(1, bound);
    MotiveRat acc = MotiveRat::one();
    for (int k = 0; k <= bound; ++k) {
        s.setCoeff({k}, acc);
        acc *= c;
    }
    return s;
}

} // namespace

TEST_CASE("cauchy product") {
    TorusSeries onePlusT = TorusSeries::one(1, 3) + TorusSeries::monomial({1}, MotiveRat::one(), 3);
    TorusSeries sq = onePlusT * onePlusT;
    CHECK(sq.coeff({0}) == MotiveRat::one());
    CHECK(sq.coeff({1}) == MotiveRat::integer(2));
    CHECK(sq.coeff({2}) == MotiveRat::one());
    CHECK(sq.coeff({3}) == MotiveRat::zero());

    TorusSeries a = randSeriesNoConst(2, 3) + TorusSeries::one(2, 3);
    CHECK(a * TorusSeries::one(2, 3) == a);

    TorusSeries u = TorusSeries::one(2, 2) + TorusSeries::monomial({1, 0}, MotiveRat::one(), 2);
    TorusSeries w = TorusSeries::one(2, 2) + TorusSeries::monomial({0, 1}, MotiveRat::one(), 2);
    TorusSeries uw = u * w;
    CHECK(uw.coeff({0, 0}) == MotiveRat::one());
    CHECK(uw.coeff({1, 0}) == MotiveRat::one());
    CHECK(uw.coeff({0, 1}) == MotiveRat::one());
    CHECK(uw.coeff({1, 1}) == MotiveRat::one());
    CHECK(uw.coeff({2, 0}) == MotiveRat::zero());

    CHECK_THROWS_AS(u * TorusSeries::one(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(u.coeff({3, 0}), std::out_of_range);
}

TEST_CASE("multiplicative inverse") {
    TorusSeries oneMinusT =
        TorusSeries::one(1, 5) - TorusSeries::monomial({1}, MotiveRat::one(), 5);
    CHECK(oneMinusT.inverse() == geometric(MotiveRat::one(), 5));
    CHECK(TorusSeries::one(2, 3).inverse() == TorusSeries::one(2, 3));
    CHECK_THROWS_WITH(randSeriesNoConst(1, 3).inverse(), "non-unit constant term");

    for (int trial = 0; trial < 5; ++trial) {
        TorusSeries a = TorusSeries::one(2, 4) + randSeriesNoConst(2, 4);
        CHECK(a * a.inverse() == TorusSeries::one(2, 4));
    }
}

TEST_CASE("plethystic exponential pinned values") {
    TorusSeries t = TorusSeries::monomial({1}, MotiveRat::one(), 6);
    CHECK(plethysticExp(t) == geometric(MotiveRat::one(), 6));

    MotiveRat L = MotiveRat::L();
    TorusSeries lt = TorusSeries::monomial({1}, L, 5);
    CHECK(plethysticExp(lt) == geometric(L, 5));

    MotiveRat c = L / (L - MotiveRat::one());
    TorusSeries ct = TorusSeries::monomial({1}, c, 2);
    TorusSeries e = plethysticExp(ct);
    CHECK(e.coeff({0}) == MotiveRat::one());
    CHECK(e.coeff({1}) == c);
    MotiveRat half = MotiveRat::fromRat(Rat(1, 2));
    CHECK(e.coeff({2}) == half * c.adams(2) + half * c * c);

    CHECK(plethysticExp(TorusSeries::zero(2, 3)) == TorusSeries::one(2, 3));
    CHECK_THROWS_WITH(plethysticExp(TorusSeries::one(1, 2)), "nonzero constant term");
}

TEST_CASE("plethystic logarithm pinned values") {
    CHECK(plethysticLog(geometric(MotiveRat::one(), 5)) ==
          TorusSeries::monomial({1}, MotiveRat::one(), 5));
    CHECK(plethysticLog(TorusSeries::one(2, 4)) == TorusSeries::zero(2, 4));
    CHECK_THROWS_WITH(plethysticLog(TorusSeries::zero(1, 2)), "constant term must be 1");

    MotiveRat L = MotiveRat::L();
    TorusSeries f(1, 4);
    f.setCoeff({1}, L);
    f.setCoeff({2}, L.pow(2));
    CHECK(plethysticLog(plethysticExp(f)) == f);
}

TEST_CASE("exp log round trip on random series") {
    for (int trial = 0; trial < 10; ++trial) {
        TorusSeries f = randSeriesNoConst(2, 5);
        CHECK(plethysticLog(plethysticExp(f)) == f);

        TorusSeries a = TorusSeries::one(2, 5) + randSeriesNoConst(2, 5);
        CHECK(plethysticExp(plethysticLog(a)) == a);
    }
}

TEST_CASE("exponential law") {
    for (int trial = 0; trial < 8; ++trial) {
        TorusSeries f = randSeriesNoConst(2, 4), g = randSeriesNoConst(2, 4);
        CHECK(plethysticExp(f + g) == plethysticExp(f) * plethysticExp(g));
        CHECK(plethysticExp(f) * plethysticExp(-f) == TorusSeries::one(2, 4));
    }
}

TEST_CASE("adams on series") {
    TorusSeries f(2, 4);
    MotiveRat L = MotiveRat::L();
    f.setCoeff({1, 0}, L);
    f.setCoeff({1, 1}, L + MotiveRat::one());
    TorusSeries f2 = f.adamsSeries(2);
    CHECK(f2.coeff({2, 0}) == L.pow(2));
    CHECK(f2.coeff({2, 2}) == L.pow(2) + MotiveRat::one());
    CHECK(f2.coeff({1, 0}) == MotiveRat::zero());
    TorusSeries f3 = f.adamsSeries(3);
    CHECK(f3.coeff({3, 0}) == L.pow(3));
    CHECK(f3.terms().size() == 1);  // (3,3) exceeds the bound and is dropped
    CHECK(f.adamsSeries(5).isZero());
    CHECK_THROWS_AS(f.adamsSeries(0), std::invalid_argument);
}

TEST_CASE("central charges and rays") {
    CentralCharge z({Rat(-1), Rat(1)}, {Rat(1), Rat(1)});
    auto v10 = z.eval({1, 0});
    CHECK(v10.first == Rat(-1));
    CHECK(v10.second == Rat(1));
    CHECK(z.rayKey({1, 0}) == std::make_pair(Int(-1), Int(1)));
    CHECK(z.rayKey({1, 1}) == std::make_pair(Int(0), Int(1)));
    CHECK(z.rayKey({2, 2}) == std::make_pair(Int(0), Int(1)));
    CHECK(z.rayKey({0, 2}) == std::make_pair(Int(1), Int(1)));
    z.requireGeneric(3);

    CentralCharge degenerate({Rat(0), Rat(0)}, {Rat(1), Rat(1)});
    CHECK_THROWS_WITH(degenerate.requireGeneric(2), "degenerate charge");

    CHECK_THROWS_AS(CentralCharge({Rat(0)}, {Rat(-1)}), std::invalid_argument);

    // Decreasing argument: e1 (135 deg), e1+e2 (90 deg), e2 (45 deg).
    RayArgDecreasing cmp;
    auto r1 = z.rayKey({1, 0}), rm = z.rayKey({1, 1}), r2 = z.rayKey({0, 1});
    CHECK(cmp(r1, rm));
    CHECK(cmp(rm, r2));
    CHECK(cmp(r1, r2));
    CHECK_FALSE(cmp(r2, rm));

    // Charges with rational slopes normalize to primitive integer directions.
    CentralCharge zr({Rat(1, 2), Rat(2, 3)}, {Rat(1, 3), Rat(1)});
    CHECK(zr.rayKey({2, 0}) == std::make_pair(Int(3), Int(2)));
}
