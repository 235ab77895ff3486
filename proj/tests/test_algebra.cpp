#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qdt/laurent.hpp"
#include "qdt/motive.hpp"
#include "qdt/rational.hpp"

using namespace qdt;

namespace {

std::mt19937 rng(20260814);

Rat randRat() {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    return Rat(num(rng), den(rng));
}

MotiveRat randHalf(bool forceNonzero) {
    std::uniform_int_distribution<int> lo(-2, 0);
    MotiveRat p = MotiveRat::zero();
    int start = lo(rng);
    for (int e = start; e <= start + 3; ++e)
        p += MotiveRat::fromRat(randRat()) * MotiveRat::halfTate(e);
    if (forceNonzero && p.isZero()) p = MotiveRat::one();
    return p;
}

MotiveRat randMotive() { return randHalf(false) / randHalf(true); }

} // namespace

TEST_CASE("rational string round trip") {
    CHECK(ratToString(Rat(5)) == "5");
    CHECK(ratToString(Rat(-7, 3)) == "-7/3");
    CHECK(ratFromString("44/3") == Rat(44, 3));
    CHECK(ratFromString("-2") == Rat(-2));
    CHECK_THROWS_AS(ratFromString("x"), std::invalid_argument);
}

TEST_CASE("laurent polynomial arithmetic") {
    LaurentPoly x = LaurentPoly::monomial(1, 1);
    LaurentPoly p = (x + LaurentPoly::constant(1)) * (x - LaurentPoly::constant(1));
    CHECK(p.coeff(2) == Rat(1));
    CHECK(p.coeff(0) == Rat(-1));
    CHECK(p.coeff(1) == Rat(0));
    CHECK(p.deg() == 2);
    CHECK(p.lowDeg() == 0);

    LaurentPoly q = p.shifted(-1);
    CHECK(q.lowDeg() == -1);
    CHECK(q.evaluate(Rat(2)) == Rat(3, 2));
    CHECK_THROWS_AS(LaurentPoly::monomial(1, -1).evaluate(Rat(0)), std::domain_error);

    CHECK(p.dilated(2).deg() == 4);
}

TEST_CASE("polynomial division and gcd") {
    LaurentPoly x = LaurentPoly::monomial(1, 1);
    LaurentPoly a = x * x - LaurentPoly::constant(1);
    LaurentPoly b = x - LaurentPoly::constant(1);
    CHECK(polyDivExact(a, b) == x + LaurentPoly::constant(1));
    CHECK_THROWS_AS(polyDivExact(x * x + LaurentPoly::constant(1), b), std::logic_error);

    LaurentPoly g = polyGcd(a, b);
    // Monic gcd of (x^2-1, x-1) is x-1.
    CHECK(g == b);
}

TEST_CASE("motive adams operations") {
    MotiveRat L = MotiveRat::L();
    CHECK(L.adams(2) == L.pow(2));
    MotiveRat f = L / (MotiveRat::one() - L);
    CHECK(f.adams(2) == L.pow(2) / (MotiveRat::one() - L.pow(2)));
    CHECK(MotiveRat::halfTate(1).adams(3) == MotiveRat::halfTate(3));
    CHECK(f.adams(1) == f);
    for (int trial = 0; trial < 10; ++trial) {
        MotiveRat m = randMotive();
        CHECK(m.adams(2).adams(3) == m.adams(6));
    }
    MotiveRat c = MotiveRat::fromRat(Rat(7, 5));
    CHECK(c.adams(4) == c);
    CHECK_THROWS_AS(L.adams(0), std::invalid_argument);
}

TEST_CASE("adams is a ring homomorphism") {
    for (int trial = 0; trial < 10; ++trial) {
        MotiveRat a = randMotive(), b = randMotive();
        CHECK((a + b).adams(3) == a.adams(3) + b.adams(3));
        CHECK((a * b).adams(3) == a.adams(3) * b.adams(3));
    }
}

TEST_CASE("evaluation at a prime") {
    MotiveRat L = MotiveRat::L();
    CHECK(L.pow(2) / (L - MotiveRat::one()) == MotiveRat::parse("L^2/(L-1)"));
    CHECK((L.pow(2) / (L - MotiveRat::one())).evalAtPrime(2) == Rat(4));
    CHECK((MotiveRat::one() / (L - MotiveRat::one())).evalAtPrime(3) == Rat(1, 2));
    CHECK_THROWS_AS(MotiveRat::halfTate(1).evalAtPrime(2), std::domain_error);
    CHECK_THROWS_WITH(MotiveRat::halfTate(1).evalAtPrime(2), "non-integral Tate weight");
    CHECK_THROWS_WITH((MotiveRat::one() / (L - MotiveRat::integer(2))).evalAtPrime(2),
                      "pole at evaluation point");
}

TEST_CASE("field axioms on random triples") {
    for (int trial = 0; trial < 12; ++trial) {
        MotiveRat a = randMotive(), b = randMotive(), c = randMotive();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        if (!b.isZero()) CHECK(a / b * b == a);
    }
}

TEST_CASE("canonical form is stable under rebuilding") {
    for (int trial = 0; trial < 12; ++trial) {
        MotiveRat a = randMotive();
        CHECK(MotiveRat::parse(a.str()) == a);
        CHECK(a.str() == MotiveRat::parse(a.str()).str());
    }
}

TEST_CASE("motive rendering conventions") {
    CHECK(MotiveRat::L().str() == "L");
    CHECK(MotiveRat::halfTate(1).str() == "s");
    CHECK(MotiveRat::halfTate(3).str() == "s*L");
    CHECK(MotiveRat::halfTate(-1).str() == "s*L^-1");
    CHECK(MotiveRat::parse("(L^2-1)/(L-1)") == MotiveRat::L() + MotiveRat::one());
    CHECK(MotiveRat::parse("s^2") == MotiveRat::L());
}

TEST_CASE("gl motives") {
    MotiveRat L = MotiveRat::L();
    CHECK(glMotive(0) == MotiveRat::one());
    CHECK(glMotive(1) == L - MotiveRat::one());
    CHECK(glMotive(2) == (L.pow(2) - MotiveRat::one()) * (L.pow(2) - L));
    CHECK(glMotive(2).evalAtPrime(2) == Rat(6));
    CHECK(glMotive(3).evalAtPrime(2) == Rat(168));
}

TEST_CASE("laurent and polynomial predicates") {
    MotiveRat L = MotiveRat::L();
    CHECK(L.pow(-2).isLaurentInL());
    CHECK_FALSE((MotiveRat::one() / (L - MotiveRat::one())).isLaurent());
    CHECK((L.pow(2) + L).isPolyInL());
    CHECK_FALSE(MotiveRat::halfTate(1).isLaurentInL());
    auto coeffs = (L.pow(2) + MotiveRat::integer(3)).polyCoeffsInL();
    CHECK(coeffs == std::vector<Rat>{Rat(3), Rat(0), Rat(1)});
}

TEST_CASE("rational functions in v") {
    RatV v = RatV::v();
    RatV f = v.pow(2) / (v.pow(2) - RatV::one());
    CHECK(f == RatV::one() / (RatV::one() - v.pow(-2)));
    CHECK(f.evaluate(Rat(2)) == Rat(4, 3));
    CHECK(RatV::parse(f.str()) == f);
    CHECK((v + v.pow(-1)).evaluate(Rat(2)) == Rat(5, 2));
}
