#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace qdt {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int ratNum(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int ratDen(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Int intGcd(const Int& a, const Int& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Int intLcm(const Int& a, const Int& b) {
    return boost::multiprecision::lcm(a, b);
}

inline Int factorial(int n) {
    Int f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

inline std::string ratToString(const Rat& r) {
    if (ratDen(r) == 1) return ratNum(r).str();
    return ratNum(r).str() + "/" + ratDen(r).str();
}

/** Parses "p" or "p/q" with optional sign. Throws std::invalid_argument. */
inline Rat ratFromString(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

} // namespace qdt
