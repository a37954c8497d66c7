#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace homolift {

using Integer = boost::multiprecision::cpp_int;

// Representative of a mod m in [0, m); m > 0.
inline Integer floor_mod(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

// floor(a / b) for b > 0.
inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (a % b != 0 && a < 0) q -= 1;
    return q;
}

struct Xgcd {
    Integer g;  // non-negative
    Integer s;
    Integer t;  // s*a + t*b == g
};

Xgcd xgcd(const Integer& a, const Integer& b);

Integer gcd(const Integer& a, const Integer& b);

// A unit u of Z_k with u*a = gcd(a, k) mod k. Requires a != 0 mod k, k >= 2.
Integer normalizing_unit(const Integer& a, const Integer& k);

// Inverse of a modulo m, or 0 if a is not a unit. m >= 2.
Integer inverse_mod(const Integer& a, const Integer& m);

std::int64_t to_int64(const Integer& a);

inline std::string to_string(const Integer& a) { return a.str(); }

}  // namespace homolift
