#include "homolift/integer.hpp"

#include "homolift/error.hpp"

#include <limits>

namespace homolift {

Xgcd xgcd(const Integer& a, const Integer& b) {
    Integer old_r = a, r = b;
    Integer old_s = 1, s = 0;
    Integer old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer x = a < 0 ? Integer(-a) : a;
    Integer y = b < 0 ? Integer(-b) : b;
    while (y != 0) {
        Integer t = x % y;
        x = y;
        y = t;
    }
    return x;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
    Xgcd e = xgcd(floor_mod(a, m), m);
    if (e.g != 1) return 0;
    return floor_mod(e.s, m);
}

Integer normalizing_unit(const Integer& a, const Integer& k) {
    Integer ar = floor_mod(a, k);
    if (ar == 0) throw Error(ErrorKind::internal, "normalizing_unit: zero entry");
    Integer g = gcd(ar, k);
    Integer kp = k / g;
    Integer u = kp == 1 ? Integer(1) : inverse_mod(ar / g, kp);
    // Some lift of u modulo k/g is a unit modulo k.
    while (gcd(u, k) != 1) u += kp;
    return floor_mod(u, k);
}

std::int64_t to_int64(const Integer& a) {
    if (a > std::numeric_limits<std::int64_t>::max() || a < std::numeric_limits<std::int64_t>::min())
        throw Error(ErrorKind::internal, "integer does not fit in 64 bits");
    return static_cast<std::int64_t>(a);
}

}  // namespace homolift
