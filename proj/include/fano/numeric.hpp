#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <limits>
#include <tuple>

namespace fano {

// Arbitrary-precision integers and rationals; polygon coordinates are
// unbounded by contract, so all lattice arithmetic goes through these.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

/// Remainder in [0, m) for m > 0, regardless of the sign of a.
inline Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

/// Extended gcd: returns (g, alpha, beta) with g = gcd(|a|,|b|) >= 0 and
/// alpha*a + beta*b = g. Convention: (0,0) -> (0,0,0).
inline std::tuple<Int, Int, Int> extended_gcd(const Int& a, const Int& b) {
    if (a == 0 && b == 0) return {0, 0, 0};
    // classical recursion on |a|,|b|, signs restored at the end
    Int old_r = abs_int(a), r = abs_int(b);
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int quot = old_r / r;
        Int tmp = old_r - quot * r;
        old_r = r;
        r = tmp;
        tmp = old_s - quot * s;
        old_s = s;
        s = tmp;
        tmp = old_t - quot * t;
        old_t = t;
        t = tmp;
    }
    if (a < 0) old_s = -old_s;
    if (b < 0) old_t = -old_t;
    return {old_r, old_s, old_t};
}

/// Binomial coefficient C(n, k) as an exact integer; 0 outside 0 <= k <= n.
inline Int binomial(const Int& n, const Int& k) {
    if (k < 0 || k > n) return 0;
    Int kk = k;
    if (n - k < kk) kk = n - k;
    Int num = 1, den = 1;
    for (Int i = 0; i < kk; ++i) {
        num *= n - i;
        den *= i + 1;
    }
    return num / den;
}

inline Int ceil_div(const Int& a, const Int& b) {
    // b > 0 assumed
    Int q = a / b;
    if (a % b != 0 && a > 0) ++q;
    return q;
}

/// Checked narrowing for code paths that index or exponentiate by coordinates.
inline long long to_ll(const Int& n) {
    if (n < std::numeric_limits<long long>::min() || n > std::numeric_limits<long long>::max())
        throw std::overflow_error("lattice coordinate exceeds 64-bit range");
    return n.convert_to<long long>();
}

}  // namespace fano
