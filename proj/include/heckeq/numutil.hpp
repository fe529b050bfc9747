// Exact integer / rational helpers shared by all modules.
//
// Everything downstream (ideal arithmetic, unit groups, class groups,
// Hecke coefficients) must verify to equality, so the scalar layer is
// arbitrary-precision rationals; no floating point leaks in here except
// through the explicit to_double converters.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace heckeq {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }
inline Int int_lcm(Int a, Int b) { return boost::multiprecision::lcm(a, b); }

inline Int int_abs(const Int& a) { return a < 0 ? Int(-a) : a; }

// floor(a / b) for b != 0, exact.
inline Int floor_div(const Int& a, const Int& b) {
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// a mod b normalized into [0, |b|).
inline Int mod_pos(const Int& a, const Int& b) {
    Int m = a % b;
    if (m < 0) m += int_abs(b);
    return m;
}

inline Int int_floor(const Rational& q) { return floor_div(num(q), den(q)); }

// Fractional part in [0, 1).
inline Rational frac_part(const Rational& q) { return q - Rational(int_floor(q)); }

inline Int isqrt_floor(const Int& n) {
    if (n < 0) throw std::domain_error("isqrt_floor: negative argument");
    return boost::multiprecision::sqrt(n);
}

inline bool is_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = isqrt_floor(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

inline Int int_pow(Int base, unsigned long e) {
    Int r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rational rat_pow(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    if (q == 0) {
        if (e < 0) throw std::domain_error("rat_pow: 0 to negative power");
        return Rational(0);
    }
    Rational r(int_pow(num(q), static_cast<unsigned long>(e < 0 ? -e : e)),
               int_pow(den(q), static_cast<unsigned long>(e < 0 ? -e : e)));
    if (e < 0) r = Rational(1) / r;
    return r;
}

// Exact q^(p/r) when the result is rational; nullopt otherwise (caller falls
// back to floating point).  Used for KMS weights N^{-beta} at rational beta.
std::optional<Rational> exact_pow(const Rational& q, const Rational& expo);

// Trial-division factorization, smallest prime first.  Fine for the sizes
// this project meets (norms and levels of a few thousand).
std::vector<std::pair<Int, unsigned>> factorize(Int n);

// Largest squarefree s with n = s * k^2; returns {s, k}.  n > 0.
std::pair<Int, Int> squarefree_part(Int n);

bool is_squarefree(const Int& n);
bool is_prime(const Int& n);

std::vector<Int> divisors(const Int& n);

inline double to_double(const Rational& q) {
    return q.convert_to<double>();
}

std::string rat_to_string(const Rational& q);
Rational rat_from_string(const std::string& s);

// Extended gcd: returns g = gcd(a,b) and x,y with a x + b y = g.
struct Xgcd {
    Int g, x, y;
};
Xgcd xgcd(Int a, Int b);

// Inverse of a mod m (m > 0), throws if not coprime.
Int inv_mod(const Int& a, const Int& m);

}  // namespace heckeq
