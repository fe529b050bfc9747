#include "heckeq/numutil.hpp"

#include <algorithm>
#include <sstream>

namespace heckeq {

std::optional<Rational> exact_pow(const Rational& q, const Rational& expo) {
    if (q <= 0) {
        if (q == 0 && expo > 0) return Rational(0);
        return std::nullopt;
    }
    Int e_num = num(expo);
    Int e_den = den(expo);
    // q^(e_num/e_den): first take the e_den-th root exactly if possible.
    Rational base = q;
    if (e_den > 1) {
        if (e_den > 64) return std::nullopt;
        auto root_of = [&](const Int& n) -> std::optional<Int> {
            if (n == 1) return Int(1);
            // integer k-th root by binary search
            Int lo = 1, hi = n;
            unsigned long k = e_den.convert_to<unsigned long>();
            while (lo < hi) {
                Int mid = (lo + hi) / 2;
                if (int_pow(mid, k) < n)
                    lo = mid + 1;
                else
                    hi = mid;
            }
            if (int_pow(lo, k) == n) return lo;
            return std::nullopt;
        };
        auto rn = root_of(num(q));
        auto rd = root_of(den(q));
        if (!rn || !rd) return std::nullopt;
        base = Rational(*rn, *rd);
    }
    if (int_abs(e_num) > 1000000) return std::nullopt;
    return rat_pow(base, e_num.convert_to<long>());
}

std::vector<std::pair<Int, unsigned>> factorize(Int n) {
    if (n < 0) n = -n;
    if (n == 0) throw std::domain_error("factorize: zero");
    std::vector<std::pair<Int, unsigned>> out;
    for (Int p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::pair<Int, Int> squarefree_part(Int n) {
    if (n <= 0) throw std::domain_error("squarefree_part: need n > 0");
    Int s = 1, k = 1;
    for (auto& [p, e] : factorize(n)) {
        if (e % 2) s *= p;
        k *= int_pow(p, e / 2);
    }
    return {s, k};
}

bool is_squarefree(const Int& n) {
    if (n == 0) return false;
    for (auto& [p, e] : factorize(n))
        if (e > 1) return false;
    return true;
}

bool is_prime(const Int& n) {
    if (n < 2) return false;
    for (Int p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

std::vector<Int> divisors(const Int& n) {
    std::vector<Int> out{1};
    for (auto& [p, e] : factorize(n)) {
        size_t sz = out.size();
        Int pk = 1;
        for (unsigned i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < sz; ++j) out.push_back(out[j] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string rat_to_string(const Rational& q) {
    std::ostringstream os;
    os << num(q);
    if (den(q) != 1) os << "/" << den(q);
    return os.str();
}

Rational rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Int(s));
    Int n(s.substr(0, slash));
    Int d(s.substr(slash + 1));
    if (d == 0) throw std::invalid_argument("rat_from_string: zero denominator");
    return Rational(n, d);
}

Xgcd xgcd(Int a, Int b) {
    Int old_r = a, r = b;
    Int old_s = 1, s = 0;
    Int old_t = 0, t = 1;
    while (r != 0) {
        Int q = old_r / r;
        Int tmp = old_r - q * r;
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

Int inv_mod(const Int& a, const Int& m) {
    auto [g, x, y] = xgcd(mod_pos(a, m), m);
    (void)y;
    if (g != 1) throw std::domain_error("inv_mod: not coprime");
    return mod_pos(x, m);
}

}  // namespace heckeq
