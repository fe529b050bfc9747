// Independent oracles used by the test suites.  These deliberately avoid the
// library's algorithms: brute-force Pell searches, naive lattice reduction,
// direct residue/norm enumerations.

#pragma once

#include "heckeq/enumeration.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace heckeq::oracle {

// Smallest unit > 1 of O_K by brute-force Pell search over the omega
// coefficient; bound is the search limit on that coefficient.
inline FieldElement brute_pell_unit(const FieldSpec& f, long bound = 2000) {
    if (!f.is_real_quadratic()) throw std::invalid_argument("brute_pell_unit: real fields only");
    Int d = f.d;
    for (Int y = 1; y <= bound; ++y) {
        if (f.half) {
            // (x + y sqrt d)/2 with x^2 - d y^2 = +-4, x = y mod 2
            for (int sgn : {-1, +1}) {
                Int t = d * y * y + sgn * 4;
                Int x;
                if (t > 0 && is_square(t, &x) && mod_pos(x - y, 2) == 0)
                    return FieldElement(Rational((x - y) / 2), Rational(y));
            }
        } else {
            for (int sgn : {-1, +1}) {
                Int t = d * y * y + sgn;
                Int x;
                if (t > 0 && is_square(t, &x)) return FieldElement(Rational(x), Rational(y));
            }
        }
    }
    throw std::logic_error("brute_pell_unit: bound exhausted");
}

// Naive HNF of a rank-2 integer lattice from coordinate pairs: repeated
// size reduction by the generator with the smallest nonzero omega part.
inline std::array<Int, 3> naive_hnf(std::vector<std::pair<Int, Int>> gens) {
    auto nonzero_v = [&]() {
        int best = -1;
        for (size_t i = 0; i < gens.size(); ++i) {
            if (gens[i].second == 0) continue;
            if (best < 0 || int_abs(gens[i].second) < int_abs(gens[best].second))
                best = static_cast<int>(i);
        }
        return best;
    };
    while (true) {
        int piv = nonzero_v();
        if (piv < 0) throw std::invalid_argument("naive_hnf: rank < 2");
        bool changed = false;
        for (size_t i = 0; i < gens.size(); ++i) {
            if (static_cast<int>(i) == piv || gens[i].second == 0) continue;
            Int q = floor_div(gens[i].second, gens[piv].second);
            gens[i].first -= q * gens[piv].first;
            gens[i].second -= q * gens[piv].second;
            if (gens[i].second != 0) changed = true;
        }
        if (!changed) {
            // pivot has the unique nonzero v up to multiples
            Int c = int_abs(gens[piv].second);
            Int ustar = gens[piv].second > 0 ? gens[piv].first : -gens[piv].first;
            Int a = 0;
            for (size_t i = 0; i < gens.size(); ++i)
                if (static_cast<int>(i) != piv) a = int_gcd(a, gens[i].first);
            if (a == 0) throw std::invalid_argument("naive_hnf: rank < 2");
            return {int_abs(a), mod_pos(ustar, int_abs(a)), c};
        }
    }
}

// Product ideal via span of element products, reduced with naive_hnf.
inline std::array<Int, 3> product_span_oracle(const Ideal& I, const Ideal& J,
                                              const FieldSpec& f) {
    FieldElement i1(Rational(I.a)), i2(Rational(I.b), Rational(I.c));
    FieldElement j1(Rational(J.a)), j2(Rational(J.b), Rational(J.c));
    FieldElement omega(Rational(0), Rational(1));
    std::vector<std::pair<Int, Int>> gens;
    for (auto& u : {i1, i2})
        for (auto& v : {j1, j2}) {
            FieldElement p = fe_mul(u, v, f);
            gens.push_back({num(p.x), num(p.y)});
            FieldElement pw = fe_mul(p, omega, f);
            gens.push_back({num(pw.x), num(pw.y)});
        }
    return naive_hnf(gens);
}

// All integral ideals of norm n by direct normal-form enumeration:
// triples (a, b, c) with ac = n, c | a, c | b, 0 <= b < a and
// ac | N(b + c*omega).
inline std::vector<Ideal> ideals_of_norm_oracle(const Int& n, const FieldSpec& f) {
    std::vector<Ideal> out;
    if (f.is_rational()) {
        out.push_back(Ideal{n, 0, 1, 1});
        return out;
    }
    Int tr = f.omega_trace(), nm = f.omega_norm();
    for (Int c = 1; c * c <= n; ++c) {
        if (n % c != 0) continue;
        Int a = n / c;
        if (a % c != 0) continue;
        for (Int b = 0; b < a; b += c) {
            Int nb = b * b + b * c * tr + c * c * nm;  // N(b + c*omega)
            if (mod_pos(nb, a * c) != 0) continue;
            out.push_back(Ideal{a, b, c, f.d});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Ideal> ideals_up_to_oracle(const Int& B, const FieldSpec& f) {
    std::vector<Ideal> out;
    for (Int n = 1; n <= B; ++n) {
        auto v = ideals_of_norm_oracle(n, f);
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

}  // namespace heckeq::oracle
