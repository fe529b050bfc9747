#include "heckeq/ideal.hpp"

#include <sstream>

namespace heckeq {

namespace {

void check_same_field(const Ideal& I, const Ideal& J) {
    if (I.d != J.d) throw std::invalid_argument("ideal arithmetic: mixed fields");
}

}  // namespace

Ideal unit_ideal(const FieldSpec& f) {
    Ideal I;
    I.d = f.d;
    return I;
}

Ideal ideal_from_module(const FieldSpec& f, const std::vector<std::pair<Int, Int>>& gens) {
    // HNF of the 2-dimensional lattice spanned by (u_i, v_i).
    Int c = 0;
    for (auto& [u, v] : gens) c = int_gcd(c, v);
    if (c == 0) throw std::invalid_argument("ideal_from_module: rank < 2 module");
    // find a combination with omega-coordinate exactly c
    Int ustar = 0, vcur = 0, ucur = 0;
    bool have = false;
    for (auto& [u, v] : gens) {
        if (!have) {
            ucur = u;
            vcur = v;
            have = true;
            continue;
        }
        if (vcur == 0 && v == 0) {
            ucur = int_gcd(ucur, u);
            continue;
        }
        auto [g, s, t] = xgcd(vcur, v);
        Int nu = s * ucur + t * u;
        ucur = nu;
        vcur = g;
    }
    if (int_abs(vcur) != c) {
        // gcd accumulated differently; re-run a simple pass
        // (xgcd chain above always ends with |vcur| = c)
        throw std::logic_error("ideal_from_module: hnf failure");
    }
    if (vcur < 0) {
        vcur = -vcur;
        ucur = -ucur;
    }
    ustar = ucur;
    // reduce all generators to omega-coordinate 0, collect gcd of 1-coordinates
    Int a = 0;
    for (auto& [u, v] : gens) {
        Int k = v / c;  // exact
        a = int_gcd(a, u - k * ustar);
    }
    if (a == 0) throw std::invalid_argument("ideal_from_module: rank < 2 module");
    a = int_abs(a);
    Ideal I;
    I.d = f.d;
    I.a = a;
    I.c = c;
    I.b = mod_pos(ustar, a);
    if (I.a % I.c != 0 || I.b % I.c != 0)
        throw std::invalid_argument("ideal_from_module: module is not an ideal");
    return I;
}

Ideal principal_ideal(const FieldElement& z, const FieldSpec& f) {
    if (z.is_zero()) throw std::domain_error("principal_ideal: zero element");
    if (!fe_is_integral(z, f)) throw std::invalid_argument("principal_ideal: non-integral element");
    if (f.is_rational()) {
        Ideal I;
        I.d = 1;
        I.a = int_abs(num(z.x));
        return I;
    }
    FieldElement zw = fe_mul(z, FieldElement(Rational(0), Rational(1)), f);
    return ideal_from_module(f, {{num(z.x), num(z.y)}, {num(zw.x), num(zw.y)}});
}

Ideal ideal_from_generators(const std::vector<FieldElement>& gens, const FieldSpec& f) {
    std::vector<std::pair<Int, Int>> mods;
    FieldElement omega(Rational(0), Rational(1));
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        if (!fe_is_integral(g, f))
            throw std::invalid_argument("ideal_from_generators: non-integral element");
        mods.push_back({num(g.x), num(g.y)});
        if (!f.is_rational()) {
            FieldElement gw = fe_mul(g, omega, f);
            mods.push_back({num(gw.x), num(gw.y)});
        }
    }
    if (mods.empty()) throw std::domain_error("ideal_from_generators: zero ideal");
    if (f.is_rational()) {
        Int a = 0;
        for (auto& [u, v] : mods) a = int_gcd(a, u);
        Ideal I;
        I.d = 1;
        I.a = int_abs(a);
        return I;
    }
    return ideal_from_module(f, mods);
}

Ideal ideal_product(const Ideal& I, const Ideal& J, const FieldSpec& f) {
    check_same_field(I, J);
    if (f.is_rational()) {
        Ideal K;
        K.d = 1;
        K.a = I.a * J.a;
        return K;
    }
    // products of the basis elements
    FieldElement i1(Rational(I.a)), i2(Rational(I.b), Rational(I.c));
    FieldElement j1(Rational(J.a)), j2(Rational(J.b), Rational(J.c));
    std::vector<std::pair<Int, Int>> mods;
    for (const auto& u : {i1, i2})
        for (const auto& v : {j1, j2}) {
            FieldElement p = fe_mul(u, v, f);
            mods.push_back({num(p.x), num(p.y)});
            FieldElement pw = fe_mul(p, FieldElement(Rational(0), Rational(1)), f);
            mods.push_back({num(pw.x), num(pw.y)});
        }
    return ideal_from_module(f, mods);
}

Ideal ideal_scale(const Ideal& I, const Int& n) {
    if (n <= 0) throw std::domain_error("ideal_scale: need n > 0");
    Ideal K = I;
    K.a *= n;
    K.b *= n;
    K.c *= n;
    return K;
}

Ideal ideal_gcd(const Ideal& I, const Ideal& J, const FieldSpec& f) {
    check_same_field(I, J);
    if (f.is_rational()) {
        Ideal K;
        K.d = 1;
        K.a = int_gcd(I.a, J.a);
        return K;
    }
    return ideal_from_module(f, {{I.a, 0}, {I.b, I.c}, {J.a, 0}, {J.b, J.c}});
}

Ideal ideal_conj(const Ideal& I, const FieldSpec& f) {
    if (f.is_rational()) return I;
    // conj(b + c*omega) = b + c*tr - c*omega
    Int tr = f.omega_trace();
    return ideal_from_module(f, {{I.a, 0}, {I.b + I.c * tr, -I.c}});
}

Ideal ideal_pow(const Ideal& I, unsigned e, const FieldSpec& f) {
    Ideal R = unit_ideal(f);
    Ideal base = I;
    while (e) {
        if (e & 1) R = ideal_product(R, base, f);
        base = ideal_product(base, base, f);
        e >>= 1;
    }
    return R;
}

bool ideal_contains(const Ideal& I, const FieldElement& z, const FieldSpec& f) {
    if (!fe_is_integral(z, f)) return false;
    if (f.is_rational()) return num(z.x) % I.a == 0;
    Int u = num(z.x), v = num(z.y);
    if (v % I.c != 0) return false;
    Int k = v / I.c;
    return (u - k * I.b) % I.a == 0;
}

bool ideal_divides(const Ideal& J, const Ideal& I, const FieldSpec& f) {
    check_same_field(I, J);
    return ideal_contains(J, FieldElement(Rational(I.a)), f) &&
           ideal_contains(J, FieldElement(Rational(I.b), Rational(I.c)), f);
}

std::optional<Ideal> ideal_divide_exact(const Ideal& I, const Ideal& J, const FieldSpec& f) {
    if (!ideal_divides(J, I, f)) return std::nullopt;
    Int n = J.norm();
    Ideal K = ideal_product(I, ideal_conj(J, f), f);
    if (K.a % n != 0 || K.b % n != 0 || K.c % n != 0) return std::nullopt;
    Ideal R;
    R.d = I.d;
    R.a = K.a / n;
    R.b = K.b / n;
    R.c = K.c / n;
    return R;
}

int ideal_valuation(const Ideal& I, const Ideal& P, const FieldSpec& f) {
    if (P.is_unit_ideal()) throw std::domain_error("ideal_valuation: trivial ideal");
    int v = 0;
    Ideal cur = I;
    while (true) {
        auto q = ideal_divide_exact(cur, P, f);
        if (!q) return v;
        cur = *q;
        ++v;
        if (v > 4096) throw std::logic_error("ideal_valuation: runaway");
    }
}

std::vector<FieldElement> ideal_transversal(const Ideal& I, const FieldSpec& f) {
    std::vector<FieldElement> out;
    if (f.is_rational()) {
        for (Int s = 0; s < I.a; ++s) out.emplace_back(Rational(s));
        return out;
    }
    for (Int t = 0; t < I.c; ++t)
        for (Int s = 0; s < I.a; ++s) out.emplace_back(Rational(s), Rational(t));
    return out;
}

FieldElement reduce_mod_ideal(const FieldElement& z, const Ideal& I, const FieldSpec& f) {
    if (!fe_is_integral(z, f))
        throw std::invalid_argument("reduce_mod_ideal: non-integral element");
    if (f.is_rational()) return FieldElement(Rational(mod_pos(num(z.x), I.a)));
    Int u = num(z.x), v = num(z.y);
    Int t = mod_pos(v, I.c);
    Int k = (v - t) / I.c;
    u -= k * I.b;
    return {Rational(mod_pos(u, I.a)), Rational(t)};
}

FractionalIdeal make_fractional(Ideal I, Int dn) {
    if (dn <= 0) throw std::domain_error("make_fractional: need positive denominator");
    // content of an HNF ideal equals c
    Int g = int_gcd(I.c, dn);
    if (g > 1) {
        I.a /= g;
        I.b /= g;
        I.c /= g;
        dn /= g;
    }
    return {I, dn};
}

FractionalIdeal fractional_of_element(const FieldElement& x, const FieldSpec& f) {
    if (x.is_zero()) throw std::domain_error("fractional_of_element: zero");
    Int m = fe_denominator(x, f);
    return make_fractional(principal_ideal(fe_mul_rat(x, Rational(m)), f), m);
}

FractionalIdeal fractional_product(const FractionalIdeal& A, const FractionalIdeal& B,
                                   const FieldSpec& f) {
    return make_fractional(ideal_product(A.num, B.num, f), A.dn * B.dn);
}

FractionalIdeal fractional_inverse(const FractionalIdeal& A, const FieldSpec& f) {
    // (I/dn)^{-1} = dn * conj(I) / N(I)
    Ideal nm = ideal_scale(ideal_conj(A.num, f), A.dn);
    return make_fractional(nm, A.num.norm());
}

FractionalIdeal fractional_sum(const FractionalIdeal& A, const FractionalIdeal& B,
                               const FieldSpec& f) {
    Int m = int_lcm(A.dn, B.dn);
    Ideal IA = ideal_scale(A.num, m / A.dn);
    Ideal IB = ideal_scale(B.num, m / B.dn);
    return make_fractional(ideal_gcd(IA, IB, f), m);
}

bool fractional_contains(const FractionalIdeal& A, const FieldElement& z, const FieldSpec& f) {
    if (z.is_zero()) return true;
    FieldElement w = fe_mul_rat(z, Rational(A.dn));
    return fe_is_integral(w, f) && ideal_contains(A.num, w, f);
}

std::pair<Ideal, Ideal> element_ideal_parts(const FieldElement& x, const FieldSpec& f) {
    if (x.is_zero()) throw std::domain_error("element_ideal_parts: zero");
    Int m = fe_denominator(x, f);
    Ideal I = principal_ideal(fe_mul_rat(x, Rational(m)), f);  // (m x)
    Ideal M = ideal_scale(unit_ideal(f), m);                   // (m)
    Ideal G = ideal_gcd(I, M, f);
    Ideal numI = *ideal_divide_exact(I, G, f);
    Ideal denI = *ideal_divide_exact(M, G, f);
    return {numI, denI};
}

FractionalIdeal one_plus_x_module(const FieldElement& x, const FieldSpec& f) {
    FractionalIdeal one{unit_ideal(f), 1};
    return fractional_sum(one, fractional_of_element(x, f), f);
}

std::pair<Rational, Rational> lattice_coords(const FieldElement& z, const FractionalIdeal& M,
                                             const FieldSpec& f) {
    // basis: beta1 = a/dn, beta2 = (b + c*omega)/dn
    (void)f;
    Rational dn(M.dn);
    Rational t2 = z.y * dn / Rational(M.num.c);
    Rational t1 = (z.x * dn - t2 * Rational(M.num.b)) / Rational(M.num.a);
    return {t1, t2};
}

FieldElement reduce_mod_lattice(const FieldElement& z, const FractionalIdeal& M,
                                const FieldSpec& f) {
    auto [t1, t2] = lattice_coords(z, M, f);
    Rational f1 = frac_part(t1), f2 = frac_part(t2);
    Rational dn(M.dn);
    Rational x = (f1 * Rational(M.num.a) + f2 * Rational(M.num.b)) / dn;
    Rational y = f2 * Rational(M.num.c) / dn;
    return {x, y};
}

std::string ideal_to_string(const Ideal& I) {
    std::ostringstream os;
    os << "[" << I.a << "," << I.b << "," << I.c << "]";
    return os.str();
}

}  // namespace heckeq
