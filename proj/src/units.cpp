#include "heckeq/units.hpp"

#include <algorithm>
#include <set>

namespace heckeq {

namespace {

// Fundamental unit of a real quadratic field from the purely periodic
// continued fraction of alpha = omega + k0, where k0 shifts omega into the
// reduced range (alpha > 1, -1 < conj(alpha) < 0).  If l is the period,
// the automorph q_{l-1}*alpha + q_{l-2} is the fundamental unit > 1.
FieldElement cf_fundamental_unit(const FieldSpec& f) {
    Int d = f.d;
    Int s = isqrt_floor(d);
    Int P, Q, k0;
    if (f.half) {
        k0 = floor_div(s - 1, Int(2));
        // ensure k0 = floor((sqrt d - 1)/2): 2k0+1 <= sqrt d < 2k0+3
        while ((2 * k0 + 1) * (2 * k0 + 1) > d) --k0;
        while ((2 * k0 + 3) * (2 * k0 + 3) <= d) ++k0;
        P = 2 * k0 + 1;
        Q = 2;
    } else {
        k0 = s;
        P = s;
        Q = 1;
    }
    const Int P0 = P, Q0 = Q;
    std::vector<Int> as;
    for (int iter = 0;; ++iter) {
        if (iter > 100000) throw std::logic_error("cf_fundamental_unit: runaway period");
        Int a = floor_div(P + s, Q);
        as.push_back(a);
        P = a * Q - P;
        Q = (d - P * P) / Q;
        if (P == P0 && Q == Q0) break;
    }
    // continuants q_i = a_i q_{i-1} + q_{i-2} with q_{-1} = 0, q_0 = 1
    Int qm2 = 1, qm1 = 0;
    for (size_t i = 0; i < as.size(); ++i) {
        Int q = (i == 0) ? Int(1) : Int(as[i] * qm1 + qm2);
        qm2 = qm1;
        qm1 = q;
    }
    // eps = q_{l-1} * alpha + q_{l-2}, alpha = omega + k0
    FieldElement eps(Rational(qm2 + qm1 * k0), Rational(qm1));
    return eps;
}

}  // namespace

std::vector<FieldElement> totally_positive_torsion(const FieldSpec& f) {
    if (!f.is_imaginary_quadratic()) return {FieldElement(Rational(1))};
    std::vector<FieldElement> out;
    if (f.d == -1) {
        FieldElement i(Rational(0), Rational(1));
        FieldElement z(Rational(1));
        for (int k = 0; k < 4; ++k) {
            out.push_back(z);
            z = fe_mul(z, i, f);
        }
    } else if (f.d == -3) {
        FieldElement w(Rational(0), Rational(1));  // primitive 6th root of unity
        FieldElement z(Rational(1));
        for (int k = 0; k < 6; ++k) {
            out.push_back(z);
            z = fe_mul(z, w, f);
        }
    } else {
        out.push_back(FieldElement(Rational(1)));
        out.push_back(FieldElement(Rational(-1)));
    }
    return out;
}

UnitData fundamental_unit(const FieldSpec& f) {
    UnitData u;
    u.torsion_units = totally_positive_torsion(f);
    if (!f.is_real_quadratic()) {
        u.fundamental_unit = FieldElement(Rational(1));
        u.eps_plus = FieldElement(Rational(1));
        u.norm_of_epsilon = 1;
        return u;
    }
    FieldElement eps = cf_fundamental_unit(f);
    Rational n = fe_norm(eps, f);
    if (n != 1 && n != -1) throw std::logic_error("fundamental_unit: norm not a unit");
    u.fundamental_unit = eps;
    u.norm_of_epsilon = (n == 1) ? 1 : -1;
    if (is_totally_positive(eps, f)) {
        u.eps_plus = eps;
    } else if (u.norm_of_epsilon == -1) {
        u.eps_plus = fe_mul(eps, eps, f);
    } else {
        u.eps_plus = fe_neg(eps);
    }
    if (!is_totally_positive(u.eps_plus, f))
        throw std::logic_error("fundamental_unit: eps_plus not totally positive");
    return u;
}

FieldElement canonical_unit_rep(const FieldElement& x, const FieldSpec& f, const UnitData& u) {
    if (x.is_zero()) throw std::domain_error("canonical_unit_rep: zero");
    if (f.is_rational()) {
        if (x.x <= 0) throw std::domain_error("canonical_unit_rep: not totally positive");
        return x;
    }
    if (f.is_imaginary_quadratic()) {
        // lexicographically largest orbit element, so e.g. 2 beats -2 and the
        // unit ideal is generated by 1
        FieldElement best = x;
        for (auto& t : u.torsion_units) {
            FieldElement cand = fe_mul(x, t, f);
            if (best < cand) best = cand;
        }
        return best;
    }
    if (!is_totally_positive(x, f))
        throw std::domain_error("canonical_unit_rep: not totally positive");
    // window: N(x) <= sigma1(x)^2 < N(x) * sigma1(eps_plus)^2, decided exactly
    Rational n = fe_norm(x, f);
    auto sigma1_sq_minus = [&](const FieldElement& z, const Rational& bound) {
        FieldElement z2 = fe_mul(z, z, f);
        auto [p, q] = fe_sqrt_coords(z2, f);
        return sign_sqrt(p - bound, q, f.d);
    };
    FieldElement cur = x;
    int guard = 0;
    while (sigma1_sq_minus(cur, n) < 0) {
        cur = fe_mul(cur, u.eps_plus, f);
        if (++guard > 100000) throw std::logic_error("canonical_unit_rep: runaway");
    }
    FieldElement eps_inv = fe_inv(u.eps_plus, f);
    while (true) {
        FieldElement down = fe_mul(cur, eps_inv, f);
        if (sigma1_sq_minus(down, n) >= 0)
            cur = down;
        else
            break;
        if (++guard > 200000) throw std::logic_error("canonical_unit_rep: runaway");
    }
    return cur;
}

std::vector<FieldElement> unit_orbit_mod_lattice(const FieldElement& z, const FractionalIdeal& M,
                                                 const FieldSpec& f, const UnitData& u) {
    std::set<FieldElement> seen;
    std::vector<FieldElement> orbit;
    if (f.is_real_quadratic()) {
        FieldElement cur = reduce_mod_lattice(z, M, f);
        while (!seen.count(cur)) {
            seen.insert(cur);
            orbit.push_back(cur);
            cur = reduce_mod_lattice(fe_mul(cur, u.eps_plus, f), M, f);
        }
        if (cur != orbit.front())
            throw std::logic_error("unit_orbit_mod_lattice: orbit is not a cycle");
    } else {
        for (auto& t : u.torsion_units) {
            FieldElement cand = reduce_mod_lattice(fe_mul(z, t, f), M, f);
            if (!seen.count(cand)) {
                seen.insert(cand);
                orbit.push_back(cand);
            }
        }
    }
    // rotate/sort so the representative list is canonical
    std::sort(orbit.begin(), orbit.end());
    return orbit;
}

std::vector<Residue> residue_units(const FieldSpec& f, const Int& m) {
    if (m < 2) throw std::domain_error("residue_units: need m >= 2");
    std::vector<Residue> out;
    if (f.is_rational()) {
        for (Int s = 0; s < m; ++s)
            if (int_gcd(s, m) == 1) out.push_back({s, 0});
        return out;
    }
    for (Int s = 0; s < m; ++s)
        for (Int t = 0; t < m; ++t) {
            FieldElement z{Rational(s), Rational(t)};
            Int n = num(fe_norm(z, f));
            if (int_gcd(mod_pos(n, m), m) == 1) out.push_back({s, t});
        }
    return out;
}

Residue residue_of(const FieldElement& z, const FieldSpec& f, const Int& m) {
    if (!fe_is_integral(z, f)) throw std::invalid_argument("residue_of: non-integral");
    (void)f;
    return {mod_pos(num(z.x), m), mod_pos(num(z.y), m)};
}

Residue residue_mul(const Residue& a, const Residue& b, const FieldSpec& f, const Int& m) {
    FieldElement p = fe_mul({Rational(a.s), Rational(a.t)}, {Rational(b.s), Rational(b.t)}, f);
    return residue_of(p, f, m);
}

Residue residue_inv(const Residue& a, const FieldSpec& f, const Int& m) {
    // z^{-1} = conj(z)/N(z) mod m
    FieldElement z{Rational(a.s), Rational(a.t)};
    if (f.is_rational()) return {inv_mod(a.s, m), 0};
    Int n = mod_pos(num(fe_norm(z, f)), m);
    Int ninv = inv_mod(n, m);
    FieldElement c = fe_conj(z, f);
    return {mod_pos(num(c.x) * ninv, m), mod_pos(num(c.y) * ninv, m)};
}

bool residue_is_unit(const Residue& a, const FieldSpec& f, const Int& m) {
    FieldElement z{Rational(a.s), Rational(a.t)};
    Int n = f.is_rational() ? a.s : num(fe_norm(z, f));
    return int_gcd(mod_pos(n, m), m) == 1;
}

std::vector<Residue> unit_image_mod(const FieldSpec& f, const UnitData& u, const Int& m) {
    std::set<Residue> group;
    std::vector<Residue> gens;
    if (f.is_real_quadratic()) gens.push_back(residue_of(u.eps_plus, f, m));
    for (auto& t : u.torsion_units)
        if (is_totally_positive(t, f)) gens.push_back(residue_of(t, f, m));
    group.insert(residue_of(FieldElement(Rational(1)), f, m));
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Residue> cur(group.begin(), group.end());
        for (auto& g : cur)
            for (auto& h : gens) {
                Residue p = residue_mul(g, h, f, m);
                if (group.insert(p).second) grew = true;
            }
    }
    return {group.begin(), group.end()};
}

}  // namespace heckeq
