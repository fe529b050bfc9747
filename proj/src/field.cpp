#include "heckeq/field.hpp"

#include <sstream>

namespace heckeq {

std::string FieldSpec::omega_string() const {
    if (is_rational()) return "0";
    std::ostringstream os;
    if (half)
        os << "(1+sqrt(" << d << "))/2";
    else
        os << "sqrt(" << d << ")";
    return os.str();
}

std::string FieldSpec::name() const {
    if (is_rational()) return "Q";
    std::ostringstream os;
    os << "Q(sqrt(" << d << "))";
    return os.str();
}

FieldSpec make_field(const Int& d) {
    if (d == 0) throw std::invalid_argument("make_field: d = 0 is not a field selector");
    if (d == 1) {
        FieldSpec f;
        f.d = 1;
        f.disc = 1;
        f.half = false;
        f.signature = 1;
        return f;
    }
    if (!is_squarefree(d)) {
        std::ostringstream os;
        os << "make_field: d = " << d << " is not squarefree";
        throw std::invalid_argument(os.str());
    }
    FieldSpec f;
    f.d = d;
    f.half = (mod_pos(d, 4) == 1);
    f.disc = f.half ? d : Int(4 * d);
    f.signature = d > 0 ? 2 : 0;
    return f;
}

FieldElement fe_add(const FieldElement& a, const FieldElement& b) {
    return {a.x + b.x, a.y + b.y};
}
FieldElement fe_sub(const FieldElement& a, const FieldElement& b) {
    return {a.x - b.x, a.y - b.y};
}
FieldElement fe_neg(const FieldElement& a) { return {-a.x, -a.y}; }

FieldElement fe_mul(const FieldElement& a, const FieldElement& b, const FieldSpec& f) {
    // omega^2 = tr*omega - nm
    Rational tr(f.omega_trace()), nm(f.omega_norm());
    Rational yy = a.y * b.y;
    return {a.x * b.x - yy * nm, a.x * b.y + a.y * b.x + yy * tr};
}

FieldElement fe_conj(const FieldElement& a, const FieldSpec& f) {
    // conj(omega) = tr - omega
    return {a.x + a.y * Rational(f.omega_trace()), -a.y};
}

Rational fe_norm(const FieldElement& a, const FieldSpec& f) {
    if (f.is_rational()) return a.x;
    FieldElement n = fe_mul(a, fe_conj(a, f), f);
    return n.x;  // y part vanishes
}

Rational fe_trace(const FieldElement& a, const FieldSpec& f) {
    if (f.is_rational()) return a.x;
    return 2 * a.x + a.y * Rational(f.omega_trace());
}

FieldElement fe_inv(const FieldElement& a, const FieldSpec& f) {
    if (a.is_zero()) throw std::domain_error("fe_inv: zero");
    if (f.is_rational()) return FieldElement(Rational(1) / a.x);
    Rational n = fe_norm(a, f);
    FieldElement c = fe_conj(a, f);
    return {c.x / n, c.y / n};
}

FieldElement fe_div(const FieldElement& a, const FieldElement& b, const FieldSpec& f) {
    return fe_mul(a, fe_inv(b, f), f);
}

FieldElement fe_mul_rat(const FieldElement& a, const Rational& c) {
    return {a.x * c, a.y * c};
}

std::pair<Rational, Rational> fe_sqrt_coords(const FieldElement& a, const FieldSpec& f) {
    if (!f.half) return {a.x, a.y};
    // omega = (1 + sqrt d)/2
    return {a.x + a.y / 2, a.y / 2};
}

int sign_sqrt(const Rational& p, const Rational& q, const Int& d) {
    if (q == 0) return p == 0 ? 0 : (p > 0 ? 1 : -1);
    if (p == 0) return q > 0 ? 1 : -1;
    if (p > 0 && q > 0) return 1;
    if (p < 0 && q < 0) return -1;
    // opposite signs: compare p^2 with q^2 d
    Rational lhs = p * p, rhs = q * q * Rational(d);
    if (lhs == rhs) return 0;  // impossible for irrational sqrt(d), kept for safety
    bool p_dominates = lhs > rhs;
    return p_dominates ? (p > 0 ? 1 : -1) : (q > 0 ? 1 : -1);
}

bool is_totally_positive(const FieldElement& a, const FieldSpec& f) {
    if (a.is_zero()) throw std::domain_error("is_totally_positive: zero input");
    if (f.is_rational()) return a.x > 0;
    if (f.is_imaginary_quadratic()) return true;
    auto [p, q] = fe_sqrt_coords(a, f);
    return sign_sqrt(p, q, f.d) > 0 && sign_sqrt(p, -q, f.d) > 0;
}

bool fe_is_integral(const FieldElement& a, const FieldSpec& f) {
    if (f.is_rational()) return den(a.x) == 1;
    return den(a.x) == 1 && den(a.y) == 1;
}

Int fe_denominator(const FieldElement& a, const FieldSpec& f) {
    if (f.is_rational()) return den(a.x);
    return int_lcm(den(a.x), den(a.y));
}

FieldElement fe_pow(FieldElement a, long e, const FieldSpec& f) {
    if (e < 0) {
        a = fe_inv(a, f);
        e = -e;
    }
    FieldElement r(Rational(1));
    while (e) {
        if (e & 1) r = fe_mul(r, a, f);
        a = fe_mul(a, a, f);
        e >>= 1;
    }
    return r;
}

std::string fe_to_string(const FieldElement& a, const FieldSpec& f) {
    std::ostringstream os;
    if (a.y == 0 || f.is_rational()) {
        os << rat_to_string(a.x);
        return os.str();
    }
    if (a.x != 0) os << rat_to_string(a.x) << (a.y > 0 ? "+" : "");
    if (a.y == 1)
        os << "w";
    else if (a.y == -1)
        os << "-w";
    else
        os << rat_to_string(a.y) << "*w";
    return os.str();
}

}  // namespace heckeq
