// Base fields: Q (d = 1) and quadratic fields Q(sqrt(d)) for squarefree d.
//
// Elements are stored as x + y*omega with exact rational coordinates, where
// omega generates the ring of integers: omega = (1+sqrt(d))/2 when
// d = 1 mod 4, omega = sqrt(d) otherwise, and omega = 0 for K = Q.
// All embedding comparisons (total positivity, unit windows) are decided
// exactly through signs of a + b*sqrt(d).

#pragma once

#include "heckeq/numutil.hpp"

#include <string>

namespace heckeq {

struct FieldSpec {
    Int d = 1;        // squarefree; d = 1 means K = Q
    Int disc = 1;     // field discriminant
    bool half = false;  // omega = (1+sqrt d)/2 (true) or sqrt d (false)
    int signature = 1;  // number of real embeddings: 1 (Q), 2 (real), 0 (imaginary)

    bool is_rational() const { return d == 1; }
    bool is_real_quadratic() const { return d > 1; }
    bool is_imaginary_quadratic() const { return d < 0; }

    // trace and norm of omega: omega satisfies t^2 - tr*t + nm = 0
    Int omega_trace() const { return half ? Int(1) : Int(0); }
    Int omega_norm() const {
        if (is_rational()) return 0;
        return half ? Int((1 - d) / 4) : Int(-d);
    }

    std::string omega_string() const;
    std::string name() const;
};

// d squarefree and != 0; d = 1 selects K = Q.
FieldSpec make_field(const Int& d);

struct FieldElement {
    Rational x, y;  // x + y*omega

    FieldElement() : x(0), y(0) {}
    explicit FieldElement(Rational x0) : x(std::move(x0)), y(0) {}
    FieldElement(Rational x0, Rational y0) : x(std::move(x0)), y(std::move(y0)) {}

    bool is_zero() const { return x == 0 && y == 0; }
    bool is_rational() const { return y == 0; }

    bool operator==(const FieldElement& o) const { return x == o.x && y == o.y; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    // lexicographic; used for canonical representatives only
    bool operator<(const FieldElement& o) const {
        if (x != o.x) return x < o.x;
        return y < o.y;
    }
};

FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_sub(const FieldElement& a, const FieldElement& b);
FieldElement fe_neg(const FieldElement& a);
FieldElement fe_mul(const FieldElement& a, const FieldElement& b, const FieldSpec& f);
FieldElement fe_conj(const FieldElement& a, const FieldSpec& f);
FieldElement fe_inv(const FieldElement& a, const FieldSpec& f);
FieldElement fe_div(const FieldElement& a, const FieldElement& b, const FieldSpec& f);
FieldElement fe_mul_rat(const FieldElement& a, const Rational& c);

Rational fe_norm(const FieldElement& a, const FieldSpec& f);
Rational fe_trace(const FieldElement& a, const FieldSpec& f);

// coordinates (p, q) with a = p + q*sqrt(d)
std::pair<Rational, Rational> fe_sqrt_coords(const FieldElement& a, const FieldSpec& f);

// sign of p + q*sqrt(d) (exact); d > 1
int sign_sqrt(const Rational& p, const Rational& q, const Int& d);

// positive in every real embedding; vacuous for imaginary quadratic.
// Rejects zero input.
bool is_totally_positive(const FieldElement& a, const FieldSpec& f);

bool fe_is_integral(const FieldElement& a, const FieldSpec& f);

// least m > 0 with m*a integral
Int fe_denominator(const FieldElement& a, const FieldSpec& f);

FieldElement fe_pow(FieldElement a, long e, const FieldSpec& f);

std::string fe_to_string(const FieldElement& a, const FieldSpec& f);

}  // namespace heckeq
