// Integral and fractional ideals of O_K in two-generator normal form.
//
// An integral ideal is stored as the module a*Z + (b + c*omega)*Z with
// c | a, c | b, 0 <= b < a; its norm is a*c and the rational content
// (largest integer dividing the ideal) is exactly c.  All arithmetic is
// exact and deterministic: the normal form is a canonical representative.

#pragma once

#include "heckeq/field.hpp"

#include <optional>
#include <vector>

namespace heckeq {

struct Ideal {
    Int a = 1, b = 0, c = 1;
    Int d = 1;  // field selector, guards against mixed-field arithmetic

    bool operator==(const Ideal& o) const {
        return a == o.a && b == o.b && c == o.c && d == o.d;
    }
    bool operator!=(const Ideal& o) const { return !(*this == o); }
    bool operator<(const Ideal& o) const {  // lexicographic, for canonical ordering
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }

    Int norm() const { return a * c; }
    bool is_unit_ideal() const { return a == 1 && b == 0 && c == 1; }
};

// The ring of integers as an ideal.
Ideal unit_ideal(const FieldSpec& f);

// Normal form of the Z-module spanned by integer coordinate pairs (u, v)
// meaning u + v*omega.  Throws unless the module is an O-ideal of full rank.
Ideal ideal_from_module(const FieldSpec& f, const std::vector<std::pair<Int, Int>>& gens);

// Principal ideal (z) for integral z != 0.
Ideal principal_ideal(const FieldElement& z, const FieldSpec& f);

// Ideal generated by a list of integral elements (not all zero).
Ideal ideal_from_generators(const std::vector<FieldElement>& gens, const FieldSpec& f);

Ideal ideal_product(const Ideal& I, const Ideal& J, const FieldSpec& f);
Ideal ideal_scale(const Ideal& I, const Int& n);  // n*I, n > 0
// gcd = I + J
Ideal ideal_gcd(const Ideal& I, const Ideal& J, const FieldSpec& f);
Ideal ideal_conj(const Ideal& I, const FieldSpec& f);
Ideal ideal_pow(const Ideal& I, unsigned e, const FieldSpec& f);

inline Int ideal_norm(const Ideal& I) { return I.norm(); }
inline bool ideal_equals(const Ideal& I, const Ideal& J) { return I == J; }

bool ideal_contains(const Ideal& I, const FieldElement& z, const FieldSpec& f);
// J | I, i.e. I subset of J
bool ideal_divides(const Ideal& J, const Ideal& I, const FieldSpec& f);
// I * J^{-1} when J | I, nullopt otherwise.
std::optional<Ideal> ideal_divide_exact(const Ideal& I, const Ideal& J, const FieldSpec& f);
// largest k with P^k | I (P a nontrivial ideal)
int ideal_valuation(const Ideal& I, const Ideal& P, const FieldSpec& f);

// Transversal of O/I: the a*c residues s + t*omega, 0 <= s < a, 0 <= t < c.
std::vector<FieldElement> ideal_transversal(const Ideal& I, const FieldSpec& f);
// Canonical representative of z mod I (z integral).
FieldElement reduce_mod_ideal(const FieldElement& z, const Ideal& I, const FieldSpec& f);

struct FractionalIdeal {
    Ideal num;   // integral part
    Int dn = 1;  // positive integer denominator; gcd(content(num), dn) = 1

    bool operator==(const FractionalIdeal& o) const { return num == o.num && dn == o.dn; }
    bool operator<(const FractionalIdeal& o) const {
        if (dn != o.dn) return dn < o.dn;
        return num < o.num;
    }
    Rational norm() const { return Rational(num.norm(), dn * dn); }
    bool is_integral() const { return dn == 1; }
};

FractionalIdeal make_fractional(Ideal I, Int dn);
FractionalIdeal fractional_of_element(const FieldElement& x, const FieldSpec& f);
FractionalIdeal fractional_product(const FractionalIdeal& A, const FractionalIdeal& B,
                                   const FieldSpec& f);
FractionalIdeal fractional_inverse(const FractionalIdeal& A, const FieldSpec& f);
// A + B as modules
FractionalIdeal fractional_sum(const FractionalIdeal& A, const FractionalIdeal& B,
                               const FieldSpec& f);
bool fractional_contains(const FractionalIdeal& A, const FieldElement& z, const FieldSpec& f);

// numerator / denominator ideals of the principal fractional ideal (x):
// coprime integral ideals N, D with (x) = N/D.
std::pair<Ideal, Ideal> element_ideal_parts(const FieldElement& x, const FieldSpec& f);

// O + x*O as a fractional ideal.
FractionalIdeal one_plus_x_module(const FieldElement& x, const FieldSpec& f);

// Coordinates of z in the Z-basis (num.a/dn, (num.b + num.c*omega)/dn) of M.
std::pair<Rational, Rational> lattice_coords(const FieldElement& z, const FractionalIdeal& M,
                                             const FieldSpec& f);
// Canonical representative of z mod the lattice M (coordinates reduced to [0,1)).
FieldElement reduce_mod_lattice(const FieldElement& z, const FractionalIdeal& M,
                                const FieldSpec& f);

std::string ideal_to_string(const Ideal& I);

}  // namespace heckeq
