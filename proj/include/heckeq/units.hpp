// Unit groups of O_K and canonical representatives modulo totally positive
// units.
//
// Real quadratic: the fundamental unit eps > 1 comes from the continued
// fraction of a reduced quadratic irrational attached to omega; the group of
// totally positive units is generated by eps_plus (eps if totally positive,
// eps^2 if N(eps) = -1, -eps otherwise).  Imaginary quadratic: every unit is
// a root of unity and total positivity is vacuous, so O*_+ = O*.  For Q the
// group is trivial.

#pragma once

#include "heckeq/field.hpp"
#include "heckeq/ideal.hpp"

#include <vector>

namespace heckeq {

struct UnitData {
    FieldElement fundamental_unit;      // eps > 1 (real case); 1 otherwise
    int norm_of_epsilon = 1;            // N(eps) in {+1, -1}
    FieldElement eps_plus;              // generator of O*_+ modulo torsion (real); 1 otherwise
    std::vector<FieldElement> torsion_units;  // all roots of unity in K
};

UnitData fundamental_unit(const FieldSpec& f);

// All totally positive torsion units (imaginary: everything; real and Q: {1}).
std::vector<FieldElement> totally_positive_torsion(const FieldSpec& f);

// Canonical representative of a totally positive x modulo O*_+.
// Real case: the unique eps_plus-multiple with N(x) <= sigma1(x)^2 <
// N(x)*sigma1(eps_plus)^2; imaginary: lexicographic minimum over the unit
// orbit; Q: x itself.
FieldElement canonical_unit_rep(const FieldElement& x, const FieldSpec& f, const UnitData& u);

// Orbit of z modulo the lattice M under multiplication by O*_+, as canonical
// lattice representatives.  Finite; deterministic order (cycle order from the
// reduced representative of z, lex-minimal starting point).
std::vector<FieldElement> unit_orbit_mod_lattice(const FieldElement& z, const FractionalIdeal& M,
                                                 const FieldSpec& f, const UnitData& u);

struct Residue {
    Int s = 0, t = 0;  // s + t*omega mod m
    bool operator==(const Residue& o) const { return s == o.s && t == o.t; }
    bool operator<(const Residue& o) const { return s != o.s ? s < o.s : t < o.t; }
};

// (O/m)* as a list of residues, lexicographic order.
std::vector<Residue> residue_units(const FieldSpec& f, const Int& m);

// Subgroup of (O/m)* generated by the images of O*_+ (the closure of O*_+ at
// finite level m).
std::vector<Residue> unit_image_mod(const FieldSpec& f, const UnitData& u, const Int& m);

Residue residue_of(const FieldElement& z, const FieldSpec& f, const Int& m);
Residue residue_mul(const Residue& a, const Residue& b, const FieldSpec& f, const Int& m);
Residue residue_inv(const Residue& a, const FieldSpec& f, const Int& m);
bool residue_is_unit(const Residue& a, const FieldSpec& f, const Int& m);

}  // namespace heckeq
