// Arithmetic boundary data of the Hecke system: minimal-norm ideals per
// narrow class (the cells of Y_0), the finite ratio set S_0, the shape of
// the boundary algebra, escape witnesses for the null sets, partial
// Dedekind zeta sums, and finite-level unit orbit spaces.

#pragma once

#include "heckeq/enumeration.hpp"

namespace heckeq {

struct MinimalIdealTable {
    struct ClassEntry {
        int class_index = 0;
        Int min_norm = 1;
        std::vector<Ideal> ideals;  // the a_{c,j}, canonically ordered
        long k() const { return static_cast<long>(ideals.size()); }
    };
    std::vector<ClassEntry> entries;  // indexed by narrow class index

    long total_cells() const {
        long n = 0;
        for (auto& e : entries) n += e.k();
        return n;
    }
    // cell lookup by ideal; (-1, -1) when absent
    std::pair<int, int> cell_of(const Ideal& I) const;
};

// First-hit enumeration by increasing norm until every narrow class has its
// minimal ideals.  (The Minkowski bound does not control narrow classes --
// for d = 3 the nontrivial narrow class first appears at norm 2 > sqrt(12)/2
// -- so enumeration runs until all classes are seen.)
MinimalIdealTable minimal_norm_ideals(const FieldCtx& ctx);

// per-class exhaustive alternative used as an independent route in tests:
// scan all ideals of norm <= bound and minimize per class
MinimalIdealTable minimal_norm_ideals_scan(const FieldCtx& ctx, const Int& bound);

// finite-level point of the integral adeles modulo the closure of O*_+
struct AdelePoint {
    Int d = 1;
    Int level = 2;                 // unit residue level m
    std::map<Ideal, int> support;  // prime ideal -> exponent; kInfiniteValuation marks infinity
    Residue unit_residue{1, 0};

    static constexpr int kInfiniteValuation = -1;
    bool has_infinite_marker() const {
        for (auto& [p, e] : support)
            if (e == kInfiniteValuation) return true;
        return false;
    }
};

// the integral ideal cut out by a finite support profile
Ideal point_ideal(const AdelePoint& p, const FieldSpec& f);

// the unique cell Omega_{a_{c,j}} containing the point, if any
std::optional<std::pair<int, int>> omega_membership(const AdelePoint& p,
                                                    const MinimalIdealTable& t,
                                                    const FieldCtx& ctx);

// multiply a point by a totally positive x supported on the window
AdelePoint translate_point(const AdelePoint& p, const FieldElement& x, const FieldCtx& ctx);

struct SZeroSet {
    std::vector<FractionalIdeal> elements;   // contains (1), closed under inverse
    std::vector<FieldElement> generators;    // canonical tp generators, same order
};

SZeroSet s_zero(const MinimalIdealTable& t, const FieldCtx& ctx);

// any totally positive integer d with (d) inside every a_{c,j}; bounds the
// denominators of the transfer set S
Int s_bounding_denominator(const MinimalIdealTable& t, const FieldCtx& ctx);

struct BoundaryAlgebraShape {
    std::vector<long> matrix_sizes;  // {k_c}
    Int level = 2;
    long commutative_points = 1;  // |(O/m)* / image of O*_+|
    std::string descriptor() const;
};

BoundaryAlgebraShape boundary_algebra_shape(const MinimalIdealTable& t, const Int& level,
                                            const FieldCtx& ctx);

// orbit representatives of (O/m)* modulo the image of O*_+
std::vector<Residue> unit_orbit_space(const FieldCtx& ctx, const Int& m);

// totally positive x with (x) = P^{h_+}; N(x) > 1
FieldElement escape_witness(const Ideal& P, const FieldCtx& ctx);

struct ZetaPartial {
    double value = 0.0;
    double tail_bound = 0.0;
    bool tail_finite = true;
    Int terms = 0;  // number of ideals summed
};

// partial Dedekind zeta over ideals of norm <= B; the tail bound uses the
// divisor majorant a_K(n) <= sigma_0(n), valid for degree <= 2
ZetaPartial zeta_partial(const FieldCtx& ctx, double beta, const Int& B, EnumCache* cache = nullptr);
ZetaPartial zeta_class_partial(const FieldCtx& ctx, int class_index, double beta, const Int& B,
                               EnumCache* cache = nullptr);
// exact value at integer beta (small B)
Rational zeta_partial_exact(const FieldCtx& ctx, long beta, const Int& B,
                            EnumCache* cache = nullptr);

// majorant tail sum_{n > B} sigma_0(n) n^{-beta} for beta > 1
double sigma0_tail_bound(double beta, const Int& B);

}  // namespace heckeq
