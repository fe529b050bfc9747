// The Hecke algebra of the orientation preserving affine pair of K.
//
// Group elements are affine maps written as pairs (x, y) with x in K*_+ and
// y in K, multiplying by (x1, y1)(x2, y2) = (x1 x2, y2 + y1 x2); the
// subgroup has integral y and unit x.  A double coset is determined by x
// modulo O*_+ together with the O*_+-orbit of y modulo the module O + xO,
// and we store the canonical pair.  Convolution is computed from genuine
// coset enumeration: the cosets of a double coset D are represented by the
// pairs (y, x) with x canonical and y running over
//     { w + t mod xO : w in the unit orbit of y mod (O + xO),
//       t in a transversal of O/(O intersect xO) },
// and (f1 * f2)(g) = sum_h f1(g h^{-1}) f2(h) over those representatives.
// The presentation relations of the generators mu_a, e_r are not assumed
// anywhere; they are verified by check_relations.

#pragma once

#include "heckeq/cyclotomic.hpp"
#include "heckeq/enumeration.hpp"
#include "heckeq/groupoid.hpp"
#include "heckeq/sqrtscalar.hpp"

#include <mutex>

namespace heckeq {

struct DoubleCoset {
    FieldElement x, y;  // canonical representative

    bool operator==(const DoubleCoset& o) const { return x == o.x && y == o.y; }
    bool operator!=(const DoubleCoset& o) const { return !(*this == o); }
    bool operator<(const DoubleCoset& o) const {
        if (!(x == o.x)) return x < o.x;
        return y < o.y;
    }
    bool is_identity_graded() const { return x == FieldElement(Rational(1)); }
};

struct CosetRep {
    FieldElement y, x;  // the group element (x, y), written (n, x) style
};

// Memoizing context for coset computations.
class HeckeCtx {
  public:
    explicit HeckeCtx(FieldCtx nf) : nf_(std::move(nf)) {}

    const FieldCtx& nf() const { return nf_; }
    const FieldSpec& field() const { return nf_.f; }

    // canonical double coset of the group element (x, y); x must be totally
    // positive
    DoubleCoset canonicalize(const FieldElement& x, const FieldElement& y);
    // representatives of the cosets inside the double coset
    const std::vector<CosetRep>& coset_reps(const DoubleCoset& dc);
    // number of such cosets; for x = 1 this is R(y)
    Int coset_count(const DoubleCoset& dc);

    DoubleCoset identity_coset();
    DoubleCoset inverse_coset(const DoubleCoset& dc);

  private:
    FieldCtx nf_;
    std::map<std::pair<FieldElement, FieldElement>, DoubleCoset> canon_;
    std::map<DoubleCoset, std::vector<CosetRep>> reps_;
    std::mutex mu_;
};

// group law and inverse of the affine pair representation
FieldElement pair_mul_x(const FieldElement& x1, const FieldElement& x2, const FieldSpec& f);
std::pair<FieldElement, FieldElement> pair_mul(const std::pair<FieldElement, FieldElement>& g1,
                                               const std::pair<FieldElement, FieldElement>& g2,
                                               const FieldSpec& f);
std::pair<FieldElement, FieldElement> pair_inv(const std::pair<FieldElement, FieldElement>& g,
                                               const FieldSpec& f);

// orbit size R(r) of r modulo O under O*_+
Int unit_orbit_size(const FieldElement& r, HeckeCtx& ctx);

// modular function: Delta(coset of (x, y)) = N_K(x)^{-1}
Rational modular_delta(const DoubleCoset& dc, const FieldSpec& f);

// ---------------------------------------------------------------------------

template <typename C>
struct LinComb {
    std::map<DoubleCoset, C> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const LinComb& o) const { return terms == o.terms; }
    bool operator!=(const LinComb& o) const { return !(*this == o); }

    void add_term(const DoubleCoset& dc, const C& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = terms.emplace(dc, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }
};

using HeckeElement = LinComb<SqrtScalar>;
using CycHeckeElement = LinComb<Cyclotomic>;

template <typename C>
LinComb<C> lc_add(const LinComb<C>& a, const LinComb<C>& b) {
    LinComb<C> out = a;
    for (auto& [dc, c] : b.terms) out.add_term(dc, c);
    return out;
}

template <typename C>
LinComb<C> lc_scale(const C& s, const LinComb<C>& a) {
    LinComb<C> out;
    if (s.is_zero()) return out;
    for (auto& [dc, c] : a.terms) out.add_term(dc, s * c);
    return out;
}

template <typename C>
LinComb<C> lc_sub(const LinComb<C>& a, const LinComb<C>& b) {
    LinComb<C> nb;
    for (auto& [dc, c] : b.terms) nb.add_term(dc, -c);
    return lc_add(a, nb);
}

// exact convolution by coset enumeration
template <typename C>
LinComb<C> convolve(HeckeCtx& ctx, const LinComb<C>& f1, const LinComb<C>& f2) {
    const FieldSpec& f = ctx.field();
    std::map<DoubleCoset, C> acc;
    for (auto& [d1, c1] : f1.terms) {
        const auto& reps1 = ctx.coset_reps(d1);
        for (auto& [d2, c2] : f2.terms) {
            const auto& reps2 = ctx.coset_reps(d2);
            C cc = c1 * c2;
            for (auto& h1 : reps1)
                for (auto& h2 : reps2) {
                    auto prod = pair_mul({h1.x, h1.y}, {h2.x, h2.y}, f);
                    DoubleCoset dc = ctx.canonicalize(prod.first, prod.second);
                    auto [it, fresh] = acc.emplace(dc, cc);
                    if (!fresh) it->second = it->second + cc;
                }
        }
    }
    LinComb<C> out;
    for (auto& [dc, c] : acc) {
        Int count = ctx.coset_count(dc);
        out.add_term(dc, c.scaled(Rational(1, count)));
    }
    return out;
}

template <typename C>
LinComb<C> involution(HeckeCtx& ctx, const LinComb<C>& a) {
    LinComb<C> out;
    for (auto& [dc, c] : a.terms) out.add_term(ctx.inverse_coset(dc), c.conj());
    return out;
}

// sigma_{i beta}: multiply the coset of (x, y) by N_K(x)^{-beta}, exact for
// integer beta
template <typename C>
LinComb<C> sigma_analytic(const LinComb<C>& a, long beta, const FieldSpec& f) {
    LinComb<C> out;
    for (auto& [dc, c] : a.terms) {
        Rational w = rat_pow(fe_norm(dc.x, f), -beta);
        out.add_term(dc, c.scaled(w));
    }
    return out;
}

inline std::complex<double> scalar_complex(const SqrtScalar& s) { return {s.to_double(), 0.0}; }
inline std::complex<double> scalar_complex(const Cyclotomic& c) { return c.to_complex(); }

// sigma_t at real t: phases N_K(x)^{it}
template <typename C>
std::map<DoubleCoset, std::complex<double>> sigma_t(const LinComb<C>& a, double t,
                                                    const FieldSpec& f) {
    std::map<DoubleCoset, std::complex<double>> out;
    for (auto& [dc, c] : a.terms) {
        double logn = std::log(to_double(fe_norm(dc.x, f)));
        out[dc] = scalar_complex(c) * std::polar(1.0, t * logn);
    }
    return out;
}

// part of the dual-coaction grading with x = x0 modulo O*_+
template <typename C>
LinComb<C> grading_component(HeckeCtx& ctx, const LinComb<C>& a, const FieldElement& x0) {
    FieldElement xc = canonical_unit_rep(x0, ctx.field(), ctx.nf().units);
    LinComb<C> out;
    for (auto& [dc, c] : a.terms)
        if (dc.x == xc) out.add_term(dc, c);
    return out;
}

template <typename C>
LinComb<C> identity_component(const LinComb<C>& a) {
    LinComb<C> out;
    for (auto& [dc, c] : a.terms)
        if (dc.is_identity_graded()) out.add_term(dc, c);
    return out;
}

// ---------------------------------------------------------------------------

HeckeElement hecke_identity(HeckeCtx& ctx);
// mu_a = N_a^{-1/2} [coset of (a, 0)] for integral totally positive a
HeckeElement mu(const FieldElement& a, HeckeCtx& ctx);
// e_r = R(r)^{-1} [coset of (1, r)]
HeckeElement e(const FieldElement& r, HeckeCtx& ctx);

CycHeckeElement to_cyclotomic(const HeckeElement& a);  // requires rational coefficients

// The result of twisting y by a residue class mod m is well defined exactly
// when m*y lies in the coset module O + xO.
bool level_clears(const DoubleCoset& dc, const Int& m, const FieldSpec& f);

// symmetry action tau(u): y -> v y with v = lift of u^{-1} at level m
template <typename C>
LinComb<C> tau_u(HeckeCtx& ctx, const LinComb<C>& a, const Residue& u, const Int& m) {
    const FieldSpec& f = ctx.field();
    Residue ui = residue_inv(u, f, m);
    FieldElement v{Rational(ui.s), Rational(ui.t)};
    LinComb<C> out;
    for (auto& [dc, c] : a.terms) {
        if (!level_clears(dc, m, f))
            throw std::invalid_argument("tau_u: insufficient level for this element");
        DoubleCoset nd = ctx.canonicalize(dc.x, fe_mul(v, dc.y, f));
        out.add_term(nd, c);
    }
    return out;
}

// Galois-twisted action defining the arithmetic subalgebra:
// beta(u)(a [coset (x, r)]) = galois_{N(u)}(a) [coset (x, N(u) u^{-1} r)].
// Coefficient orders and y denominators must divide the level m.
CycHeckeElement beta_action(HeckeCtx& ctx, const CycHeckeElement& a, const Residue& u,
                            const Int& m);
bool is_arithmetic_fixed(HeckeCtx& ctx, const CycHeckeElement& a, const Int& m);

// norm of a unit residue as an exponent mod m
Int residue_norm_exponent(const Residue& u, const FieldSpec& f, const Int& m);

// ---------------------------------------------------------------------------

struct RelationReport {
    struct Entry {
        std::string name;
        long instances = 0;
        std::vector<std::string> failures;
    };
    std::vector<Entry> entries;
    bool all_passed() const {
        for (auto& e : entries)
            if (!e.failures.empty()) return false;
        return true;
    }
    long total_instances() const {
        long n = 0;
        for (auto& e : entries) n += e.instances;
        return n;
    }
};

struct RelationBounds {
    Int max_norm_a = 6;       // N_a bound for mu generators
    Int max_denominator = 4;  // denominator bound for e_r generators
};

// canonical mu-generator list: totally positive integral a with N_a <= bound,
// one per class mod O*_+ (cross-checked against the count of narrowly
// principal ideals)
std::vector<FieldElement> mu_generators(HeckeCtx& ctx, const Int& max_norm);
// canonical e-generator indices with denominator <= bound (unit-orbit deduped)
std::vector<FieldElement> e_generators(HeckeCtx& ctx, const Int& max_den);

// instantiate and verify the presentation relations plus the derived identity
// mu_a* e_r mu_a = e_{ar}
RelationReport check_relations(HeckeCtx& ctx, const RelationBounds& bounds);

// ---------------------------------------------------------------------------
// finite-level transformation-groupoid model of the Hecke system over a
// prime window: units are valuation profiles, arrows are narrowly principal
// profile differences, the cocycle is the norm

struct HeckeGroupoidModel {
    FiniteGroupoid g;
    Cocycle c;
    std::vector<Ideal> primes;                      // the window
    std::vector<std::vector<int>> profiles;         // unit index -> exponent vector
    std::map<std::vector<int>, int> unit_of;        // profile -> unit arrow id
    std::map<std::pair<int, int>, int> arrow_of;    // (src unit, dst unit) -> arrow id
};

HeckeGroupoidModel hecke_groupoid_model(const FieldCtx& ctx, const std::vector<Ideal>& primes,
                                        int max_exp);

}  // namespace heckeq
