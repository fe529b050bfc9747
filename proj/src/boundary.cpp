#include "heckeq/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace heckeq {

std::pair<int, int> MinimalIdealTable::cell_of(const Ideal& I) const {
    for (auto& e : entries)
        for (size_t j = 0; j < e.ideals.size(); ++j)
            if (e.ideals[j] == I) return {e.class_index, static_cast<int>(j)};
    return {-1, -1};
}

MinimalIdealTable minimal_norm_ideals(const FieldCtx& ctx) {
    MinimalIdealTable t;
    long h = ctx.cls.h_plus.convert_to<long>();
    t.entries.resize(h);
    for (long c = 0; c < h; ++c) t.entries[c].class_index = static_cast<int>(c);
    std::vector<bool> done(h, false);
    long remaining = h;
    // hard stop far beyond anything a quadratic field of small discriminant
    // needs; hit only on internal errors
    Int cap = 1000 + int_abs(ctx.f.disc) * int_abs(ctx.f.disc);
    for (Int n = 1; n <= cap && remaining > 0; ++n) {
        for (auto& I : ideals_of_norm(n, ctx.f)) {
            int c = class_of(I, ctx.f, ctx.cls);
            if (done[c]) continue;
            auto& entry = t.entries[c];
            if (entry.ideals.empty()) entry.min_norm = n;
            entry.ideals.push_back(I);
        }
        for (long c = 0; c < h; ++c)
            if (!done[c] && !t.entries[c].ideals.empty()) {
                done[c] = true;
                --remaining;
            }
    }
    if (remaining > 0) throw std::logic_error("minimal_norm_ideals: enumeration cap reached");
    for (auto& e : t.entries) std::sort(e.ideals.begin(), e.ideals.end());
    return t;
}

MinimalIdealTable minimal_norm_ideals_scan(const FieldCtx& ctx, const Int& bound) {
    MinimalIdealTable t;
    long h = ctx.cls.h_plus.convert_to<long>();
    t.entries.resize(h);
    for (long c = 0; c < h; ++c) t.entries[c].class_index = static_cast<int>(c);
    for (Int n = 1; n <= bound; ++n)
        for (auto& I : ideals_of_norm(n, ctx.f)) {
            auto& entry = t.entries[class_of(I, ctx.f, ctx.cls)];
            if (entry.ideals.empty() || n < entry.min_norm) {
                entry.min_norm = n;
                entry.ideals = {I};
            } else if (n == entry.min_norm) {
                entry.ideals.push_back(I);
            }
        }
    for (auto& e : t.entries) {
        if (e.ideals.empty())
            throw std::domain_error("minimal_norm_ideals_scan: bound misses a class");
        std::sort(e.ideals.begin(), e.ideals.end());
    }
    return t;
}

Ideal point_ideal(const AdelePoint& p, const FieldSpec& f) {
    if (p.has_infinite_marker())
        throw std::domain_error("point_ideal: infinite valuation marker present");
    Ideal A = unit_ideal(f);
    for (auto& [P, e] : p.support) {
        if (e < 0) throw std::domain_error("point_ideal: negative valuation");
        A = ideal_product(A, ideal_pow(P, e, f), f);
    }
    return A;
}

std::optional<std::pair<int, int>> omega_membership(const AdelePoint& p,
                                                    const MinimalIdealTable& t,
                                                    const FieldCtx& ctx) {
    if (p.d != ctx.f.d) throw std::invalid_argument("omega_membership: field mismatch");
    if (p.has_infinite_marker())
        throw std::domain_error("omega_membership: undetermined valuations");
    Ideal A = point_ideal(p, ctx.f);
    auto cell = t.cell_of(A);
    if (cell.first < 0) return std::nullopt;
    return cell;
}

AdelePoint translate_point(const AdelePoint& p, const FieldElement& x, const FieldCtx& ctx) {
    if (!is_totally_positive(x, ctx.f))
        throw std::invalid_argument("translate_point: multiplier not totally positive");
    AdelePoint q = p;
    auto [nm, dn] = element_ideal_parts(x, ctx.f);
    // collect the full prime support of x and update exponents
    std::set<Ideal> primes;
    for (auto& [P, e] : q.support) primes.insert(P);
    for (const Ideal& part : {nm, dn}) {
        for (auto& [pp, ee] : factorize(part.norm()))
            for (auto& pf : primes_above(pp, ctx.f)) {
                (void)ee;
                if (ideal_valuation(part, pf.P, ctx.f) > 0) primes.insert(pf.P);
            }
    }
    for (auto& P : primes) {
        int cur = q.support.count(P) ? q.support.at(P) : 0;
        if (cur == AdelePoint::kInfiniteValuation) continue;  // infinity absorbs shifts
        int delta = ideal_valuation(nm, P, ctx.f) - ideal_valuation(dn, P, ctx.f);
        int next = cur + delta;
        if (next < 0) throw std::domain_error("translate_point: point leaves the integral adeles");
        if (next == 0)
            q.support.erase(P);
        else
            q.support[P] = next;
    }
    // unit part: multiply the residue by the unit part of x at the level,
    // provided x is a unit at the primes dividing the level
    Int m = q.level;
    FieldElement xm = fe_mul_rat(x, Rational(fe_denominator(x, ctx.f)));
    if (int_gcd(num(fe_norm(xm, ctx.f)), m) == 1 &&
        int_gcd(fe_denominator(x, ctx.f), m) == 1) {
        Residue rx = residue_of(xm, ctx.f, m);
        Residue rd = residue_inv(residue_of(FieldElement(Rational(fe_denominator(x, ctx.f))),
                                            ctx.f, m),
                                 ctx.f, m);
        q.unit_residue = residue_mul(q.unit_residue, residue_mul(rx, rd, ctx.f, m), ctx.f, m);
    }
    return q;
}

SZeroSet s_zero(const MinimalIdealTable& t, const FieldCtx& ctx) {
    SZeroSet out;
    std::set<FractionalIdeal> seen;
    for (auto& entry : t.entries)
        for (auto& A : entry.ideals)
            for (auto& B : entry.ideals) {
                FractionalIdeal ratio = make_fractional(
                    ideal_product(A, ideal_conj(B, ctx.f), ctx.f), B.norm());
                if (!seen.insert(ratio).second) continue;
                auto gen = narrowly_principal(ratio, ctx);
                if (!gen)
                    throw std::logic_error("s_zero: same-class ratio not narrowly principal");
                if (ratio.norm() != 1)
                    throw std::logic_error("s_zero: ratio norm differs from 1");
                out.elements.push_back(ratio);
                out.generators.push_back(*gen);
            }
    // canonical order
    std::vector<size_t> idx(out.elements.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
        return out.elements[a] < out.elements[b];
    });
    SZeroSet sorted;
    for (size_t i : idx) {
        sorted.elements.push_back(out.elements[i]);
        sorted.generators.push_back(out.generators[i]);
    }
    // closure checks
    FractionalIdeal one{unit_ideal(ctx.f), 1};
    bool has_one = false;
    for (auto& e : sorted.elements)
        if (e == one) has_one = true;
    if (!has_one) throw std::logic_error("s_zero: unit ideal missing");
    for (auto& e : sorted.elements) {
        FractionalIdeal inv = fractional_inverse(e, ctx.f);
        if (!std::count(sorted.elements.begin(), sorted.elements.end(), inv))
            throw std::logic_error("s_zero: not closed under inverse");
    }
    return sorted;
}

Int s_bounding_denominator(const MinimalIdealTable& t, const FieldCtx& ctx) {
    // N(L) for L = lcm of all minimal ideals: (N(L)) is contained in L,
    // hence in every a_{c,j}
    Ideal L = unit_ideal(ctx.f);
    for (auto& entry : t.entries)
        for (auto& A : entry.ideals) {
            // lcm(L, A) = L * A / gcd(L, A)
            Ideal g = ideal_gcd(L, A, ctx.f);
            L = *ideal_divide_exact(ideal_product(L, A, ctx.f), g, ctx.f);
        }
    return L.norm();
}

std::string BoundaryAlgebraShape::descriptor() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < matrix_sizes.size(); ++i) {
        if (i) os << " + ";
        os << "M" << matrix_sizes[i];
    }
    os << ") x C(" << commutative_points << " pts at level " << level << ")";
    return os.str();
}

BoundaryAlgebraShape boundary_algebra_shape(const MinimalIdealTable& t, const Int& level,
                                            const FieldCtx& ctx) {
    BoundaryAlgebraShape s;
    for (auto& e : t.entries) s.matrix_sizes.push_back(e.k());
    s.level = level;
    s.commutative_points = static_cast<long>(unit_orbit_space(ctx, level).size());
    return s;
}

std::vector<Residue> unit_orbit_space(const FieldCtx& ctx, const Int& m) {
    if (m < 2) throw std::domain_error("unit_orbit_space: need level >= 2");
    auto all = residue_units(ctx.f, m);
    auto subgroup = unit_image_mod(ctx.f, ctx.units, m);
    std::set<Residue> remaining(all.begin(), all.end());
    std::vector<Residue> reps;
    while (!remaining.empty()) {
        Residue r = *remaining.begin();
        reps.push_back(r);
        for (auto& u : subgroup) remaining.erase(residue_mul(r, u, ctx.f, m));
    }
    return reps;
}

FieldElement escape_witness(const Ideal& P, const FieldCtx& ctx) {
    unsigned h = ctx.cls.h_plus.convert_to<unsigned>();
    Ideal Ph = ideal_pow(P, h, ctx.f);
    FieldElement x = canonical_tp_generator(FractionalIdeal{Ph, 1}, ctx);
    if (fe_norm(x, ctx.f) <= 1) throw std::logic_error("escape_witness: norm not > 1");
    return x;
}

double sigma0_tail_bound(double beta, const Int& B) {
    double b = B.convert_to<double>();
    double q = beta / (beta - 1.0);
    return q * std::pow(b, 1.0 - beta) * ((1.0 + std::log(b)) + q);
}

namespace {

long ideal_count(const FieldCtx& ctx, const Int& n, EnumCache* cache) {
    if (cache) return static_cast<long>(cache->of_norm(n).size());
    return static_cast<long>(ideals_of_norm(n, ctx.f).size());
}

}  // namespace

ZetaPartial zeta_partial(const FieldCtx& ctx, double beta, const Int& B, EnumCache* cache) {
    ZetaPartial out;
    for (Int n = 1; n <= B; ++n) {
        long a = ideal_count(ctx, n, cache);
        if (!a) continue;
        out.terms += a;
        out.value += static_cast<double>(a) * std::pow(n.convert_to<double>(), -beta);
    }
    if (beta > 1.0) {
        out.tail_bound = sigma0_tail_bound(beta, B);
    } else {
        out.tail_finite = false;
        out.tail_bound = std::numeric_limits<double>::infinity();
    }
    return out;
}

ZetaPartial zeta_class_partial(const FieldCtx& ctx, int class_index, double beta, const Int& B,
                               EnumCache* cache) {
    if (class_index < 0 || class_index >= ctx.cls.h_plus)
        throw std::invalid_argument("zeta_class_partial: bad class index");
    ZetaPartial out;
    for (Int n = 1; n <= B; ++n) {
        const std::vector<Ideal>& v = cache ? cache->of_norm(n) : ideals_of_norm(n, ctx.f);
        long a = 0;
        for (auto& I : v)
            if (class_of(I, ctx.f, ctx.cls) == class_index) ++a;
        if (!a) continue;
        out.terms += a;
        out.value += static_cast<double>(a) * std::pow(n.convert_to<double>(), -beta);
    }
    if (beta > 1.0) {
        out.tail_bound = sigma0_tail_bound(beta, B);
    } else {
        out.tail_finite = false;
        out.tail_bound = std::numeric_limits<double>::infinity();
    }
    return out;
}

Rational zeta_partial_exact(const FieldCtx& ctx, long beta, const Int& B, EnumCache* cache) {
    if (beta < 1) throw std::domain_error("zeta_partial_exact: need integer beta >= 1");
    Rational out(0);
    for (Int n = 1; n <= B; ++n) {
        long a = ideal_count(ctx, n, cache);
        if (a) out += Rational(a) * rat_pow(Rational(1, n), beta);
    }
    return out;
}

}  // namespace heckeq
