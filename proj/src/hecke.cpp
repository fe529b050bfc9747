#include "heckeq/hecke.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace heckeq {

FieldElement pair_mul_x(const FieldElement& x1, const FieldElement& x2, const FieldSpec& f) {
    return fe_mul(x1, x2, f);
}

std::pair<FieldElement, FieldElement> pair_mul(const std::pair<FieldElement, FieldElement>& g1,
                                               const std::pair<FieldElement, FieldElement>& g2,
                                               const FieldSpec& f) {
    // (x1, y1)(x2, y2) = (x1 x2, y2 + y1 x2)
    return {fe_mul(g1.first, g2.first, f), fe_add(g2.second, fe_mul(g1.second, g2.first, f))};
}

std::pair<FieldElement, FieldElement> pair_inv(const std::pair<FieldElement, FieldElement>& g,
                                               const FieldSpec& f) {
    FieldElement xi = fe_inv(g.first, f);
    return {xi, fe_neg(fe_mul(g.second, xi, f))};
}

DoubleCoset HeckeCtx::canonicalize(const FieldElement& x, const FieldElement& y) {
    if (x.is_zero() || !is_totally_positive(x, nf_.f))
        throw std::invalid_argument("canonicalize: x must be totally positive");
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = canon_.find({x, y});
        if (it != canon_.end()) return it->second;
    }
    FieldElement xc = canonical_unit_rep(x, nf_.f, nf_.units);
    FractionalIdeal M = one_plus_x_module(xc, nf_.f);
    auto orbit = unit_orbit_mod_lattice(y, M, nf_.f, nf_.units);
    DoubleCoset dc{xc, orbit.front()};
    std::lock_guard<std::mutex> lock(mu_);
    canon_.emplace(std::make_pair(x, y), dc);
    return dc;
}

const std::vector<CosetRep>& HeckeCtx::coset_reps(const DoubleCoset& dc) {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = reps_.find(dc);
        if (it != reps_.end()) return it->second;
    }
    const FieldSpec& f = nf_.f;
    FractionalIdeal M = one_plus_x_module(dc.x, f);
    auto orbit = unit_orbit_mod_lattice(dc.y, M, f, nf_.units);
    Ideal nx = element_ideal_parts(dc.x, f).first;  // O intersect xO
    auto trans = ideal_transversal(nx, f);
    FractionalIdeal xlat = fractional_of_element(dc.x, f);
    std::vector<CosetRep> reps;
    std::set<FieldElement> seen;
    for (auto& w : orbit)
        for (auto& t : trans) {
            FieldElement yr = reduce_mod_lattice(fe_add(w, t), xlat, f);
            if (!seen.insert(yr).second)
                throw std::logic_error("coset_reps: representatives collide");
            reps.push_back({yr, dc.x});
        }
    std::lock_guard<std::mutex> lock(mu_);
    return reps_.emplace(dc, std::move(reps)).first->second;
}

Int HeckeCtx::coset_count(const DoubleCoset& dc) {
    return Int(coset_reps(dc).size());
}

DoubleCoset HeckeCtx::identity_coset() {
    return canonicalize(FieldElement(Rational(1)), FieldElement());
}

DoubleCoset HeckeCtx::inverse_coset(const DoubleCoset& dc) {
    auto gi = pair_inv({dc.x, dc.y}, nf_.f);
    return canonicalize(gi.first, gi.second);
}

Int unit_orbit_size(const FieldElement& r, HeckeCtx& ctx) {
    return ctx.coset_count(ctx.canonicalize(FieldElement(Rational(1)), r));
}

Rational modular_delta(const DoubleCoset& dc, const FieldSpec& f) {
    return Rational(1) / fe_norm(dc.x, f);
}

HeckeElement hecke_identity(HeckeCtx& ctx) {
    HeckeElement out;
    out.add_term(ctx.identity_coset(), SqrtScalar::one());
    return out;
}

HeckeElement mu(const FieldElement& a, HeckeCtx& ctx) {
    const FieldSpec& f = ctx.field();
    if (!fe_is_integral(a, f) || a.is_zero() || !is_totally_positive(a, f))
        throw std::invalid_argument("mu: index must be integral and totally positive");
    Int na = num(fe_norm(a, f));
    DoubleCoset dc = ctx.canonicalize(a, FieldElement());
    HeckeElement out;
    out.add_term(dc, SqrtScalar::sqrt_term(na, Rational(1, na)));  // = N_a^{-1/2}
    return out;
}

HeckeElement e(const FieldElement& r, HeckeCtx& ctx) {
    DoubleCoset dc = ctx.canonicalize(FieldElement(Rational(1)), r);
    HeckeElement out;
    out.add_term(dc, SqrtScalar(Rational(1, ctx.coset_count(dc))));
    return out;
}

CycHeckeElement to_cyclotomic(const HeckeElement& a) {
    CycHeckeElement out;
    for (auto& [dc, c] : a.terms) out.add_term(dc, Cyclotomic(c.rational_value()));
    return out;
}

bool level_clears(const DoubleCoset& dc, const Int& m, const FieldSpec& f) {
    return fractional_contains(one_plus_x_module(dc.x, f), fe_mul_rat(dc.y, Rational(m)), f);
}

Int residue_norm_exponent(const Residue& u, const FieldSpec& f, const Int& m) {
    FieldElement z{Rational(u.s), Rational(u.t)};
    Rational n = f.is_rational() ? Rational(u.s) : fe_norm(z, f);
    return mod_pos(num(n), m);
}

CycHeckeElement beta_action(HeckeCtx& ctx, const CycHeckeElement& a, const Residue& u,
                            const Int& m) {
    const FieldSpec& f = ctx.field();
    if (!residue_is_unit(u, f, m)) throw std::invalid_argument("beta_action: u not a unit mod m");
    Int nu = residue_norm_exponent(u, f, m);
    Residue wres = residue_mul({nu, 0}, residue_inv(u, f, m), f, m);
    FieldElement w{Rational(wres.s), Rational(wres.t)};
    CycHeckeElement out;
    for (auto& [dc, c] : a.terms) {
        if (!level_clears(dc, m, f))
            throw std::invalid_argument("beta_action: insufficient level for this element");
        if (mod_pos(m, Int(c.order())) != 0)
            throw std::invalid_argument("beta_action: level does not cover coefficient order");
        long k = mod_pos(nu, Int(c.order())).convert_to<long>();
        out.add_term(ctx.canonicalize(dc.x, fe_mul(w, dc.y, f)), c.galois(k));
    }
    return out;
}

bool is_arithmetic_fixed(HeckeCtx& ctx, const CycHeckeElement& a, const Int& m) {
    for (auto& u : residue_units(ctx.field(), m))
        if (beta_action(ctx, a, u, m) != a) return false;
    return true;
}

// --- generator enumeration -------------------------------------------------

std::vector<FieldElement> mu_generators(HeckeCtx& ctx, const Int& max_norm) {
    const FieldCtx& nf = ctx.nf();
    const FieldSpec& f = nf.f;
    std::vector<FieldElement> out;
    if (f.is_rational()) {
        for (Int a = 1; a <= max_norm; ++a) out.emplace_back(Rational(a));
        return out;
    }
    double rootb = std::sqrt(max_norm.convert_to<double>());
    double spread = f.is_real_quadratic()
                        ? (1.0 + std::abs(fe_sqrt_coords(nf.units.eps_plus, f).first.convert_to<double>()) +
                           std::sqrt(std::abs(f.d.convert_to<double>())))
                        : 2.0;
    Int box = Int(static_cast<long>(spread * rootb)) + 3;
    std::map<Int, std::vector<FieldElement>> by_norm;
    for (Int s = -box; s <= box; ++s)
        for (Int t = -box; t <= box; ++t) {
            FieldElement z{Rational(s), Rational(t)};
            if (z.is_zero()) continue;
            Rational nz = fe_norm(z, f);
            if (nz <= 0 || nz > max_norm) continue;
            if (!is_totally_positive(z, f)) continue;
            if (canonical_unit_rep(z, f, nf.units) != z) continue;
            by_norm[num(nz)].push_back(z);
        }
    // completeness cross-check: canonical totally positive elements of norm n
    // biject with narrowly principal ideals of norm n
    for (Int n = 1; n <= max_norm; ++n) {
        long expect = 0;
        for (auto& I : ideals_of_norm(n, f))
            if (narrowly_principal(I, nf).has_value()) ++expect;
        long got = by_norm.count(n) ? static_cast<long>(by_norm[n].size()) : 0;
        if (got != expect) {
            std::ostringstream os;
            os << "mu_generators: enumeration box missed elements at norm " << n << " (got "
               << got << ", expected " << expect << ")";
            throw std::logic_error(os.str());
        }
    }
    for (auto& [n, v] : by_norm) {
        std::sort(v.begin(), v.end());
        out.insert(out.end(), v.begin(), v.end());
    }
    return out;
}

std::vector<FieldElement> e_generators(HeckeCtx& ctx, const Int& max_den) {
    const FieldSpec& f = ctx.field();
    std::set<FieldElement> canon;
    for (Int q = 1; q <= max_den; ++q) {
        Ideal qO = ideal_scale(unit_ideal(f), q);
        for (auto& z : ideal_transversal(qO, f)) {
            FieldElement r = fe_mul_rat(z, Rational(1, q));
            canon.insert(ctx.canonicalize(FieldElement(Rational(1)), r).y);
        }
    }
    return {canon.begin(), canon.end()};
}

// --- relation checking -----------------------------------------------------

namespace {

std::string describe(const FieldElement& z, const FieldSpec& f) { return fe_to_string(z, f); }

}  // namespace

RelationReport check_relations(HeckeCtx& ctx, const RelationBounds& bounds) {
    const FieldSpec& f = ctx.field();
    const FieldCtx& nf = ctx.nf();
    RelationReport rep;
    HeckeElement one = hecke_identity(ctx);
    auto as = mu_generators(ctx, bounds.max_norm_a);
    auto rs = e_generators(ctx, bounds.max_denominator);

    auto entry = [&](const std::string& name) -> RelationReport::Entry& {
        rep.entries.push_back({name, 0, {}});
        return rep.entries.back();
    };

    {
        auto& en = entry("mu_w = 1 for units w");
        std::vector<FieldElement> ws;
        for (auto& t : nf.units.torsion_units)
            if (is_totally_positive(t, f)) ws.push_back(t);
        if (f.is_real_quadratic()) {
            ws.push_back(nf.units.eps_plus);
            ws.push_back(fe_mul(nf.units.eps_plus, nf.units.eps_plus, f));
        }
        for (auto& w : ws) {
            ++en.instances;
            if (mu(w, ctx) != one) en.failures.push_back(describe(w, f));
        }
    }
    {
        auto& en = entry("mu_a* mu_a = 1");
        for (auto& a : as) {
            ++en.instances;
            HeckeElement m = mu(a, ctx);
            if (convolve(ctx, involution(ctx, m), m) != one) en.failures.push_back(describe(a, f));
        }
    }
    {
        auto& en = entry("mu_a mu_b = mu_ab");
        for (auto& a : as)
            for (auto& b : as) {
                ++en.instances;
                if (convolve(ctx, mu(a, ctx), mu(b, ctx)) != mu(fe_mul(a, b, f), ctx))
                    en.failures.push_back(describe(a, f) + "," + describe(b, f));
            }
    }
    {
        auto& en = entry("e_{wr+b} = e_r");
        std::vector<FieldElement> ws = nf.units.torsion_units;
        if (f.is_real_quadratic()) ws.push_back(nf.units.eps_plus);
        std::vector<FieldElement> bs{FieldElement(Rational(1))};
        if (!f.is_rational()) bs.push_back(FieldElement(Rational(0), Rational(1)));
        for (auto& r : rs)
            for (auto& w : ws) {
                if (!is_totally_positive(w, f)) continue;
                for (auto& b : bs) {
                    ++en.instances;
                    if (e(fe_add(fe_mul(w, r, f), b), ctx) != e(r, ctx))
                        en.failures.push_back(describe(r, f));
                }
            }
    }
    {
        auto& en = entry("e_0 = 1");
        ++en.instances;
        if (e(FieldElement(), ctx) != one) en.failures.push_back("e_0");
    }
    {
        auto& en = entry("e_r* = e_{-r}");
        for (auto& r : rs) {
            ++en.instances;
            if (involution(ctx, e(r, ctx)) != e(fe_neg(r), ctx)) en.failures.push_back(describe(r, f));
        }
    }
    {
        auto& en = entry("e_r e_s = orbit average of e_{ur+vs}");
        for (auto& r : rs) {
            auto orb_r = ctx.coset_reps(ctx.canonicalize(FieldElement(Rational(1)), r));
            for (auto& s : rs) {
                auto orb_s = ctx.coset_reps(ctx.canonicalize(FieldElement(Rational(1)), s));
                ++en.instances;
                HeckeElement lhs = convolve(ctx, e(r, ctx), e(s, ctx));
                HeckeElement rhs;
                Rational scale(1, Int(orb_r.size()) * Int(orb_s.size()));
                for (auto& h1 : orb_r)
                    for (auto& h2 : orb_s)
                        rhs = lc_add(rhs, lc_scale(SqrtScalar(scale), e(fe_add(h1.y, h2.y), ctx)));
                if (lhs != rhs)
                    en.failures.push_back(describe(r, f) + "," + describe(s, f));
            }
        }
    }
    {
        auto& en = entry("mu_a e_r mu_a* = (1/N_a) sum_b e_{(r+b)/a}");
        for (auto& a : as) {
            Int na = num(fe_norm(a, f));
            auto trans = ideal_transversal(principal_ideal(a, f), f);
            for (auto& r : rs) {
                ++en.instances;
                HeckeElement m = mu(a, ctx);
                HeckeElement lhs =
                    convolve(ctx, convolve(ctx, m, e(r, ctx)), involution(ctx, m));
                HeckeElement rhs;
                for (auto& b : trans)
                    rhs = lc_add(rhs, lc_scale(SqrtScalar(Rational(1, na)),
                                               e(fe_div(fe_add(r, b), a, f), ctx)));
                if (lhs != rhs)
                    en.failures.push_back(describe(a, f) + ";" + describe(r, f));
            }
        }
    }
    {
        auto& en = entry("derived: mu_a* e_r mu_a = e_{ar}");
        for (auto& a : as)
            for (auto& r : rs) {
                ++en.instances;
                HeckeElement m = mu(a, ctx);
                HeckeElement lhs =
                    convolve(ctx, convolve(ctx, involution(ctx, m), e(r, ctx)), m);
                if (lhs != e(fe_mul(a, r, f), ctx))
                    en.failures.push_back(describe(a, f) + ";" + describe(r, f));
            }
    }
    return rep;
}

// --- finite-level groupoid model -------------------------------------------

HeckeGroupoidModel hecke_groupoid_model(const FieldCtx& ctx, const std::vector<Ideal>& primes,
                                        int max_exp) {
    const FieldSpec& f = ctx.f;
    HeckeGroupoidModel mdl;
    mdl.primes = primes;
    // enumerate exponent profiles
    std::vector<std::vector<int>> profiles{{}};
    for (size_t i = 0; i < primes.size(); ++i) {
        std::vector<std::vector<int>> next;
        for (auto& p : profiles)
            for (int e = 0; e <= max_exp; ++e) {
                auto q = p;
                q.push_back(e);
                next.push_back(q);
            }
        profiles = std::move(next);
    }
    mdl.profiles = profiles;
    int npts = static_cast<int>(profiles.size());

    // class of the ideal with a given nonnegative profile
    auto profile_class = [&](const std::vector<int>& prof) {
        Ideal I = unit_ideal(f);
        for (size_t i = 0; i < primes.size(); ++i)
            I = ideal_product(I, ideal_pow(primes[i], prof[i], f), f);
        return class_of(I, f, ctx.cls);
    };
    std::vector<int> cls(npts);
    std::vector<Rational> nrm(npts);
    for (int i = 0; i < npts; ++i) {
        cls[i] = profile_class(profiles[i]);
        Rational n(1);
        for (size_t k = 0; k < primes.size(); ++k)
            n *= rat_pow(Rational(primes[k].norm()), profiles[i][k]);
        nrm[i] = n;
        mdl.unit_of[profiles[i]] = i;  // placeholder, fixed below once arrow ids exist
    }

    // arrows: (src, dst) iff the profile difference is a narrowly principal
    // fractional ideal, i.e. the endpoint classes agree
    std::vector<std::pair<int, int>> arrows;
    for (int s = 0; s < npts; ++s)
        for (int d = 0; d < npts; ++d)
            if (cls[s] == cls[d]) arrows.push_back({s, d});

    FiniteGroupoid& g = mdl.g;
    g.n = static_cast<int>(arrows.size());
    g.range.resize(g.n);
    g.source.resize(g.n);
    g.inverse.resize(g.n);
    mdl.c.value.resize(g.n);
    std::map<std::pair<int, int>, int> id;
    for (int a = 0; a < g.n; ++a) id[arrows[a]] = a;
    for (int i = 0; i < npts; ++i) {
        int u = id.at({i, i});
        g.units.push_back(u);
        mdl.unit_of[profiles[i]] = u;
    }
    for (int a = 0; a < g.n; ++a) {
        auto [s, d] = arrows[a];
        g.range[a] = id.at({d, d});
        g.source[a] = id.at({s, s});
        g.inverse[a] = id.at({d, s});
        mdl.c.value[a] = nrm[d] / nrm[s];
        mdl.arrow_of[{s, d}] = a;
    }
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            auto [sa, da] = arrows[a];
            auto [sb, db] = arrows[b];
            if (sa != db) continue;  // s(g) = r(h): g maps sa->da after h maps sb->sa
            g.compose[{a, b}] = id.at({sb, da});
        }
    return mdl;
}

}  // namespace heckeq
