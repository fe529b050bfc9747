#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heckeq/hecke.hpp"

#include <random>

using namespace heckeq;

namespace {

HeckeCtx make_ctx(long d) { return HeckeCtx(make_field_ctx(d)); }

FieldElement fe(long x) { return FieldElement(Rational(x)); }
FieldElement fe(long xn, long xd) { return FieldElement(Rational(xn, xd)); }

}  // namespace

TEST_CASE("double coset canonicalization") {
    auto ctx = make_ctx(1);
    // (1, 0) is the unit coset
    CHECK(ctx.canonicalize(fe(1), fe(0)) == ctx.identity_coset());
    // (1, 1/2) and (1, 3/2) agree over Q
    CHECK(ctx.canonicalize(fe(1), fe(1, 2)) == ctx.canonicalize(fe(1), fe(3, 2)));
    CHECK(ctx.canonicalize(fe(1), fe(1, 2)) != ctx.identity_coset());
    CHECK_THROWS_AS(ctx.canonicalize(fe(-2), fe(0)), std::invalid_argument);

    // (1, 1/4) and (1, (3+2sqrt2)/4) agree over Q(sqrt2)
    auto c2 = make_ctx(2);
    FieldElement quarter(Rational(1, 4));
    FieldElement other(Rational(3, 4), Rational(2, 4));
    CHECK(c2.canonicalize(fe(1), quarter) == c2.canonicalize(fe(1), other));

    // idempotent and stable under random re-representation of the coset
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> small(-3, 3);
    for (long dsel : {1L, 2L, -5L}) {
        auto cx = make_ctx(dsel);
        const FieldSpec& f = cx.field();
        UnitData u = fundamental_unit(f);
        std::pair<FieldElement, FieldElement> g{FieldElement(Rational(3, 2)),
                                                FieldElement(Rational(1, 4))};
        DoubleCoset dc = cx.canonicalize(g.first, g.second);
        for (int trial = 0; trial < 25; ++trial) {
            // gamma1 * g * gamma2 for random subgroup elements
            FieldElement w1 = u.eps_plus, w2 = u.eps_plus;
            if (f.is_imaginary_quadratic()) {
                w1 = u.torsion_units[trial % u.torsion_units.size()];
                w2 = u.torsion_units[(trial + 1) % u.torsion_units.size()];
            }
            if (f.is_rational()) w1 = w2 = fe(1);
            FieldElement b1{Rational(small(rng)), f.is_rational() ? Rational(0) : Rational(small(rng))};
            FieldElement b2{Rational(small(rng)), f.is_rational() ? Rational(0) : Rational(small(rng))};
            auto gg = pair_mul(pair_mul({w1, b1}, g, f), {w2, b2}, f);
            CHECK(cx.canonicalize(gg.first, gg.second) == dc);
        }
    }
}

TEST_CASE("coset representatives and the modular function") {
    auto ctx = make_ctx(1);
    // dc of (a, 0): N_a representatives (b, a), b over O/aO
    DoubleCoset d3 = ctx.canonicalize(fe(3), fe(0));
    auto reps = ctx.coset_reps(d3);
    REQUIRE(reps.size() == 3);
    for (auto& r : reps) CHECK(r.x == fe(3));
    CHECK(modular_delta(d3, ctx.field()) == Rational(1, 3));
    // Delta = (#cosets of the inverse) / (#cosets)
    DoubleCoset d3i = ctx.inverse_coset(d3);
    CHECK(Rational(ctx.coset_count(d3i), ctx.coset_count(d3)) == modular_delta(d3, ctx.field()));

    // dc of (1, r) with integral r: single representative
    CHECK(ctx.coset_count(ctx.canonicalize(fe(1), fe(7))) == 1);

    // R(1/4) = 2 over Q(sqrt2)
    auto c2 = make_ctx(2);
    CHECK(unit_orbit_size(FieldElement(Rational(1, 4)), c2) == 2);
    // R(r) = 1 for all r over Q
    for (long q : {2, 3, 4, 5, 8, 12})
        CHECK(unit_orbit_size(FieldElement(Rational(1, q)), ctx) == 1);
}

TEST_CASE("delta formula holds on enumerated cosets") {
    for (long d : {1, 2, -5}) {
        auto ctx = make_ctx(d);
        const FieldSpec& f = ctx.field();
        std::vector<std::pair<FieldElement, FieldElement>> gens = {
            {fe(2), fe(0)},      {fe(3), fe(1, 2)},       {fe(1, 2), fe(0)},
            {fe(3, 2), fe(1, 4)}, {fe(5), fe(2, 5)},
        };
        for (auto& [x, y] : gens) {
            DoubleCoset dc = ctx.canonicalize(x, y);
            CHECK(Rational(ctx.coset_count(ctx.inverse_coset(dc)), ctx.coset_count(dc)) ==
                  modular_delta(dc, f));
        }
    }
}

TEST_CASE("the bost-connes products over Q") {
    auto ctx = make_ctx(1);
    HeckeElement m2 = mu(fe(2), ctx);
    HeckeElement m2s = involution(ctx, m2);
    // mu_2* mu_2 = 1
    CHECK(convolve(ctx, m2s, m2) == hecke_identity(ctx));
    // mu_2 mu_2* = (1/2)(e_0 + e_{1/2})
    HeckeElement rhs = lc_add(lc_scale(SqrtScalar(Rational(1, 2)), e(fe(0), ctx)),
                              lc_scale(SqrtScalar(Rational(1, 2)), e(fe(1, 2), ctx)));
    CHECK(convolve(ctx, m2, m2s) == rhs);
    // e_{1/2} * e_{1/2} = 1
    CHECK(convolve(ctx, e(fe(1, 2), ctx), e(fe(1, 2), ctx)) == hecke_identity(ctx));
    CHECK_THROWS_AS(mu(fe(1, 2), ctx), std::invalid_argument);
}

TEST_CASE("sigma and grading") {
    auto ctx = make_ctx(1);
    const FieldSpec& f = ctx.field();
    HeckeElement m2 = mu(fe(2), ctx);
    HeckeElement m3s = involution(ctx, mu(fe(3), ctx));
    HeckeElement word = convolve(ctx, m2, m3s);
    // sigma_t(e_r) = e_r and sigma_analytic(mu_a) = N_a^{-beta} mu_a
    CHECK(sigma_analytic(e(fe(1, 3), ctx), 5, f) == e(fe(1, 3), ctx));
    CHECK(sigma_analytic(m2, 2, f) == lc_scale(SqrtScalar(Rational(1, 4)), m2));
    // grading: mu_2 mu_3* is homogeneous of degree 2/3
    CHECK(grading_component(ctx, word, fe(2, 3)) == word);
    CHECK(grading_component(ctx, word, fe(1)).is_zero());
    CHECK(identity_component(word).is_zero());
    // sigma_analytic is a homomorphism for the convolution
    HeckeElement a = convolve(ctx, m2, involution(ctx, m2));
    HeckeElement b = convolve(ctx, e(fe(1, 2), ctx), m2);
    for (long beta : {1, 2}) {
        CHECK(sigma_analytic(convolve(ctx, a, b), beta, f) ==
              convolve(ctx, sigma_analytic(a, beta, f), sigma_analytic(b, beta, f)));
    }
    // sigma_t at t = 0 is the identity
    auto phases = sigma_t(word, 0.0, f);
    for (auto& [dc, v] : phases) CHECK(std::abs(v - word.terms.at(dc).to_double()) < 1e-15);
}

TEST_CASE("associativity on random generator triples") {
    std::mt19937_64 rng(20260811);
    for (long d : {1, 2, -5}) {
        auto ctx = make_ctx(d);
        const FieldSpec& f = ctx.field();
        auto as = mu_generators(ctx, 5);
        auto rs = e_generators(ctx, 4);
        std::vector<HeckeElement> gens;
        for (auto& a : as) gens.push_back(mu(a, ctx));
        for (auto& r : rs) gens.push_back(e(r, ctx));
        for (auto& a : as) gens.push_back(involution(ctx, mu(a, ctx)));
        std::uniform_int_distribution<size_t> pick(0, gens.size() - 1);
        int trials = d == 1 ? 80 : 40;
        for (int trial = 0; trial < trials; ++trial) {
            const auto& A = gens[pick(rng)];
            const auto& B = gens[pick(rng)];
            const auto& C = gens[pick(rng)];
            CHECK(convolve(ctx, convolve(ctx, A, B), C) == convolve(ctx, A, convolve(ctx, B, C)));
        }
        (void)f;
    }
}

TEST_CASE("tau_u is a level-stable *-automorphism") {
    auto ctx = make_ctx(1);
    const FieldSpec& f = ctx.field();
    Int m = 8;
    // tau(1) = id; over Q with u = 3 mod 4: tau(u)(e_{1/4}) = e_{3/4}
    CHECK(tau_u(ctx, e(fe(1, 4), ctx), Residue{1, 0}, Int(4)) == e(fe(1, 4), ctx));
    CHECK(tau_u(ctx, e(fe(1, 4), ctx), Residue{3, 0}, Int(4)) == e(fe(3, 4), ctx));
    CHECK(tau_u(ctx, mu(fe(5), ctx), Residue{3, 0}, Int(8)) == mu(fe(5), ctx));
    // *-automorphism on products at sufficient level
    HeckeElement A = convolve(ctx, mu(fe(2), ctx), e(fe(1, 8), ctx));
    HeckeElement B = e(fe(3, 8), ctx);
    for (Int us : {1, 3, 5, 7}) {
        Residue u{us, 0};
        CHECK(tau_u(ctx, convolve(ctx, A, B), u, m) ==
              convolve(ctx, tau_u(ctx, A, u, m), tau_u(ctx, B, u, m)));
        CHECK(tau_u(ctx, involution(ctx, A), u, m) == involution(ctx, tau_u(ctx, A, u, m)));
    }
    // insufficient level rejected
    CHECK_THROWS_AS(tau_u(ctx, e(fe(1, 8), ctx), Residue{3, 0}, Int(4)), std::invalid_argument);
    (void)f;

    // tau factors through (O/m)* modulo the image of O*_+
    auto c2 = make_ctx(2);
    Int m2 = 7;
    Residue eps = residue_of(c2.nf().units.eps_plus, c2.field(), m2);
    HeckeElement x = e(FieldElement(Rational(1, 7)), c2);
    for (auto& u : residue_units(c2.field(), m2)) {
        Residue ue = residue_mul(u, eps, c2.field(), m2);
        CHECK(tau_u(c2, x, u, m2) == tau_u(c2, x, ue, m2));
    }
}

TEST_CASE("beta action over Q fixes rational combinations of e_r") {
    auto ctx = make_ctx(1);
    Int m = 8;
    CycHeckeElement h = to_cyclotomic(e(fe(1, 8), ctx));
    CHECK(is_arithmetic_fixed(ctx, h, m));
    CycHeckeElement w = to_cyclotomic(mu(fe(4), ctx));  // N_4 = 4 square, rational coeff
    CHECK(is_arithmetic_fixed(ctx, w, m));
    // a cyclotomic coefficient on a y != 0 coset is moved by the Galois twist
    CycHeckeElement bad;
    bad.add_term(ctx.canonicalize(fe(1), fe(1, 8)), Cyclotomic::zeta_pow(8, 1));
    CHECK(!is_arithmetic_fixed(ctx, bad, m));
}

TEST_CASE("beta action over a real field: orbit averages are fixed") {
    auto c2 = make_ctx(2);
    Int m = 8;
    // sum over u of e_{conj(u)/8}: rational coefficients on the orbit
    CycHeckeElement avg;
    const FieldSpec& f = c2.field();
    for (auto& u : residue_units(f, m)) {
        Int nu = residue_norm_exponent(u, f, m);
        Residue w = residue_mul({nu, 0}, residue_inv(u, f, m), f, m);
        FieldElement wr{Rational(w.s), Rational(w.t)};
        FieldElement idx = fe_mul_rat(wr, Rational(1, 8));
        avg = lc_add(avg, to_cyclotomic(e(idx, c2)));
    }
    CHECK(is_arithmetic_fixed(c2, avg, m));
}

TEST_CASE("relation report passes at small bounds") {
    for (long d : {1, -5}) {
        auto ctx = make_ctx(d);
        RelationBounds b;
        b.max_norm_a = 5;
        b.max_denominator = 3;
        auto rep = check_relations(ctx, b);
        for (auto& e : rep.entries) {
            INFO(e.name);
            CHECK(e.failures.empty());
            CHECK(e.instances > 0);
        }
        CHECK(rep.all_passed());
    }
}

TEST_CASE("finite hecke groupoid model: d = -15 boundary is M_1 + M_2") {
    FieldCtx ctx = make_field_ctx(-15);
    auto above2 = primes_above(2, ctx.f);
    REQUIRE(above2.size() == 2);
    auto mdl = hecke_groupoid_model(ctx, {above2[0].P, above2[1].P}, 2);
    CHECK(validate(mdl.g, mdl.c).empty());
    auto z = boundary_set(mdl.g, mdl.c);
    // profiles (0,0), (1,0), (0,1)
    CHECK(z.size() == 3);
    auto b = boundary_groupoid(mdl.g, mdl.c);
    // M_1 + M_2: 1 + 4 arrows
    CHECK(b.gz.n == 5);
}
