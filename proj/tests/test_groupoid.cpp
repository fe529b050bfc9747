#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "heckeq/groupoid.hpp"

using namespace heckeq;

namespace {

// direct matrix-algebra Gibbs oracle for the pair groupoid:
// phi(E_ij) = delta_ij w_i^{-beta} / Z
QC gibbs_oracle_value(const PairGroupoid& pg, const Rational& beta, int i, int j) {
    if (i != j) return QC();
    int npts = static_cast<int>(pg.arrow.size());
    Rational z(0), wi(0);
    for (int k = 0; k < npts; ++k) {
        Rational w = *exact_pow(pg.c.value[pg.arrow[k][0]], -beta);
        z += w;
        if (k == i) wi = w;
    }
    return QC(wi / z);
}

}  // namespace

TEST_CASE("validate accepts a pair groupoid with a coboundary cocycle") {
    auto pg = pair_groupoid({Rational(1), Rational(3)});
    CHECK(validate(pg.g, pg.c).empty());
    auto cg = cyclic_groupoid(3);
    CHECK(validate(cg.g, cg.c).empty());
}

TEST_CASE("validate reports broken axioms with witnesses") {
    auto pg = pair_groupoid({Rational(1), Rational(1)});
    SUBCASE("broken associativity / composition table") {
        auto bad = pg;
        bad.g.compose[{bad.arrow[0][1], bad.arrow[1][0]}] = bad.arrow[0][1];
        auto diag = validate(bad.g, bad.c);
        CHECK(!diag.empty());
    }
    SUBCASE("cocycle nonzero on a unit") {
        auto bad = pg;
        bad.c.value[bad.g.units[0]] = Rational(2);
        auto diag = validate(bad.g, bad.c);
        REQUIRE(!diag.empty());
        bool found = false;
        for (auto& s : diag)
            if (s.find("unit") != std::string::npos) found = true;
        CHECK(found);
    }
}

TEST_CASE("convolution on deltas") {
    auto pg = pair_groupoid({Rational(1), Rational(1)});
    // d_{0<-1} * d_{1<-0} = d_{0<-0}
    auto prod = convolve(pg.g, delta(pg.arrow[0][1]), delta(pg.arrow[1][0]));
    CHECK(prod == delta(pg.arrow[0][0]));
    // unit delta acts as range projection
    GElement f = g_add(delta(pg.arrow[0][1]), delta(pg.arrow[1][0]));
    auto cut = convolve(pg.g, delta(pg.arrow[0][0]), f);
    CHECK(cut == delta(pg.arrow[0][1]));
    // Z/3: d_g * d_g = d_{g^2}
    auto cg = cyclic_groupoid(3);
    CHECK(convolve(cg.g, delta(cg.elem[1]), delta(cg.elem[1])) == delta(cg.elem[2]));
}

TEST_CASE("convolution is associative and involution anti-multiplicative (exhaustive)") {
    auto pg = pair_groupoid({Rational(1), Rational(2), Rational(5)});
    std::vector<GElement> basis;
    for (int a = 0; a < pg.g.n; ++a) basis.push_back(delta(a));
    for (auto& x : basis)
        for (auto& y : basis) {
            CHECK(involution(pg.g, convolve(pg.g, x, y)) ==
                  convolve(pg.g, involution(pg.g, y), involution(pg.g, x)));
            for (auto& z : basis)
                CHECK(convolve(pg.g, convolve(pg.g, x, y), z) ==
                      convolve(pg.g, x, convolve(pg.g, y, z)));
        }
}

TEST_CASE("dynamics: identity at t = 0, group law, analytic weights") {
    auto pg = pair_groupoid({Rational(1), Rational(4)});
    GElement f = g_add(delta(pg.arrow[0][1]), g_scale(QC(Rational(3)), delta(pg.arrow[1][0])));
    auto f0 = apply_dynamics(pg.g, pg.c, f, 0.0);
    for (auto& [k, v] : f0) CHECK(std::abs(v - f[k].to_complex()) < 1e-15);
    // one-parameter group law at double precision
    auto f1 = apply_dynamics(pg.g, pg.c, f, 0.7);
    auto f2 = apply_dynamics(pg.g, pg.c, f, 1.1);
    auto f12 = apply_dynamics(pg.g, pg.c, f, 1.8);
    for (auto& [k, v] : f12) {
        std::complex<double> expect = f1[k] * f2[k] / f[k].to_complex();
        CHECK(std::abs(v - expect) < 1e-12);
    }
    // analytic continuation multiplies by N^{-beta}
    auto fb = apply_analytic(pg.g, pg.c, delta(pg.arrow[1][0]), Rational(2));
    CHECK(fb.at(pg.arrow[1][0]) == QC(Rational(1, 16)));
    // beta = 1/2 on a perfect-square weight stays exact
    auto fh = apply_analytic(pg.g, pg.c, delta(pg.arrow[1][0]), Rational(1, 2));
    CHECK(fh.at(pg.arrow[1][0]) == QC(Rational(1, 2)));
}

TEST_CASE("states from measure and isotropy traces") {
    auto pg = pair_groupoid({Rational(1), Rational(1)});
    GStateSpec s;
    s.measure[pg.g.units[0]] = Rational(1, 2);
    s.measure[pg.g.units[1]] = Rational(1, 2);
    GElement f = g_add(delta(pg.arrow[0][0]),
                       g_add(delta(pg.arrow[0][1]), g_scale(QC(Rational(5)), delta(pg.arrow[1][1]))));
    CHECK(state_eval(pg.g, s, f) == QC(Rational(3)));  // 1/2 * 1 + 1/2 * 5

    // non-normalized rejected
    GStateSpec bad = s;
    bad.measure[pg.g.units[0]] = Rational(1);
    CHECK_THROWS_AS(state_eval(pg.g, bad, f), std::invalid_argument);

    // Z/2 isotropy with the sign character
    auto cg = cyclic_groupoid(2);
    GStateSpec ch;
    ch.measure[0] = Rational(1);
    ch.traces[0][cg.elem[1]] = QC(Rational(-1));
    CHECK(state_eval(cg.g, ch, delta(cg.elem[1])) == QC(Rational(-1)));
    CHECK(state_eval(cg.g, ch, delta(cg.elem[0])) == QC(Rational(1)));
}

TEST_CASE("quasi-invariance of Gibbs measures") {
    auto pg = pair_groupoid({Rational(1), Rational(3)});
    for (long b : {1, 2, 5}) {
        auto s = gibbs_state(pg, Rational(b));
        CHECK(check_quasi_invariance(pg.g, s, pg.c, Rational(b)) == 0.0);
    }
    // uniform measure with a nonzero coboundary violates at beta != 0
    GStateSpec uni;
    uni.measure[pg.g.units[0]] = Rational(1, 2);
    uni.measure[pg.g.units[1]] = Rational(1, 2);
    CHECK(check_quasi_invariance(pg.g, uni, pg.c, Rational(1)) > 0.0);
    // any measure works at beta = 0 iff constant on orbits
    CHECK(check_quasi_invariance(pg.g, uni, pg.c, Rational(0)) == 0.0);
    GStateSpec lop;
    lop.measure[pg.g.units[0]] = Rational(1, 3);
    lop.measure[pg.g.units[1]] = Rational(2, 3);
    CHECK(check_quasi_invariance(pg.g, lop, pg.c, Rational(0)) > 0.0);
}

TEST_CASE("Gibbs states are exactly KMS on pair groupoids") {
    std::vector<std::vector<Rational>> potentials = {
        {Rational(1), Rational(2)},
        {Rational(1), Rational(2), Rational(7, 2)},
        {Rational(2), Rational(3), Rational(5), Rational(7)},
        {Rational(1), Rational(1), Rational(4), Rational(9), Rational(25)},
    };
    for (auto& w : potentials) {
        auto pg = pair_groupoid(w);
        for (long b : {1, 2, 5}) {
            auto s = gibbs_state(pg, Rational(b));
            CHECK(check_KMS(pg.g, s, pg.c, Rational(b)) == 0.0);
            // matches the direct matrix-algebra oracle
            int npts = static_cast<int>(w.size());
            for (int i = 0; i < npts; ++i)
                for (int j = 0; j < npts; ++j)
                    CHECK(state_eval(pg.g, s, delta(pg.arrow[i][j])) ==
                          gibbs_oracle_value(pg, Rational(b), i, j));
            // uniqueness among measures: the linear system pins Gibbs
            auto sol = kms_measure_solutions(pg.g, pg.c, Rational(b));
            REQUIRE(sol.kind == MeasureSolution::Kind::unique);
            for (auto& [u, m] : sol.measure) CHECK(m == s.measure.at(u));
        }
    }
    // beta = 1/2 with perfect-square weights stays exact
    auto pg = pair_groupoid({Rational(1), Rational(4), Rational(9)});
    auto s = gibbs_state(pg, Rational(1, 2));
    CHECK(check_KMS(pg.g, s, pg.c, Rational(1, 2)) == 0.0);
}

TEST_CASE("perturbed Gibbs measure is rejected") {
    auto pg = pair_groupoid({Rational(1), Rational(2), Rational(3)});
    for (long b : {1, 2, 5}) {
        auto s = gibbs_state(pg, Rational(b));
        // scale one weight by 1.1 and renormalize
        GStateSpec pert = s;
        pert.measure[pg.g.units[0]] *= Rational(11, 10);
        Rational z(0);
        for (auto& [u, m] : pert.measure) z += m;
        for (auto& [u, m] : pert.measure) m /= z;
        CHECK(check_KMS(pg.g, pert, pg.c, Rational(b)) > 1e-3);
    }
}

TEST_CASE("trivial cocycle: every tracial state is KMS for every beta") {
    auto cg = cyclic_groupoid(4);
    GStateSpec s;
    s.measure[0] = Rational(1);
    s.traces[0][cg.elem[2]] = QC(Rational(1, 3));
    for (long b : {0, 1, 2, 5})
        CHECK(check_KMS(cg.g, s, cg.c, Rational(b), Kms0Convention::plain) == 0.0);
}

TEST_CASE("KMS_0 convention flag") {
    // one-unit groupoid Z as finite model: use Z/2 with a nontrivial cocycle
    // is impossible (cocycle must be a homomorphism to R), so use a pair
    // groupoid plus isotropy: simplest test is the documented flag behavior
    // on a groupoid with isotropy and zero cocycle extended by a potential.
    auto pg = pair_groupoid({Rational(1), Rational(2)});
    auto s = gibbs_state(pg, Rational(0));
    // at beta = 0 the Gibbs state is uniform; no isotropy arrows with N != 1
    // exist here, so both conventions agree
    CHECK(check_KMS(pg.g, s, pg.c, Rational(0), Kms0Convention::require_invariance) ==
          check_KMS(pg.g, s, pg.c, Rational(0), Kms0Convention::plain));
}

TEST_CASE("boundary set and boundary groupoid") {
    // pair groupoid, potential (0, 1) multiplicatively (1, e): use (1, 3)
    auto pg = pair_groupoid({Rational(1), Rational(3)});
    auto z = boundary_set(pg.g, pg.c);
    REQUIRE(z.size() == 1);
    CHECK(z[0] == pg.g.units[0]);  // the minimum of the potential

    // trivial cocycle: Z = all units, boundary groupoid = G
    auto pg0 = pair_groupoid({Rational(1), Rational(1), Rational(1)});
    CHECK(boundary_set(pg0.g, pg0.c).size() == 3);
    auto b0 = boundary_groupoid(pg0.g, pg0.c);
    CHECK(b0.gz.n == pg0.g.n);

    // three points, strictly increasing potential
    auto pg3 = pair_groupoid({Rational(1), Rational(2), Rational(4)});
    auto z3 = boundary_set(pg3.g, pg3.c);
    REQUIRE(z3.size() == 1);
    CHECK(z3[0] == pg3.g.units[0]);
    auto b3 = boundary_groupoid(pg3.g, pg3.c);
    CHECK(b3.gz.n == 1);

    // tied minima: boundary = pair groupoid on the two minima
    auto tie = pair_groupoid({Rational(1), Rational(1), Rational(5)});
    auto zt = boundary_set(tie.g, tie.c);
    CHECK(zt.size() == 2);
    auto bt = boundary_groupoid(tie.g, tie.c);
    CHECK(bt.gz.n == 4);
}

TEST_CASE("ground state criterion") {
    auto pg = pair_groupoid({Rational(1), Rational(3)});
    // point mass at the minimum is ground
    GStateSpec pm;
    pm.measure[pg.g.units[0]] = Rational(1);
    auto phi = functional_from_state(pg.g, pm);
    CHECK(check_ground(pg.g, pg.c, phi).ok);
    // point mass at the non-minimum is not, with witnesses
    GStateSpec bad;
    bad.measure[pg.g.units[1]] = Rational(1);
    auto phib = functional_from_state(pg.g, bad);
    auto chk = check_ground(pg.g, pg.c, phib);
    CHECK(!chk.ok);
    CHECK(!chk.witnesses.empty());
    // trivial cocycle: every state is ground
    auto pg0 = pair_groupoid({Rational(1), Rational(1)});
    GStateSpec any;
    any.measure[pg0.g.units[0]] = Rational(1, 3);
    any.measure[pg0.g.units[1]] = Rational(2, 3);
    CHECK(check_ground(pg0.g, pg0.c, functional_from_state(pg0.g, any)).ok);
}

TEST_CASE("ground states from boundary states; KMS_infinity gap on tied minima") {
    auto tie = pair_groupoid({Rational(1), Rational(1), Rational(5)});
    auto b = boundary_groupoid(tie.g, tie.c);
    REQUIRE(b.gz.n == 4);  // 2x2 matrix algebra

    // psi = point evaluation at a boundary unit -> evaluation extended by
    // zero; ground, but a vector state on M_2 is not tracial
    GFunctional psi_pt;
    psi_pt[b.new_id.at(tie.g.units[0])] = QC(Rational(1));
    auto phi_pt = ground_from_boundary_state(b, psi_pt);
    CHECK(check_ground(tie.g, tie.c, phi_pt).ok);
    CHECK(!kms_infty_compat(tie.g, tie.c, phi_pt));

    // on a commutative boundary algebra every boundary state is compatible
    auto single = pair_groupoid({Rational(1), Rational(3)});
    auto bs = boundary_groupoid(single.g, single.c);
    GFunctional psi_s;
    psi_s[bs.new_id.at(single.g.units[0])] = QC(Rational(1));
    CHECK(kms_infty_compat(single.g, single.c, ground_from_boundary_state(bs, psi_s)));

    // restriction of a delta leaving the boundary is zero
    GElement off = delta(tie.arrow[2][0]);
    CHECK(restrict_to_boundary(b, off).empty());

    // off-diagonal pure state on the 2x2 boundary factor:
    // psi(e_ij) = 1/2 for all i, j in {0, 1}
    GFunctional psi_od;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            psi_od[b.new_id.at(tie.arrow[i][j])] = QC(Rational(1, 2));
    auto phi_od = ground_from_boundary_state(b, psi_od);
    CHECK(check_ground(tie.g, tie.c, phi_od).ok);
    // ... but it is not tracial on the boundary algebra: not KMS_infinity
    CHECK(!kms_infty_compat(tie.g, tie.c, phi_od));

    // diagonal psi stays compatible
    GFunctional psi_diag;
    psi_diag[b.new_id.at(tie.g.units[0])] = QC(Rational(1, 2));
    psi_diag[b.new_id.at(tie.g.units[1])] = QC(Rational(1, 2));
    CHECK(kms_infty_compat(tie.g, tie.c, ground_from_boundary_state(b, psi_diag)));
}

TEST_CASE("boundary states vs ground states: extreme points map injectively") {
    auto tie = pair_groupoid({Rational(1), Rational(1), Rational(5)});
    auto b = boundary_groupoid(tie.g, tie.c);
    // pure states of M_2 from vectors (a, c): psi(e_ij) = v_i conj(v_j)
    std::vector<std::pair<QC, QC>> vecs = {
        {QC(Rational(1)), QC(Rational(0))},
        {QC(Rational(0)), QC(Rational(1))},
        {QC(Rational(3, 5)), QC(Rational(4, 5))},
        {QC(Rational(3, 5)), QC(Rational(0), Rational(4, 5))},
    };
    std::vector<GFunctional> images;
    for (auto& [v0, v1] : vecs) {
        GFunctional psi;
        QC vs[2] = {v0, v1};
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                psi[b.new_id.at(tie.arrow[i][j])] = vs[i] * vs[j].conj();
        auto phi = ground_from_boundary_state(b, psi);
        CHECK(check_ground(tie.g, tie.c, phi).ok);
        for (auto& prev : images) CHECK(prev != phi);
        images.push_back(phi);
    }
}
