// Finite etale groupoids with multiplicative cocycles.
//
// Cocycles of number-theoretic origin have the form c = log N; we store the
// positive rational N(g) itself, so c(g) < 0 becomes N(g) < 1 and the KMS
// weight e^{-beta c(g)} = N(g)^{-beta} stays exact for integer beta.  All
// axioms are checked exhaustively; algebra elements and states carry exact
// complex-rational scalars.

#pragma once

#include "heckeq/numutil.hpp"

#include <complex>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace heckeq {

// exact complex rational
struct QC {
    Rational re{0}, im{0};

    QC() = default;
    QC(Rational r) : re(std::move(r)) {}
    QC(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    QC conj() const { return {re, -im}; }
    Rational abs2() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

    QC operator+(const QC& o) const { return {re + o.re, im + o.im}; }
    QC operator-(const QC& o) const { return {re - o.re, im - o.im}; }
    QC operator*(const QC& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    QC& operator+=(const QC& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    bool operator==(const QC& o) const { return re == o.re && im == o.im; }
    bool operator!=(const QC& o) const { return !(*this == o); }
};

struct FiniteGroupoid {
    int n = 0;                             // number of arrows, ids 0..n-1
    std::vector<int> range, source;        // arrow -> unit arrow id
    std::vector<int> inverse;              // involution
    std::vector<int> units;                // the unit arrows
    std::map<std::pair<int, int>, int> compose;  // (g, h) -> gh when s(g) = r(h)

    bool is_unit(int g) const;
    // composition with composability check
    int mul(int g, int h) const;
    bool composable(int g, int h) const { return source[g] == range[h]; }
    std::vector<int> isotropy(int x) const;  // arrows with r = s = x
};

// cocycle in multiplicative form: value(g) = N(g) = e^{c(g)}
struct Cocycle {
    std::vector<Rational> value;

    bool negative(int g) const { return value[g] < 1; }  // c(g) < 0
    bool zero(int g) const { return value[g] == 1; }
};

// every violated axiom with a witness; empty means valid
std::vector<std::string> validate(const FiniteGroupoid& g, const Cocycle& c);

// algebra element with exact scalars: finitely supported arrow -> QC
using GElement = std::map<int, QC>;

GElement delta(int g);
GElement g_add(const GElement& a, const GElement& b);
GElement g_scale(const QC& s, const GElement& a);
GElement convolve(const FiniteGroupoid& g, const GElement& f1, const GElement& f2);
GElement involution(const FiniteGroupoid& g, const GElement& f);

// sigma_t in floating point (phases N^{it})
std::map<int, std::complex<double>> apply_dynamics(const FiniteGroupoid& g, const Cocycle& c,
                                                   const GElement& f, double t);
// sigma_{i beta}: multiplies by N(g)^{-beta}; exact, throws std::domain_error
// if some weight N^{-beta} is irrational
GElement apply_analytic(const FiniteGroupoid& g, const Cocycle& c, const GElement& f,
                        const Rational& beta);

struct GStateSpec {
    std::map<int, Rational> measure;            // unit arrow -> mass
    std::map<int, std::map<int, QC>> traces;    // unit -> (isotropy arrow -> value); unit itself -> 1 implied
};

// linear functional from (measure, isotropy traces); rejects non-normalized
// measures
QC state_eval(const FiniteGroupoid& g, const GStateSpec& s, const GElement& f);

// full functional on the algebra, given by its values on delta functions
using GFunctional = std::map<int, QC>;

QC functional_eval(const GFunctional& phi, const GElement& f);
GFunctional functional_from_state(const FiniteGroupoid& g, const GStateSpec& s);

enum class Kms0Convention { require_invariance, plain };

// max |mu(r(g)) - N(g)^{-beta} mu(s(g))| over arrows
double check_quasi_invariance(const FiniteGroupoid& g, const GStateSpec& s, const Cocycle& c,
                              const Rational& beta);

// max violation of phi(d_g * d_h) = N(g)^{-beta} phi(d_h * d_g) over arrow
// pairs; exact zero when scalars and weights are exact.  At beta = 0 the
// convention flag adds the sigma-invariance requirement.
double check_KMS(const FiniteGroupoid& g, const GStateSpec& s, const Cocycle& c,
                 const Rational& beta,
                 Kms0Convention conv = Kms0Convention::require_invariance);

// solve the quasi-invariance linear system exactly
struct MeasureSolution {
    enum class Kind { none, unique, infinite } kind = Kind::none;
    std::map<int, Rational> measure;  // meaningful when unique
};
MeasureSolution kms_measure_solutions(const FiniteGroupoid& g, const Cocycle& c,
                                      const Rational& beta);

// boundary set Z = {x : N <= 1 on G^x}; checks the equivalent description
// via G_x as a cross-check
std::vector<int> boundary_set(const FiniteGroupoid& g, const Cocycle& c);

struct BoundaryGroupoid {
    FiniteGroupoid gz;
    Cocycle cz;
    std::vector<int> arrow_of;          // new arrow id -> old arrow id
    std::map<int, int> new_id;          // old arrow id -> new arrow id
};

// reduction of G to the boundary set, computed both from G and from the
// kernel groupoid c^{-1}(0) and asserted equal; throws std::domain_error
// when Z is empty (no ground states exist in that case)
BoundaryGroupoid boundary_groupoid(const FiniteGroupoid& g, const Cocycle& c);

struct GroundCheck {
    bool ok = true;
    std::vector<std::pair<int, int>> witnesses;  // offending Gram pairs (g, h)
};

// finite Gram criterion: phi(d_{g^{-1} h}) = 0 for all pairs with
// N(g) < 1, N(h) < 1, r(g) = r(h)
GroundCheck check_ground(const FiniteGroupoid& g, const Cocycle& c, const GFunctional& phi);

// extension by zero of a boundary functional (indexed by boundary arrow ids)
GFunctional ground_from_boundary_state(const BoundaryGroupoid& b, const GFunctional& psi);
GElement restrict_to_boundary(const BoundaryGroupoid& b, const GElement& f);

// necessary condition for KMS_infinity: the induced boundary state is tracial
bool kms_infty_compat(const FiniteGroupoid& g, const Cocycle& c, const GFunctional& phi);

// --- builders -------------------------------------------------------------

// pair groupoid on n points with multiplicative potential weights w (size n):
// arrow (i <- j) has cocycle value w_i / w_j
struct PairGroupoid {
    FiniteGroupoid g;
    Cocycle c;
    std::vector<std::vector<int>> arrow;  // arrow[i][j] = id of (i <- j)
};
PairGroupoid pair_groupoid(const std::vector<Rational>& weights);

// Z/n as a one-unit groupoid with trivial cocycle
struct GroupGroupoid {
    FiniteGroupoid g;
    Cocycle c;
    std::vector<int> elem;  // elem[k] = arrow id of k
};
GroupGroupoid cyclic_groupoid(int n);

// Gibbs state on a pair groupoid: mu(i) proportional to w_i^{-beta}; exact,
// throws if the weights are not exact at this beta
GStateSpec gibbs_state(const PairGroupoid& pg, const Rational& beta);

}  // namespace heckeq
