// Exact cyclotomic arithmetic: elements of Q(zeta_m) as rational coefficient
// vectors modulo the m-th cyclotomic polynomial.  The Galois action is the
// exponent substitution zeta -> zeta^k for k coprime to m; values of
// different orders are compared after lifting to the lcm.

#pragma once

#include "heckeq/numutil.hpp"

#include <complex>

namespace heckeq {

class Cyclotomic {
  public:
    Cyclotomic() : order_(1), coeffs_{Rational(0)} {}
    explicit Cyclotomic(Rational r) : order_(1), coeffs_{std::move(r)} {}

    // zeta_m^k
    static Cyclotomic zeta_pow(long m, long k);
    // e^{2 pi i t} for rational t
    static Cyclotomic root_of_unity(const Rational& t);
    static Cyclotomic zero() { return Cyclotomic(); }
    static Cyclotomic one() { return Cyclotomic(Rational(1)); }

    long order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;  // throws if not rational

    Cyclotomic to_order(long target) const;  // order() must divide target

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    Cyclotomic scaled(const Rational& r) const;

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    // Galois automorphism zeta -> zeta^k, gcd(k, order) = 1
    Cyclotomic galois(long k) const;
    Cyclotomic conj() const;  // galois(-1)

    std::complex<double> to_complex() const;

  private:
    Cyclotomic(long m, std::vector<Rational> c) : order_(m), coeffs_(std::move(c)) {}
    void reduce_top(std::vector<Rational>& poly) const;

    long order_;
    std::vector<Rational> coeffs_;  // degree < phi(order); basis 1, z, z^2, ...
};

// the m-th cyclotomic polynomial (monic, integer coefficients, ascending)
const std::vector<Int>& cyclotomic_poly(long m);

long euler_phi(long m);

}  // namespace heckeq
