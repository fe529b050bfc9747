// The exact coefficient ring for Hecke elements: finite rational combinations
// of square roots of squarefree positive integers.  The mu_a normalization
// 1/sqrt(N_a) lives here, so the presentation relations can be checked to
// exact equality.

#pragma once

#include "heckeq/numutil.hpp"

namespace heckeq {

class SqrtScalar {
  public:
    SqrtScalar() = default;
    explicit SqrtScalar(Rational r) { set(1, std::move(r)); }

    // q * sqrt(n) for n > 0 (n need not be squarefree)
    static SqrtScalar sqrt_term(const Int& n, const Rational& q = Rational(1));
    static SqrtScalar zero() { return SqrtScalar(); }
    static SqrtScalar one() { return SqrtScalar(Rational(1)); }

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    Rational rational_value() const;  // throws if irrational

    SqrtScalar operator+(const SqrtScalar& o) const;
    SqrtScalar operator-(const SqrtScalar& o) const;
    SqrtScalar operator*(const SqrtScalar& o) const;
    SqrtScalar operator-() const;
    SqrtScalar scaled(const Rational& r) const;
    SqrtScalar conj() const { return *this; }  // real ring

    SqrtScalar& operator+=(const SqrtScalar& o);

    bool operator==(const SqrtScalar& o) const { return terms_ == o.terms_; }
    bool operator!=(const SqrtScalar& o) const { return !(*this == o); }

    double to_double() const;

    const std::map<Int, Rational>& terms() const { return terms_; }

  private:
    void set(const Int& radicand, Rational coeff);
    std::map<Int, Rational> terms_;  // squarefree radicand -> coefficient
};

}  // namespace heckeq
