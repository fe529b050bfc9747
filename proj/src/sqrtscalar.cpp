#include "heckeq/sqrtscalar.hpp"

#include <cmath>

namespace heckeq {

void SqrtScalar::set(const Int& radicand, Rational coeff) {
    if (coeff == 0) return;
    auto [it, fresh] = terms_.emplace(radicand, coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

SqrtScalar SqrtScalar::sqrt_term(const Int& n, const Rational& q) {
    if (n <= 0) throw std::domain_error("SqrtScalar: radicand must be positive");
    auto [s, k] = squarefree_part(n);
    SqrtScalar out;
    out.set(s, q * Rational(k));
    return out;
}

bool SqrtScalar::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

Rational SqrtScalar::rational_value() const {
    if (terms_.empty()) return Rational(0);
    if (!is_rational()) throw std::domain_error("SqrtScalar: irrational value");
    return terms_.begin()->second;
}

SqrtScalar SqrtScalar::operator+(const SqrtScalar& o) const {
    SqrtScalar out = *this;
    out += o;
    return out;
}

SqrtScalar& SqrtScalar::operator+=(const SqrtScalar& o) {
    for (auto& [r, q] : o.terms_) set(r, q);
    return *this;
}

SqrtScalar SqrtScalar::operator-() const {
    SqrtScalar out = *this;
    for (auto& [r, q] : out.terms_) q = -q;
    return out;
}

SqrtScalar SqrtScalar::operator-(const SqrtScalar& o) const { return *this + (-o); }

SqrtScalar SqrtScalar::operator*(const SqrtScalar& o) const {
    SqrtScalar out;
    for (auto& [r1, q1] : terms_)
        for (auto& [r2, q2] : o.terms_) {
            // sqrt(r1) sqrt(r2) = k sqrt(s) with r1 r2 = s k^2
            auto [s, k] = squarefree_part(r1 * r2);
            out.set(s, q1 * q2 * Rational(k));
        }
    return out;
}

SqrtScalar SqrtScalar::scaled(const Rational& r) const {
    SqrtScalar out;
    if (r == 0) return out;
    for (auto& [rad, q] : terms_) out.set(rad, q * r);
    return out;
}

double SqrtScalar::to_double() const {
    double acc = 0.0;
    for (auto& [r, q] : terms_)
        acc += heckeq::to_double(q) * std::sqrt(r.convert_to<double>());
    return acc;
}

}  // namespace heckeq
