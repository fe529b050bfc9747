#include "heckeq/cyclotomic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

namespace heckeq {

namespace {

// exact division of integer polynomials (divisor monic), ascending coeffs
std::vector<Int> poly_div_exact(std::vector<Int> num, const std::vector<Int>& den) {
    if (den.empty() || den.back() != 1) throw std::logic_error("poly_div_exact: non-monic divisor");
    std::vector<Int> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, Int(0));
    for (size_t i = num.size(); i-- >= den.size();) {
        Int f = num[i];
        if (f == 0) {
            if (i == 0) break;
            continue;
        }
        size_t shift = i - (den.size() - 1);
        q[shift] = f;
        for (size_t j = 0; j < den.size(); ++j) num[shift + j] -= f * den[j];
        if (i == 0) break;
    }
    for (auto& v : num)
        if (v != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
    return q;
}

std::map<long, std::vector<Int>> phi_cache;
std::mutex phi_mutex;

}  // namespace

long euler_phi(long m) {
    long out = m;
    for (auto& [p, e] : factorize(Int(m))) {
        long pl = p.convert_to<long>();
        (void)e;
        out -= out / pl;
    }
    return out;
}

const std::vector<Int>& cyclotomic_poly(long m) {
    std::lock_guard<std::mutex> lock(phi_mutex);
    auto it = phi_cache.find(m);
    if (it != phi_cache.end()) return it->second;
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, computed recursively
    // without re-locking: fill ancestors first
    std::function<const std::vector<Int>&(long)> get = [&](long k) -> const std::vector<Int>& {
        auto found = phi_cache.find(k);
        if (found != phi_cache.end()) return found->second;
        std::vector<Int> num(k + 1, Int(0));
        num[0] = -1;
        num[k] = 1;
        for (long d = 1; d < k; ++d) {
            if (k % d != 0) continue;
            num = poly_div_exact(std::move(num), get(d));
        }
        return phi_cache.emplace(k, std::move(num)).first->second;
    };
    return get(m);
}

void Cyclotomic::reduce_top(std::vector<Rational>& poly) const {
    const auto& phi = cyclotomic_poly(order_);
    size_t deg = phi.size() - 1;
    for (size_t i = poly.size(); i-- > deg;) {
        Rational f = poly[i];
        if (f == 0) continue;
        size_t shift = i - deg;
        for (size_t j = 0; j < phi.size(); ++j) poly[shift + j] -= f * Rational(phi[j]);
    }
    poly.resize(deg);
}

Cyclotomic Cyclotomic::zeta_pow(long m, long k) {
    if (m < 1) throw std::domain_error("zeta_pow: order must be positive");
    k %= m;
    if (k < 0) k += m;
    Cyclotomic out;
    out.order_ = m;
    std::vector<Rational> poly(std::max<long>(k + 1, 1), Rational(0));
    poly[k] = 1;
    out.reduce_top(poly);
    out.coeffs_ = std::move(poly);
    return out;
}

Cyclotomic Cyclotomic::root_of_unity(const Rational& t) {
    Rational f = frac_part(t);
    long q = den(f).convert_to<long>();
    long p = num(f).convert_to<long>();
    return zeta_pow(q, p);
}

bool Cyclotomic::is_zero() const {
    for (auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool Cyclotomic::is_rational() const {
    for (size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw std::domain_error("Cyclotomic: not a rational value");
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

Cyclotomic Cyclotomic::to_order(long target) const {
    if (target % order_ != 0) throw std::domain_error("Cyclotomic::to_order: order must divide");
    if (target == order_) return *this;
    long stretch = target / order_;
    Cyclotomic out;
    out.order_ = target;
    std::vector<Rational> poly(euler_phi(order_) * stretch + 1, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) poly[i * stretch] += coeffs_[i];
    out.reduce_top(poly);
    out.coeffs_ = std::move(poly);
    return out;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    long m = std::lcm(order_, o.order_);
    Cyclotomic a = to_order(m), b = o.to_order(m);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) a.coeffs_[i] += b.coeffs_[i];
    return a;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
}

Cyclotomic Cyclotomic::scaled(const Rational& r) const {
    Cyclotomic out = *this;
    for (auto& c : out.coeffs_) c *= r;
    return out;
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    long m = std::lcm(order_, o.order_);
    Cyclotomic a = to_order(m), b = o.to_order(m);
    std::vector<Rational> prod(a.coeffs_.size() + b.coeffs_.size(), Rational(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j)
            if (b.coeffs_[j] != 0) prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    a.reduce_top(prod);
    a.coeffs_ = std::move(prod);
    return a;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    long m = std::lcm(order_, o.order_);
    return to_order(m).coeffs_ == o.to_order(m).coeffs_;
}

Cyclotomic Cyclotomic::galois(long k) const {
    long m = order_;
    k %= m;
    if (k < 0) k += m;
    if (std::gcd(k, m) != 1) throw std::domain_error("Cyclotomic::galois: exponent not coprime");
    Cyclotomic out;
    out.order_ = m;
    std::vector<Rational> poly(m, Rational(0));
    for (size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) poly[(i * k) % m] += coeffs_[i];
    out.reduce_top(poly);
    out.coeffs_ = std::move(poly);
    return out;
}

Cyclotomic Cyclotomic::conj() const { return order_ == 1 ? *this : galois(order_ - 1); }

std::complex<double> Cyclotomic::to_complex() const {
    std::complex<double> out(0.0, 0.0);
    const double tau = 6.283185307179586476925286766559;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        out += to_double(coeffs_[i]) *
               std::polar(1.0, tau * static_cast<double>(i) / static_cast<double>(order_));
    }
    return out;
}

}  // namespace heckeq
