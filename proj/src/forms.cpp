#include "heckeq/forms.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace heckeq {

namespace {

void check_disc(const Bqf& f, const Int& D) {
    if (f.disc() != D) throw std::invalid_argument("bqf: discriminant mismatch");
}

// r = unique residue of x mod 2m in the window used by reduction/rho.
// For m with m^2 > D (or D < 0): r in (-|m|, |m|]; otherwise the
// square-root window sqrt(D) - 2|m| < r < sqrt(D).
Int rho_residue(const Int& x, const Int& m, const Int& D) {
    Int two_m = 2 * int_abs(m);
    Int r = mod_pos(x, two_m);
    if (D < 0 || m * m > D) {
        if (r > int_abs(m)) r -= two_m;
        return r;
    }
    Int s = isqrt_floor(D);  // floor(sqrt D), D not a square
    // want the unique r == x mod 2|m| with  s+1 - 2|m| <= r <= s
    while (r > s) r -= two_m;
    while (r < s + 1 - two_m) r += two_m;
    return r;
}

}  // namespace

bool bqf_is_reduced(const Bqf& f, const Int& D) {
    if (D < 0) {
        if (f.a <= 0) return false;
        Int ab = int_abs(f.b);
        if (!(ab <= f.a && f.a <= f.c)) return false;
        if ((ab == f.a || f.a == f.c) && f.b < 0) return false;
        return true;
    }
    // indefinite: 0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b
    if (f.b <= 0) return false;
    if (f.b * f.b >= D) return false;
    Int twoa = 2 * int_abs(f.a);
    if (D >= (twoa + f.b) * (twoa + f.b)) return false;
    if (twoa > f.b && (twoa - f.b) * (twoa - f.b) >= D) return false;
    return true;
}

Bqf bqf_rho(const Bqf& f, const Int& D) {
    check_disc(f, D);
    if (f.c == 0) throw std::domain_error("bqf_rho: c = 0 (square discriminant?)");
    Int r = rho_residue(-f.b, f.c, D);
    Bqf g;
    g.a = f.c;
    g.b = r;
    g.c = (r * r - D) / (4 * f.c);
    return g;
}

Bqf bqf_reduce(Bqf f, const Int& D) {
    check_disc(f, D);
    if (D < 0) {
        if (f.a <= 0) throw std::domain_error("bqf_reduce: nonpositive leading coefficient");
        for (int guard = 0; guard < 100000; ++guard) {
            Int r = rho_residue(f.b, f.a, D);
            f.b = r;
            f.c = (r * r - D) / (4 * f.a);
            if (f.a <= f.c) break;
            std::swap(f.a, f.c);
            f.b = -f.b;
        }
        if ((int_abs(f.b) == f.a || f.a == f.c) && f.b < 0) f.b = -f.b;
        if (!bqf_is_reduced(f, D)) throw std::logic_error("bqf_reduce: reduction failed (D<0)");
        return f;
    }
    for (int guard = 0; guard < 100000; ++guard) {
        if (bqf_is_reduced(f, D)) return f;
        f = bqf_rho(f, D);
    }
    throw std::logic_error("bqf_reduce: reduction failed (D>0)");
}

std::vector<Bqf> bqf_cycle(const Bqf& f, const Int& D) {
    if (!bqf_is_reduced(f, D)) throw std::invalid_argument("bqf_cycle: form not reduced");
    if (D < 0) return {f};
    std::vector<Bqf> cyc{f};
    Bqf cur = bqf_rho(f, D);
    int guard = 0;
    while (!(cur == f)) {
        cyc.push_back(cur);
        cur = bqf_rho(cur, D);
        if (++guard > 100000) throw std::logic_error("bqf_cycle: runaway");
    }
    return cyc;
}

std::vector<Bqf> enumerate_reduced_forms(const Int& D) {
    std::vector<Bqf> out;
    if (D < 0) {
        Int bmax = isqrt_floor(int_abs(D) / 3);
        for (Int b = -bmax; b <= bmax; ++b) {
            if (mod_pos(b, 2) != mod_pos(D, 2)) continue;
            Int ac4 = b * b - D;
            if (ac4 % 4 != 0) continue;
            Int ac = ac4 / 4;
            for (Int a = (b == 0 ? Int(1) : int_abs(b)); a * a <= ac; ++a) {
                if (a == 0 || ac % a != 0) continue;
                Bqf f{a, b, ac / a};
                if (bqf_is_reduced(f, D)) out.push_back(f);
            }
        }
    } else {
        Int s = isqrt_floor(D);
        for (Int b = 1; b <= s; ++b) {
            if (mod_pos(b, 2) != mod_pos(D, 2)) continue;
            Int n4 = D - b * b;  // = -4ac > 0
            if (n4 == 0 || n4 % 4 != 0) continue;
            Int n = n4 / 4;  // = -ac = |a||c|
            for (Int aa = 1; aa * aa <= n; ++aa) {
                if (n % aa != 0) continue;
                for (const Int am : {aa, Int(n / aa)}) {
                    for (int sign : {1, -1}) {
                        Bqf f{sign * am, b, -n / (sign * am)};
                        if (bqf_is_reduced(f, D)) out.push_back(f);
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Bqf principal_form(const Int& D) {
    Int b0 = mod_pos(D, 2);
    return {1, b0, (b0 * b0 - D) / 4};
}

Bqf bqf_compose(const Bqf& f1in, const Bqf& f2in, const Int& D) {
    check_disc(f1in, D);
    check_disc(f2in, D);
    Bqf f1 = f1in, f2 = f2in;
    // replace f2 by a properly equivalent form whose leading coefficient is
    // nonzero and coprime to a1: search proper representations f2(x,y), gcd(x,y)=1
    auto represent_coprime = [&](const Bqf& g, const Int& to) -> Bqf {
        for (Int box = 1; box <= 64; ++box) {
            for (Int x = -box; x <= box; ++x)
                for (Int y = -box; y <= box; ++y) {
                    if (std::max(int_abs(x), int_abs(y)) != box && box > 1) continue;
                    if (int_gcd(x, y) != 1) continue;
                    Int m = g.a * x * x + g.b * x * y + g.c * y * y;
                    if (m == 0 || int_gcd(m, to) != 1) continue;
                    // complete (x,y) to the determinant-1 matrix (x u; y v):
                    // xgcd gives s*x + t*y = 1, take u = -t, v = s
                    auto [gg, s_, t_] = xgcd(x, y);
                    (void)gg;
                    Int u = -t_, vv = s_;
                    Int B = 2 * g.a * x * u + g.b * (x * vv + u * y) + 2 * g.c * y * vv;
                    Int C = g.a * u * u + g.b * u * vv + g.c * vv * vv;
                    Bqf h{m, B, C};
                    check_disc(h, D);
                    return h;
                }
        }
        throw std::logic_error("bqf_compose: no coprime representation found");
    };
    if (f1.a == 0 || f2.a == 0 || int_gcd(f1.a, f2.a) != 1) f2 = represent_coprime(f2, f1.a == 0 ? Int(1) : f1.a);
    if (f1.a == 0) f1 = represent_coprime(f1, f2.a);
    if (int_gcd(f1.a, f2.a) != 1) f2 = represent_coprime(f2, f1.a);
    // concordant middle coefficient: b == b1 (mod 2a1), b == b2 (mod 2a2)
    Int a1 = f1.a, a2 = f2.a;
    if ((f1.b - f2.b) % 2 != 0) throw std::logic_error("bqf_compose: parity mismatch");
    Int k = mod_pos((f2.b - f1.b) / 2 * inv_mod(mod_pos(a1, int_abs(a2)), int_abs(a2)),
                    int_abs(a2));
    Int b = f1.b + 2 * a1 * k;
    Int A = a1 * a2;
    Int num4 = b * b - D;
    if (num4 % (4 * A) != 0) throw std::logic_error("bqf_compose: concordance failure");
    Bqf comp{A, b, num4 / (4 * A)};
    return bqf_reduce(comp, D);
}

int NarrowClassGroup::inverse(int i) const {
    for (int j = 0; j < static_cast<int>(reps.size()); ++j)
        if (mult[i][j] == 0) return j;
    throw std::logic_error("NarrowClassGroup: no inverse");
}

int NarrowClassGroup::element_order(int i) const {
    int ord = 1, cur = i;
    while (cur != 0) {
        cur = mult[cur][i];
        ++ord;
        if (ord > static_cast<int>(reps.size()) + 1)
            throw std::logic_error("NarrowClassGroup: order overflow");
    }
    return ord;
}

std::string NarrowClassGroup::structure() const {
    long n = reps.size();
    if (n == 1) return "1";
    // abelian invariants per prime from order statistics:
    // #elements with order dividing p^k equals p^{sum_i min(lambda_i, k)}
    std::map<long, std::vector<long>> parts;  // prime -> partition lambda
    for (auto& [p, e] : factorize(Int(n))) {
        long pl = p.convert_to<long>();
        std::vector<long> cnt(e + 1, 0);
        for (int i = 0; i < n; ++i) {
            long o = element_order(i);
            // p-part of the element order
            long pk = 1;
            int k = 0;
            while (o % pl == 0) {
                o /= pl;
                pk *= pl;
                ++k;
            }
            for (int j = k; j <= static_cast<int>(e); ++j) ++cnt[j];
        }
        // cnt[k] = #elements whose p-part has order dividing p^k = p^{sum min(lambda_i,k)}
        std::vector<long> sums(e + 1, 0);
        for (unsigned k = 1; k <= e; ++k) {
            long s = 0;
            long c = cnt[k];
            while (c > 1) {
                c /= pl;
                ++s;
            }
            sums[k] = s;
        }
        // lambda recovered from successive differences
        std::vector<long> lambda;
        for (unsigned k = 1; k <= e; ++k) {
            long mink = sums[k] - sums[k - 1];  // number of lambda_i >= k
            if (k == 1)
                lambda.assign(mink, 1);
            else
                for (long i = 0; i < mink; ++i) lambda[i] = k;
        }
        parts[pl] = lambda;
    }
    // combine into invariant factors (largest first)
    size_t maxlen = 0;
    for (auto& [p, lam] : parts) maxlen = std::max(maxlen, lam.size());
    std::vector<Int> inv(maxlen, 1);
    for (auto& [p, lam] : parts)
        for (size_t i = 0; i < lam.size(); ++i) inv[i] *= int_pow(Int(p), lam[i]);
    std::ostringstream os;
    for (size_t i = inv.size(); i-- > 0;) {
        os << "Z/" << inv[i];
        if (i) os << " x ";
    }
    return os.str();
}

NarrowClassGroup narrow_class_group(const FieldSpec& f) {
    NarrowClassGroup G;
    G.field = f;
    if (f.is_rational()) {
        G.h_plus = 1;
        G.reps = {principal_form(1)};
        G.mult = {{0}};
        return G;
    }
    const Int D = f.disc;
    auto reduced = enumerate_reduced_forms(D);
    // group reduced forms into classes
    std::vector<std::vector<Bqf>> classes;
    std::set<Bqf> placed;
    for (auto& r : reduced) {
        if (placed.count(r)) continue;
        auto cyc = bqf_cycle(r, D);
        for (auto& g : cyc) placed.insert(g);
        std::sort(cyc.begin(), cyc.end());
        classes.push_back(cyc);
    }
    // canonical rep per class = lex-min member; identity class first
    Bqf id = bqf_reduce(principal_form(D), D);
    std::sort(classes.begin(), classes.end(),
              [](const std::vector<Bqf>& a, const std::vector<Bqf>& b) {
                  return a.front() < b.front();
              });
    int id_pos = -1;
    for (size_t i = 0; i < classes.size(); ++i)
        for (auto& g : classes[i])
            if (g == id) id_pos = static_cast<int>(i);
    if (id_pos < 0) throw std::logic_error("narrow_class_group: principal class missing");
    std::swap(classes[0], classes[id_pos]);
    G.h_plus = classes.size();
    for (size_t i = 0; i < classes.size(); ++i) {
        G.reps.push_back(classes[i].front());
        for (auto& g : classes[i]) G.form_index[g] = static_cast<int>(i);
    }
    // multiplication table by composition of representatives
    int h = static_cast<int>(classes.size());
    G.mult.assign(h, std::vector<int>(h, -1));
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < h; ++j) {
            Bqf p = bqf_compose(G.reps[i], G.reps[j], D);
            auto it = G.form_index.find(p);
            if (it == G.form_index.end())
                throw std::logic_error("narrow_class_group: product not in table");
            G.mult[i][j] = it->second;
        }
    return G;
}

Bqf form_of_ideal(const Ideal& I, const FieldSpec& f) {
    if (f.is_rational()) return principal_form(1);
    // strip rational content (= c in normal form)
    Int a = I.a / I.c, b = I.b / I.c;
    Int tr = f.omega_trace(), nm = f.omega_norm();
    Int nbeta = b * b + b * tr + nm;  // N(b + omega)
    if (nbeta % a != 0) throw std::logic_error("form_of_ideal: norm division failure");
    // oriented basis gives (A, -B, C)
    Bqf g{a, -(2 * b + tr), nbeta / a};
    check_disc(g, f.disc);
    return bqf_reduce(g, f.disc);
}

int class_of(const Ideal& I, const FieldSpec& f, const NarrowClassGroup& G) {
    if (f.is_rational()) return 0;
    Bqf g = form_of_ideal(I, f);
    auto it = G.form_index.find(g);
    if (it == G.form_index.end()) throw std::logic_error("class_of: form not found");
    return it->second;
}

int class_of(const FractionalIdeal& I, const FieldSpec& f, const NarrowClassGroup& G) {
    // (dn) is narrowly principal, so the class is that of the numerator
    return class_of(I.num, f, G);
}

}  // namespace heckeq
