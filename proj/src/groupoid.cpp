#include "heckeq/groupoid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace heckeq {

bool FiniteGroupoid::is_unit(int g) const {
    return std::find(units.begin(), units.end(), g) != units.end();
}

int FiniteGroupoid::mul(int g, int h) const {
    auto it = compose.find({g, h});
    if (it == compose.end()) throw std::domain_error("FiniteGroupoid::mul: not composable");
    return it->second;
}

std::vector<int> FiniteGroupoid::isotropy(int x) const {
    std::vector<int> out;
    for (int g = 0; g < n; ++g)
        if (range[g] == x && source[g] == x) out.push_back(g);
    return out;
}

std::vector<std::string> validate(const FiniteGroupoid& g, const Cocycle& c) {
    std::vector<std::string> bad;
    auto report = [&](const std::string& s) { bad.push_back(s); };
    std::ostringstream os;

    if (static_cast<int>(g.range.size()) != g.n || static_cast<int>(g.source.size()) != g.n ||
        static_cast<int>(g.inverse.size()) != g.n) {
        report("arrow maps have wrong size");
        return bad;
    }
    std::set<int> unitset(g.units.begin(), g.units.end());
    for (int u : g.units) {
        if (g.range[u] != u || g.source[u] != u) {
            os.str("");
            os << "unit " << u << " not fixed by range/source";
            report(os.str());
        }
    }
    for (int a = 0; a < g.n; ++a) {
        if (!unitset.count(g.range[a]) || !unitset.count(g.source[a])) {
            os.str("");
            os << "arrow " << a << " has non-unit range or source";
            report(os.str());
        }
        int ia = g.inverse[a];
        if (ia < 0 || ia >= g.n || g.inverse[ia] != a) {
            os.str("");
            os << "inverse not involutive at arrow " << a;
            report(os.str());
        } else {
            if (g.range[ia] != g.source[a] || g.source[ia] != g.range[a]) {
                os.str("");
                os << "inverse of arrow " << a << " swaps range/source incorrectly";
                report(os.str());
            }
        }
    }
    // composition domain and axioms
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            bool should = g.source[a] == g.range[b];
            auto it = g.compose.find({a, b});
            if (should && it == g.compose.end()) {
                os.str("");
                os << "missing composition (" << a << "," << b << ")";
                report(os.str());
            }
            if (!should && it != g.compose.end()) {
                os.str("");
                os << "composition defined on non-composable (" << a << "," << b << ")";
                report(os.str());
            }
            if (should && it != g.compose.end()) {
                int ab = it->second;
                if (g.range[ab] != g.range[a] || g.source[ab] != g.source[b]) {
                    os.str("");
                    os << "range/source of product (" << a << "," << b << ")";
                    report(os.str());
                }
            }
        }
    if (!bad.empty()) return bad;  // later checks assume a sane table
    for (int a = 0; a < g.n; ++a) {
        if (g.mul(a, g.inverse[a]) != g.range[a]) {
            os.str("");
            os << "g g^{-1} != unit at r(g) for arrow " << a;
            report(os.str());
        }
        if (g.mul(g.inverse[a], a) != g.source[a]) {
            os.str("");
            os << "g^{-1} g != unit at s(g) for arrow " << a;
            report(os.str());
        }
        if (g.mul(g.range[a], a) != a || g.mul(a, g.source[a]) != a) {
            os.str("");
            os << "unit law fails at arrow " << a;
            report(os.str());
        }
    }
    for (int a = 0; a < g.n; ++a)
        for (int b = 0; b < g.n; ++b) {
            if (g.source[a] != g.range[b]) continue;
            for (int d = 0; d < g.n; ++d) {
                if (g.source[b] != g.range[d]) continue;
                if (g.mul(g.mul(a, b), d) != g.mul(a, g.mul(b, d))) {
                    os.str("");
                    os << "associativity fails at (" << a << "," << b << "," << d << ")";
                    report(os.str());
                }
            }
        }
    // cocycle axioms (multiplicative)
    if (static_cast<int>(c.value.size()) != g.n) {
        report("cocycle has wrong size");
        return bad;
    }
    for (int a = 0; a < g.n; ++a) {
        if (c.value[a] <= 0) {
            os.str("");
            os << "cocycle not positive at arrow " << a;
            report(os.str());
        }
    }
    for (int u : g.units)
        if (c.value[u] != 1) {
            os.str("");
            os << "cocycle nonzero on unit " << u;
            report(os.str());
        }
    for (int a = 0; a < g.n; ++a) {
        if (c.value[a] * c.value[g.inverse[a]] != 1) {
            os.str("");
            os << "cocycle not antisymmetric at arrow " << a;
            report(os.str());
        }
        for (int b = 0; b < g.n; ++b) {
            if (g.source[a] != g.range[b]) continue;
            if (c.value[g.mul(a, b)] != c.value[a] * c.value[b]) {
                os.str("");
                os << "cocycle not multiplicative at (" << a << "," << b << ")";
                report(os.str());
            }
        }
    }
    return bad;
}

GElement delta(int g) { return {{g, QC(Rational(1))}}; }

GElement g_add(const GElement& a, const GElement& b) {
    GElement out = a;
    for (auto& [k, v] : b) {
        out[k] += v;
        if (out[k].is_zero()) out.erase(k);
    }
    return out;
}

GElement g_scale(const QC& s, const GElement& a) {
    GElement out;
    if (s.is_zero()) return out;
    for (auto& [k, v] : a) out[k] = s * v;
    return out;
}

GElement convolve(const FiniteGroupoid& g, const GElement& f1, const GElement& f2) {
    GElement out;
    for (auto& [h, v1] : f1)
        for (auto& [k, v2] : f2) {
            if (!g.composable(h, k)) continue;
            int hk = g.mul(h, k);
            out[hk] += v1 * v2;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

GElement involution(const FiniteGroupoid& g, const GElement& f) {
    GElement out;
    for (auto& [k, v] : f) out[g.inverse[k]] = v.conj();
    return out;
}

std::map<int, std::complex<double>> apply_dynamics(const FiniteGroupoid& g, const Cocycle& c,
                                                   const GElement& f, double t) {
    (void)g;
    std::map<int, std::complex<double>> out;
    for (auto& [k, v] : f) {
        double logn = std::log(to_double(c.value[k]));
        out[k] = v.to_complex() * std::polar(1.0, t * logn);
    }
    return out;
}

GElement apply_analytic(const FiniteGroupoid& g, const Cocycle& c, const GElement& f,
                        const Rational& beta) {
    (void)g;
    GElement out;
    for (auto& [k, v] : f) {
        auto w = exact_pow(c.value[k], -beta);
        if (!w) throw std::domain_error("apply_analytic: weight N^{-beta} not rational");
        out[k] = QC(*w) * v;
    }
    return out;
}

QC state_eval(const FiniteGroupoid& g, const GStateSpec& s, const GElement& f) {
    Rational total(0);
    for (auto& [u, m] : s.measure) {
        if (m < 0) throw std::invalid_argument("state_eval: negative measure");
        total += m;
    }
    if (total != 1) throw std::invalid_argument("state_eval: measure not normalized");
    QC out;
    for (auto& [k, v] : f) {
        if (g.range[k] != g.source[k]) continue;  // only isotropy contributes
        int x = g.range[k];
        auto mit = s.measure.find(x);
        if (mit == s.measure.end() || mit->second == 0) continue;
        QC tr;
        if (k == x) {
            tr = QC(Rational(1));
        } else {
            auto tit = s.traces.find(x);
            if (tit == s.traces.end()) continue;
            auto vit = tit->second.find(k);
            if (vit == tit->second.end()) continue;
            tr = vit->second;
        }
        out += QC(mit->second) * tr * v;
    }
    return out;
}

QC functional_eval(const GFunctional& phi, const GElement& f) {
    QC out;
    for (auto& [k, v] : f) {
        auto it = phi.find(k);
        if (it != phi.end()) out += it->second * v;
    }
    return out;
}

GFunctional functional_from_state(const FiniteGroupoid& g, const GStateSpec& s) {
    GFunctional phi;
    for (int a = 0; a < g.n; ++a) {
        QC v = state_eval(g, s, delta(a));
        if (!v.is_zero()) phi[a] = v;
    }
    return phi;
}

namespace {

// N^{-beta} as QC if exact, otherwise nullopt (callers fall back to doubles)
std::optional<Rational> weight_exact(const Cocycle& c, int g, const Rational& beta) {
    return exact_pow(c.value[g], -beta);
}

double qc_abs(const QC& v) { return std::sqrt(to_double(v.abs2())); }

}  // namespace

double check_quasi_invariance(const FiniteGroupoid& g, const GStateSpec& s, const Cocycle& c,
                              const Rational& beta) {
    double worst = 0.0;
    for (int a = 0; a < g.n; ++a) {
        auto mr = s.measure.count(g.range[a]) ? s.measure.at(g.range[a]) : Rational(0);
        auto ms = s.measure.count(g.source[a]) ? s.measure.at(g.source[a]) : Rational(0);
        auto w = weight_exact(c, a, beta);
        double viol;
        if (w)
            viol = std::abs(to_double(mr - *w * ms));
        else
            viol = std::abs(to_double(mr) -
                            std::pow(to_double(c.value[a]), -to_double(beta)) * to_double(ms));
        worst = std::max(worst, viol);
    }
    return worst;
}

double check_KMS(const FiniteGroupoid& g, const GStateSpec& s, const Cocycle& c,
                 const Rational& beta, Kms0Convention conv) {
    double worst = 0.0;
    auto phi = [&](int arrow_g, int arrow_h) -> QC {
        if (!g.composable(arrow_g, arrow_h)) return QC();
        return state_eval(g, s, delta(g.mul(arrow_g, arrow_h)));
    };
    for (int a = 0; a < g.n; ++a) {
        auto w = weight_exact(c, a, beta);
        for (int b = 0; b < g.n; ++b) {
            QC lhs = phi(a, b);
            QC rhs_raw = phi(b, a);
            if (w) {
                QC diff = lhs - QC(*w) * rhs_raw;
                if (!diff.is_zero()) worst = std::max(worst, qc_abs(diff));
            } else {
                double wd = std::pow(to_double(c.value[a]), -to_double(beta));
                std::complex<double> diff = lhs.to_complex() - wd * rhs_raw.to_complex();
                worst = std::max(worst, std::abs(diff));
            }
        }
    }
    if (beta == 0 && conv == Kms0Convention::require_invariance) {
        for (int a = 0; a < g.n; ++a) {
            if (g.range[a] != g.source[a] || c.zero(a)) continue;
            worst = std::max(worst, qc_abs(state_eval(g, s, delta(a))));
        }
    }
    return worst;
}

MeasureSolution kms_measure_solutions(const FiniteGroupoid& g, const Cocycle& c,
                                      const Rational& beta) {
    // unknowns: mu_x for each unit; rows: mu_{r(a)} - N(a)^{-beta} mu_{s(a)} = 0,
    // plus sum mu_x = 1
    std::vector<int> units = g.units;
    std::map<int, int> col;
    for (size_t i = 0; i < units.size(); ++i) col[units[i]] = static_cast<int>(i);
    size_t m = units.size();
    std::vector<std::vector<Rational>> rows;  // m coefficients + rhs
    for (int a = 0; a < g.n; ++a) {
        auto w = weight_exact(c, a, beta);
        if (!w) throw std::domain_error("kms_measure_solutions: weights not exact at this beta");
        std::vector<Rational> row(m + 1, Rational(0));
        row[col[g.range[a]]] += 1;
        row[col[g.source[a]]] -= *w;
        rows.push_back(row);
    }
    std::vector<Rational> norm(m + 1, Rational(0));
    for (size_t i = 0; i < m; ++i) norm[i] = 1;
    norm[m] = 1;
    rows.push_back(norm);

    // Gaussian elimination
    size_t rank = 0;
    std::vector<int> pivot_col;
    for (size_t cidx = 0; cidx < m && rank < rows.size(); ++cidx) {
        size_t sel = rank;
        while (sel < rows.size() && rows[sel][cidx] == 0) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        Rational p = rows[rank][cidx];
        for (auto& v : rows[rank]) v /= p;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][cidx] == 0) continue;
            Rational f = rows[r][cidx];
            for (size_t k = 0; k <= m; ++k) rows[r][k] -= f * rows[rank][k];
        }
        pivot_col.push_back(static_cast<int>(cidx));
        ++rank;
    }
    MeasureSolution out;
    for (size_t r = rank; r < rows.size(); ++r)
        if (rows[r][m] != 0) {
            out.kind = MeasureSolution::Kind::none;
            return out;
        }
    if (rank < m) {
        out.kind = MeasureSolution::Kind::infinite;
        return out;
    }
    out.kind = MeasureSolution::Kind::unique;
    for (size_t i = 0; i < m; ++i) out.measure[units[pivot_col[i]]] = rows[i][m];
    return out;
}

std::vector<int> boundary_set(const FiniteGroupoid& g, const Cocycle& c) {
    std::vector<int> z;
    for (int u : g.units) {
        bool in = true;
        for (int a = 0; a < g.n && in; ++a)
            if (g.range[a] == u && c.value[a] > 1) in = false;
        bool in_alt = true;
        for (int a = 0; a < g.n && in_alt; ++a)
            if (g.source[a] == u && c.value[a] < 1) in_alt = false;
        if (in != in_alt) throw std::logic_error("boundary_set: dual descriptions disagree");
        if (in) z.push_back(u);
    }
    return z;
}

BoundaryGroupoid boundary_groupoid(const FiniteGroupoid& g, const Cocycle& c) {
    auto z = boundary_set(g, c);
    if (z.empty())
        throw std::domain_error("boundary_groupoid: empty boundary set (no ground states)");
    std::set<int> zs(z.begin(), z.end());
    std::vector<int> arrows_from_g, arrows_from_kernel;
    for (int a = 0; a < g.n; ++a) {
        if (zs.count(g.range[a]) && zs.count(g.source[a])) arrows_from_g.push_back(a);
        if (c.zero(a) && zs.count(g.range[a]) && zs.count(g.source[a]))
            arrows_from_kernel.push_back(a);
    }
    // Lemma: the reduction of G by Z equals the reduction of c^{-1}(0) by Z
    if (arrows_from_g != arrows_from_kernel)
        throw std::logic_error("boundary_groupoid: reduction differs from kernel reduction");

    BoundaryGroupoid out;
    out.arrow_of = arrows_from_g;
    for (size_t i = 0; i < arrows_from_g.size(); ++i)
        out.new_id[arrows_from_g[i]] = static_cast<int>(i);
    FiniteGroupoid& H = out.gz;
    H.n = static_cast<int>(arrows_from_g.size());
    H.range.resize(H.n);
    H.source.resize(H.n);
    H.inverse.resize(H.n);
    out.cz.value.resize(H.n);
    for (int i = 0; i < H.n; ++i) {
        int a = arrows_from_g[i];
        H.range[i] = out.new_id.at(g.range[a]);
        H.source[i] = out.new_id.at(g.source[a]);
        H.inverse[i] = out.new_id.at(g.inverse[a]);
        out.cz.value[i] = c.value[a];
    }
    for (int u : g.units)
        if (zs.count(u)) H.units.push_back(out.new_id.at(u));
    for (int i = 0; i < H.n; ++i)
        for (int j = 0; j < H.n; ++j)
            if (H.source[i] == H.range[j])
                H.compose[{i, j}] = out.new_id.at(g.mul(arrows_from_g[i], arrows_from_g[j]));
    return out;
}

GroundCheck check_ground(const FiniteGroupoid& g, const Cocycle& c, const GFunctional& phi) {
    GroundCheck out;
    for (int a = 0; a < g.n; ++a) {
        if (!c.negative(a)) continue;
        for (int b = 0; b < g.n; ++b) {
            if (!c.negative(b)) continue;
            if (g.range[a] != g.range[b]) continue;
            int ab = g.mul(g.inverse[a], b);
            auto it = phi.find(ab);
            if (it != phi.end() && !it->second.is_zero()) {
                out.ok = false;
                out.witnesses.push_back({a, b});
            }
        }
    }
    return out;
}

GFunctional ground_from_boundary_state(const BoundaryGroupoid& b, const GFunctional& psi) {
    GFunctional phi;
    for (auto& [k, v] : psi) {
        if (k < 0 || k >= b.gz.n)
            throw std::invalid_argument("ground_from_boundary_state: bad boundary arrow id");
        if (!v.is_zero()) phi[b.arrow_of[k]] = v;
    }
    return phi;
}

GElement restrict_to_boundary(const BoundaryGroupoid& b, const GElement& f) {
    GElement out;
    for (auto& [k, v] : f) {
        auto it = b.new_id.find(k);
        if (it != b.new_id.end()) out[it->second] = v;
    }
    return out;
}

bool kms_infty_compat(const FiniteGroupoid& g, const Cocycle& c, const GFunctional& phi) {
    BoundaryGroupoid b = boundary_groupoid(g, c);
    auto val = [&](int i, int j) -> QC {  // psi(d_i * d_j) on the boundary groupoid
        if (b.gz.source[i] != b.gz.range[j]) return QC();
        auto it = phi.find(b.arrow_of[b.gz.mul(i, j)]);
        return it == phi.end() ? QC() : it->second;
    };
    for (int i = 0; i < b.gz.n; ++i)
        for (int j = 0; j < b.gz.n; ++j)
            if (val(i, j) != val(j, i)) return false;
    return true;
}

PairGroupoid pair_groupoid(const std::vector<Rational>& weights) {
    int npts = static_cast<int>(weights.size());
    if (npts < 1) throw std::invalid_argument("pair_groupoid: need at least one point");
    for (auto& w : weights)
        if (w <= 0) throw std::invalid_argument("pair_groupoid: weights must be positive");
    PairGroupoid out;
    FiniteGroupoid& g = out.g;
    g.n = npts * npts;
    out.arrow.assign(npts, std::vector<int>(npts));
    out.c.value.resize(g.n);
    g.range.resize(g.n);
    g.source.resize(g.n);
    g.inverse.resize(g.n);
    auto id = [&](int i, int j) { return i * npts + j; };
    for (int i = 0; i < npts; ++i)
        for (int j = 0; j < npts; ++j) {
            int a = id(i, j);
            out.arrow[i][j] = a;
            g.range[a] = id(i, i);
            g.source[a] = id(j, j);
            g.inverse[a] = id(j, i);
            out.c.value[a] = weights[i] / weights[j];
        }
    for (int i = 0; i < npts; ++i) g.units.push_back(id(i, i));
    for (int i = 0; i < npts; ++i)
        for (int j = 0; j < npts; ++j)
            for (int k = 0; k < npts; ++k) g.compose[{id(i, j), id(j, k)}] = id(i, k);
    return out;
}

GroupGroupoid cyclic_groupoid(int n) {
    if (n < 1) throw std::invalid_argument("cyclic_groupoid: need n >= 1");
    GroupGroupoid out;
    FiniteGroupoid& g = out.g;
    g.n = n;
    g.range.assign(n, 0);
    g.source.assign(n, 0);
    g.inverse.resize(n);
    g.units = {0};
    out.c.value.assign(n, Rational(1));
    out.elem.resize(n);
    for (int k = 0; k < n; ++k) {
        out.elem[k] = k;
        g.inverse[k] = (n - k) % n;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g.compose[{i, j}] = (i + j) % n;
    return out;
}

GStateSpec gibbs_state(const PairGroupoid& pg, const Rational& beta) {
    GStateSpec s;
    Rational z(0);
    std::vector<Rational> w;
    int npts = static_cast<int>(pg.arrow.size());
    for (int i = 0; i < npts; ++i) {
        Rational wi = pg.c.value[pg.arrow[i][0]];  // w_i / w_0
        auto p = exact_pow(wi, -beta);
        if (!p) throw std::domain_error("gibbs_state: weights not exact at this beta");
        w.push_back(*p);
        z += *p;
    }
    for (int i = 0; i < npts; ++i) s.measure[pg.g.units[i]] = w[i] / z;
    return s;
}

}  // namespace heckeq
