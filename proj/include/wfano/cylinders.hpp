#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "qpoly.hpp"
#include "upoly.hpp"
#include "wps.hpp"

namespace wfano {

// Three-valued answer; UNKNOWN is never silently turned into either side.
enum class Tri { NO, YES, UNKNOWN };

inline const char* to_string(Tri t) { return t == Tri::YES ? "YES" : t == Tri::NO ? "NO" : "UNKNOWN"; }

enum class ChartKind { GRAPH_A3, QUOTIENT, HYPERSURFACE };

inline const char* to_string(ChartKind k) {
    return k == ChartKind::GRAPH_A3 ? "GRAPH_A3" : k == ChartKind::QUOTIENT ? "QUOTIENT" : "HYPERSURFACE";
}

struct ChartAnalysis {
    std::size_t chart = 0;
    ChartKind kind = ChartKind::HYPERSURFACE;
    std::optional<std::size_t> eliminated;
    std::vector<std::size_t> residual_vars;  // the three coordinates left after elimination
    std::optional<CyclicQuotient> quotient;  // unit-normalised; order a_j
    std::optional<CyclicQuotient> raw_quotient;  // residual weights mod a_j, in residual_vars order
    QPoly residual;  // F at x_j = 1
};

// F dehomogenised at x_j; a variable entering as c*x_m + g with c constant and g free of x_m
// is a graph coordinate, leaving A^3 over the other three modulo mu_{a_j}.
inline ChartAnalysis analyze_chart(const WeightSystem& ws, const QPoly& F, std::size_t j) {
    if (!F.is_quasi_homogeneous(ws.degree)) throw std::invalid_argument("F is not quasi-homogeneous of degree d");
    QPoly f = F.specialize({{j, Rational(1)}});
    if (f.is_zero()) throw std::invalid_argument("X contains the hyperplane");
    bool constant = f.terms().size() == 1 && f.terms().begin()->first.total_degree() == 0;
    if (constant) throw std::domain_error("chart D+(" + F.vars()[j].name + ") is disjoint from X");
    ChartAnalysis ca;
    ca.chart = j;
    ca.residual = f;
    for (std::size_t m = 0; m < F.nvars() && !ca.eliminated; ++m) {
        if (m == j || f.degree_in(m) != 1) continue;
        QPoly coef = f.partial(m);
        bool const_coef = coef.terms().size() == 1 && coef.terms().begin()->first.total_degree() == 0;
        if (const_coef) ca.eliminated = m;
    }
    if (!ca.eliminated) return ca;
    long r = ws.weights[j];
    std::array<long, 3> w{};
    std::size_t k = 0;
    for (std::size_t i = 0; i < F.nvars(); ++i)
        if (i != j && i != *ca.eliminated) {
            ca.residual_vars.push_back(i);
            w[k++] = ws.weights[i];
        }
    if (r == 1) {
        ca.kind = ChartKind::GRAPH_A3;
        return ca;
    }
    ca.kind = ChartKind::QUOTIENT;
    ca.raw_quotient = CyclicQuotient(static_cast<int>(r), w);
    ca.quotient = ca.raw_quotient->normalized();
    return ca;
}

struct A2Cylinder {
    ChartAnalysis chart;
    std::string statement = "open subset isomorphic to A^2 x (A^1 \\ {o})";
    std::vector<int> blown_up_weights;  // (1, a_2, a_3) after unit normalisation
    std::size_t hyperplane_var = 0;     // H = V+(this coordinate) inside the chart
};

// First chart (ascending coordinate order) that is A^3 or A^3 modulo mu_r with a unit weight.
inline std::optional<A2Cylinder> a2_cylinder(const WeightSystem& ws, const QPoly& F) {
    for (std::size_t j = 0; j < F.nvars(); ++j) {
        ChartAnalysis ca;
        try {
            ca = analyze_chart(ws, F, j);
        } catch (const std::domain_error&) {
            continue;
        }
        if (ca.kind == ChartKind::HYPERSURFACE) continue;
        A2Cylinder c;
        if (ca.kind == ChartKind::GRAPH_A3) {
            c.chart = ca;
            c.blown_up_weights = {1, 1, 1};
            c.hyperplane_var = ca.residual_vars[0];
            return c;
        }
        const auto& raw = *ca.raw_quotient;
        for (std::size_t i = 0; i < 3; ++i) {
            if (std::gcd(raw.w[i], raw.r) != 1) continue;
            auto q = raw.scaled(inverse_mod(raw.w[i], raw.r));
            c.chart = ca;
            c.hyperplane_var = ca.residual_vars[i];
            c.blown_up_weights = {1};
            for (std::size_t k = 0; k < 3; ++k)
                if (k != i) c.blown_up_weights.push_back(q.w[k]);
            return c;
        }
    }
    return std::nullopt;
}

// ---------- plane curves ----------

namespace detail {

using Pt = std::pair<long, long>;

inline long cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

// Counter-clockwise hull without collinear points.
inline std::vector<Pt> convex_hull(std::vector<Pt> p) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() < 3) return p;
    std::vector<Pt> h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    return h;
}

// Exponents of f in the two variables u, v; other variables must be absent.
inline std::map<Pt, Rational> bivariate(const QPoly& f, std::size_t u, std::size_t v) {
    std::map<Pt, Rational> out;
    for (auto& [m, c] : f.terms()) {
        for (std::size_t i = 0; i < m.e.size(); ++i)
            if (i != u && i != v && m.e[i] != 0) throw std::invalid_argument("curve uses a third variable");
        out[{m.e[u], m.e[v]}] = c;
    }
    return out;
}

}  // namespace detail

// Interior lattice points of the convex hull of the points (Pick's theorem).
inline long interior_points(const std::vector<std::pair<long, long>>& pts) {
    auto h = detail::convex_hull(pts);
    if (h.size() < 3) return 0;
    long area2 = 0, boundary = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        auto& a = h[i];
        auto& b = h[(i + 1) % h.size()];
        area2 += a.first * b.second - a.second * b.first;
        boundary += std::gcd(std::abs(b.first - a.first), std::abs(b.second - a.second));
    }
    return (std::abs(area2) - boundary + 2) / 2;
}

// Genus from the Newton polygon, valid when every edge form is squarefree; nullopt otherwise.
inline std::optional<long> newton_genus(const QPoly& f, std::size_t u, std::size_t v) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial");
    auto coef = detail::bivariate(f, u, v);
    std::vector<detail::Pt> pts;
    for (auto& [p, c] : coef) pts.push_back(p);
    auto h = detail::convex_hull(pts);
    if (h.size() >= 2) {
        std::size_t edges = h.size() == 2 ? 1 : h.size();
        for (std::size_t i = 0; i < edges; ++i) {
            auto a = h[i], b = h[(i + 1) % h.size()];
            long dx = b.first - a.first, dy = b.second - a.second;
            long g = std::gcd(std::abs(dx), std::abs(dy));
            std::vector<Rational> ec(static_cast<std::size_t>(g) + 1, Rational(0));
            for (long k = 0; k <= g; ++k) {
                auto it = coef.find({a.first + k * dx / g, a.second + k * dy / g});
                if (it != coef.end()) ec[static_cast<std::size_t>(k)] = it->second;
            }
            if (!upoly_squarefree(UPoly(ec))) return std::nullopt;
        }
    }
    return interior_points(pts);
}

namespace detail {

inline Rational det(QMatrix a) {
    std::size_t n = a.size();
    Rational d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) return 0;
        if (p != c) {
            std::swap(a[p], a[c]);
            d = -d;
        }
        d *= a[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            if (a[r][c] == 0) continue;
            Rational f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
        }
    }
    return d;
}

// Sylvester resultant with formal degrees m, n (leading zeros allowed).
inline Rational sylvester(const std::vector<Rational>& p, const std::vector<Rational>& q) {
    std::size_t m = p.size() - 1, n = q.size() - 1, s = m + n;
    if (s == 0) return 1;
    QMatrix a(s, QVector(s, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k <= m; ++k) a[i][i + k] = p[m - k];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k <= n; ++k) a[n + i][i + k] = q[n - k];
    return det(a);
}

// Res_v(P, Q) as a polynomial in u, by evaluation at u = 0, 1, ... and Newton interpolation.
inline UPoly resultant_v(const std::map<Pt, Rational>& P, const std::map<Pt, Rational>& Q) {
    auto degs = [](const std::map<Pt, Rational>& M) {
        long du = 0, dv = 0;
        for (auto& [p, c] : M) du = std::max(du, p.first), dv = std::max(dv, p.second);
        return std::make_pair(du, dv);
    };
    auto [pu, pv] = degs(P);
    auto [qu, qv] = degs(Q);
    long bound = pu * qv + qu * pv + 1;
    auto at = [](const std::map<Pt, Rational>& M, long dv, const Rational& u0) {
        std::vector<Rational> c(static_cast<std::size_t>(dv) + 1, Rational(0));
        for (auto& [p, k] : M) {
            Rational t = k;
            for (long i = 0; i < p.first; ++i) t *= u0;
            c[static_cast<std::size_t>(p.second)] += t;
        }
        return c;
    };
    std::vector<Rational> xs, dd;
    for (long i = 0; i <= bound; ++i) {
        Rational u0(i);
        xs.push_back(u0);
        dd.push_back(sylvester(at(P, pv, u0), at(Q, qv, u0)));
    }
    std::size_t n = xs.size();
    for (std::size_t k = 1; k < n; ++k)
        for (std::size_t i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
    UPoly r({dd[n - 1]});
    for (std::size_t i = n - 1; i-- > 0;) {
        // r = r * (u - xs[i]) + dd[i]
        std::vector<Rational> c(r.c.size() + 1, Rational(0));
        for (std::size_t k = 0; k < r.c.size(); ++k) {
            c[k + 1] += r.c[k];
            c[k] -= r.c[k] * xs[i];
        }
        c[0] += dd[i];
        r = UPoly(c);
    }
    return r;
}

inline std::map<Pt, Rational> swap_uv(const std::map<Pt, Rational>& M) {
    std::map<Pt, Rational> out;
    for (auto& [p, c] : M) out[{p.second, p.first}] = c;
    return out;
}

inline std::map<Pt, Rational> d_du(const std::map<Pt, Rational>& M) {
    std::map<Pt, Rational> out;
    for (auto& [p, c] : M)
        if (p.first > 0) out[{p.first - 1, p.second}] += c * p.first;
    return out;
}

}  // namespace detail

// Branches of the closure in P^2 along the line at infinity.
inline std::optional<long> places_at_infinity(const QPoly& f, std::size_t u, std::size_t v) {
    auto coef = detail::bivariate(f, u, v);
    long top = 0;
    for (auto& [p, c] : coef) top = std::max(top, p.first + p.second);
    if (top == 0) throw std::invalid_argument("constant polynomial");
    // A graph c*u + g(v) (or with u, v swapped) is a copy of A^1: one place.
    for (int side = 0; side < 2; ++side) {
        bool graph = true, has_linear = false;
        for (auto& [p, c] : coef) {
            long a = side ? p.second : p.first, b = side ? p.first : p.second;
            if (a == 1 && b == 0) has_linear = true;
            else if (a != 0) graph = false;
        }
        if (graph && has_linear) return 1;
    }
    QPoly form(f.vars());
    for (auto& [m, c] : f.terms())
        if (m.e[u] + m.e[v] == top) form.add_term(m, c);
    if (form.terms().size() == 1) {
        auto e = form.terms().begin()->first.e;
        // u^k or v^k is squarefree only for k = 1
        if (e[u] + e[v] == 1) return 1;
        if (e[u] == 1 && e[v] == 1) return 2;
        return std::nullopt;
    }
    if (!is_squarefree_binary(form)) return std::nullopt;
    return top;
}

struct CurveReport {
    QPoly curve;
    std::size_t u = 0, v = 0;
    std::optional<long> genus;   // Newton interior points
    std::optional<long> places;  // at infinity
    std::optional<bool> smooth;
    std::optional<bool> absolutely_irreducible;
    Tri affine_line = Tri::UNKNOWN;
};

// Singular points of {f = 0} in A^2 from resultants in both variable orders.
inline std::optional<bool> affine_smooth(const QPoly& f, std::size_t u, std::size_t v) {
    auto P = detail::bivariate(f, u, v);
    for (int side = 0; side < 2; ++side) {
        auto M = side ? detail::swap_uv(P) : P;
        auto Mv = detail::swap_uv(detail::d_du(detail::swap_uv(M)));
        auto Mu = detail::d_du(M);
        if (Mv.empty()) continue;  // no v: handled by the caller
        UPoly r1 = detail::resultant_v(M, Mv);
        if (r1.c.empty()) continue;
        if (Mu.empty()) {
            if (r1.degree() == 0) return true;
            continue;
        }
        UPoly r2 = detail::resultant_v(M, Mu);
        UPoly g = upoly_gcd(r1, r2);
        if (!g.c.empty() && g.degree() == 0) return true;
    }
    return std::nullopt;
}

// Is {f = 0} scheme-theoretically an affine line?
inline CurveReport curve_report(const QPoly& f, std::size_t u, std::size_t v) {
    CurveReport cr{f, u, v, {}, {}, {}, {}, Tri::UNKNOWN};
    if (f.is_zero()) throw std::invalid_argument("zero polynomial");
    cr.genus = newton_genus(f, u, v);
    cr.places = places_at_infinity(f, u, v);
    bool uses_u = f.involves(u), uses_v = f.involves(v);
    if (uses_u != uses_v) {
        // Union of parallel lines: one line iff the single-variable polynomial is linear.
        std::size_t x = uses_u ? u : v;
        bool line = f.degree_in(x) == 1;
        cr.smooth = true;
        cr.absolutely_irreducible = line;
        cr.affine_line = line ? Tri::YES : Tri::NO;
        return cr;
    }
    if (cr.places && *cr.places == 1 && cr.genus && *cr.genus == 0) {
        // One place forces a single component; graphs are lines outright.
        cr.absolutely_irreducible = true;
        cr.smooth = affine_smooth(f, u, v);
        if (cr.smooth && *cr.smooth) cr.affine_line = Tri::YES;
        return cr;
    }
    if ((cr.genus && *cr.genus > 0) || (cr.places && *cr.places != 1)) {
        cr.affine_line = Tri::NO;
        if (cr.genus && *cr.genus > 0) cr.smooth = affine_smooth(f, u, v);
    }
    return cr;
}

inline Tri is_affine_line(const QPoly& f, std::size_t u, std::size_t v) { return curve_report(f, u, v).affine_line; }

struct A3Verdict {
    Tri answer = Tri::UNKNOWN;
    std::optional<ChartAnalysis> witness;
    std::vector<CurveReport> obstructions;
    std::string reason;
};

struct CylinderReport {
    std::optional<A2Cylinder> a2;
    A3Verdict a3;
};

// F at x_j = 1 has the shape s*t + f(u, v) with s, t absent from f: returns (s, t, u, v).
inline std::optional<std::array<std::size_t, 4>> st_shape(const QPoly& f, std::size_t j) {
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < f.nvars(); ++i)
        if (i != j) rest.push_back(i);
    for (std::size_t a = 0; a < rest.size(); ++a)
        for (std::size_t b = a + 1; b < rest.size(); ++b) {
            std::size_t s = rest[a], t = rest[b];
            bool ok = false, clean = true;
            for (auto& [m, c] : f.terms()) {
                bool has = m.e[s] || m.e[t];
                if (!has) continue;
                int others = 0;
                for (std::size_t i = 0; i < m.e.size(); ++i)
                    if (i != s && i != t) others += m.e[i];
                if (m.e[s] == 1 && m.e[t] == 1 && others == 0) ok = true;
                else clean = false;
            }
            if (!ok || !clean) continue;
            std::array<std::size_t, 4> out{s, t, 0, 0};
            std::size_t k = 2;
            for (auto i : rest)
                if (i != s && i != t) out[k++] = i;
            return out;
        }
    return std::nullopt;
}

inline CylinderReport contains_a3(const WeightSystem& ws, const QPoly& F) {
    CylinderReport rep;
    rep.a2 = a2_cylinder(ws, F);
    auto& v = rep.a3;
    if (ws.weights[0] > 1) {
        v.answer = Tri::NO;
        v.reason = "no coordinate of degree 1: the complement of an A^3 would be a degree-1 section";
        return rep;
    }
    for (std::size_t j = 0; j < F.nvars(); ++j) {
        if (ws.weights[j] != 1) continue;
        auto ca = analyze_chart(ws, F, j);
        if (ca.kind == ChartKind::GRAPH_A3) {
            v.answer = Tri::YES;
            v.witness = ca;
            v.reason = "chart D+(" + F.vars()[j].name + ") is A^3, eliminating " + F.vars()[*ca.eliminated].name;
            return rep;
        }
    }
    for (std::size_t j = 0; j < F.nvars(); ++j) {
        if (ws.weights[j] != 1) continue;
        QPoly f = F.specialize({{j, Rational(1)}});
        auto sh = st_shape(f, j);
        if (!sh) {
            v.answer = Tri::UNKNOWN;
            v.reason = "chart D+(" + F.vars()[j].name + ") is not of the form st + f(u,v)";
            return rep;
        }
        QPoly curve = f - QPoly::var(F.vars(), (*sh)[0]) * QPoly::var(F.vars(), (*sh)[1]) *
                              QPoly::constant(F.vars(), f.coeff([&] {
                                  std::vector<int> e(F.nvars(), 0);
                                  e[(*sh)[0]] = e[(*sh)[1]] = 1;
                                  return e;
                              }()));
        auto cr = curve_report(curve, (*sh)[2], (*sh)[3]);
        if (cr.affine_line != Tri::NO) {
            v.answer = Tri::UNKNOWN;
            v.reason = "curve in chart D+(" + F.vars()[j].name + ") is not excluded as an affine line";
            return rep;
        }
        v.obstructions.push_back(cr);
    }
    v.answer = Tri::NO;
    const auto& o = v.obstructions.front();
    v.reason = o.genus && *o.genus > 0 ? "boundary curve has genus " + std::to_string(*o.genus)
                                       : "boundary curve has " + std::to_string(o.places.value_or(-1)) +
                                             " places at infinity";
    return rep;
}

}  // namespace wfano
