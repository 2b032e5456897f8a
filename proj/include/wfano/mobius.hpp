#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "groups.hpp"
#include "qpoly.hpp"
#include "upoly.hpp"

namespace wfano {

using cplx = std::complex<double>;
using cplxl = std::complex<long double>;

// Point of P^1 as a unit homogeneous vector (u : v); infinity is (1 : 0).
struct ProjPoint {
    cplx u{0}, v{1};
};

inline ProjPoint normalize_point(cplx u, cplx v) {
    double n = std::sqrt(std::norm(u) + std::norm(v));
    if (n == 0) throw std::domain_error("zero homogeneous vector");
    return {u / n, v / n};
}

// Chordal distance on P^1.
inline double chordal(const ProjPoint& a, const ProjPoint& b) { return std::abs(a.u * b.v - a.v * b.u); }

struct MobiusMap {
    std::array<cplx, 4> m{1, 0, 0, 1};  // [[a, b], [c, d]] acting on column (u, v)

    ProjPoint apply(const ProjPoint& p) const { return normalize_point(m[0] * p.u + m[1] * p.v, m[2] * p.u + m[3] * p.v); }
    MobiusMap operator*(const MobiusMap& o) const {
        return {{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3], m[2] * o.m[0] + m[3] * o.m[2],
                 m[2] * o.m[1] + m[3] * o.m[3]}};
    }
    cplx det() const { return m[0] * m[3] - m[1] * m[2]; }
    // Determinant 1; sign fixed so the first entry of largest modulus has positive real part (ties by imaginary).
    MobiusMap normalized() const {
        cplx s = std::sqrt(det());
        MobiusMap r;
        for (std::size_t i = 0; i < 4; ++i) r.m[i] = m[i] / s;
        std::size_t k = 0;
        for (std::size_t i = 1; i < 4; ++i)
            if (std::abs(r.m[i]) > std::abs(r.m[k]) + 1e-12) k = i;
        if (r.m[k].real() < -1e-12 || (std::abs(r.m[k].real()) <= 1e-12 && r.m[k].imag() < 0))
            for (auto& x : r.m) x = -x;
        return r;
    }
    // Equal in PGL2 within eps.
    bool same(const MobiusMap& o, double eps) const {
        auto a = normalized(), b = o.normalized();
        double dp = 0, dm = 0;
        for (std::size_t i = 0; i < 4; ++i) {
            dp = std::max(dp, std::abs(a.m[i] - b.m[i]));
            dm = std::max(dm, std::abs(a.m[i] + b.m[i]));
        }
        return std::min(dp, dm) < eps;
    }
};

// The unique map sending the three given distinct points to (e1, e2, e1 + e2).
inline MobiusMap frame_map(const std::array<ProjPoint, 3>& p) {
    // Columns alpha P1, beta P2 with alpha P1 + beta P2 = P3.
    cplx det = p[0].u * p[1].v - p[0].v * p[1].u;
    cplx alpha = (p[2].u * p[1].v - p[2].v * p[1].u) / det;
    cplx beta = (p[0].u * p[2].v - p[0].v * p[2].u) / det;
    MobiusMap a{{alpha * p[0].u, beta * p[1].u, alpha * p[0].v, beta * p[1].v}};
    // inverse of a
    cplx d = a.det();
    return {{a.m[3] / d, -a.m[1] / d, -a.m[2] / d, a.m[0] / d}};
}

inline MobiusMap map_triple(const std::array<ProjPoint, 3>& from, const std::array<ProjPoint, 3>& to) {
    MobiusMap f = frame_map(from), t = frame_map(to);
    cplx d = t.det();
    MobiusMap tinv{{t.m[3] / d, -t.m[1] / d, -t.m[2] / d, t.m[0] / d}};
    return tinv * f;
}

namespace detail {

inline long double to_ld(const Rational& q) { return numer(q).convert_to<long double>() / denom(q).convert_to<long double>(); }

// Complex roots of a univariate rational polynomial: companion eigenvalues, then Newton polishing.
inline std::vector<cplx> complex_roots(const UPoly& p) {
    int n = p.degree();
    std::vector<cplx> out;
    if (n <= 0) return out;
    std::vector<long double> c;
    for (auto& x : p.c) c.push_back(to_ld(x));
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -static_cast<double>(c[static_cast<std::size_t>(i)] / c.back());
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    auto ev = es.eigenvalues();
    for (int i = 0; i < n; ++i) {
        cplxl z(ev(i).real(), ev(i).imag());
        for (int it = 0; it < 50; ++it) {
            cplxl f = 0, df = 0;
            for (auto k = c.size(); k-- > 0;) {
                df = df * z + f;
                f = f * z + c[k];
            }
            if (std::abs(df) == 0) break;
            cplxl step = f / df;
            z -= step;
            if (std::abs(step) <= 1e-30L * std::max(1.0L, std::abs(z))) break;
        }
        out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    }
    return out;
}

}  // namespace detail

// Roots on P^1 of a squarefree binary form in its two variables (first variable is u).
inline std::vector<ProjPoint> binary_roots(const QPoly& form) {
    if (!is_squarefree_binary(form)) throw std::domain_error("binary form is not squarefree");
    auto [u, v] = binary_vars(form);
    auto [kv, pu] = detail::split_binary(form, u, v);
    int n = 0;
    for (auto& [m, c] : form.terms()) n = m.e[u] + m.e[v];
    std::vector<ProjPoint> roots;
    for (auto z : detail::complex_roots(pu)) roots.push_back(normalize_point(z, 1));
    // (u : v) with v = 0 is a root iff the u-degree drops.
    if (pu.degree() < n) roots.push_back({1, 0});
    (void)kv;
    return roots;
}

struct MobiusStabilizer {
    std::vector<MobiusMap> elements;           // determinant 1, identity first
    std::vector<std::vector<int>> permutations;  // action on the root list
    std::vector<ProjPoint> roots;
    FiniteGroup group;
    std::string type;  // "trivial", "Zn", "Dn" (order n), "A4", "S4", "A5"
};

inline std::string classify_pgl2_subgroup(const FiniteGroup& g) {
    std::size_t n = g.order();
    auto hist = g.order_histogram();
    int maxo = hist.rbegin()->first;
    if (n == 1) return "trivial";
    if (static_cast<std::size_t>(maxo) == n) return "Z" + std::to_string(n);
    if (n == 12 && !hist.count(6)) return "A4";
    if (n == 24 && hist.count(4) && !hist.count(6)) return "S4";
    if (n == 60) return "A5";
    return "D" + std::to_string(n);
}

// Elements of PGL2 permuting the roots of the form, within eps (chordal metric).
inline MobiusStabilizer binary_form_stabilizer(const QPoly& form, double eps = 1e-9) {
    MobiusStabilizer st;
    st.roots = binary_roots(form);
    const auto& r = st.roots;
    std::size_t n = r.size();
    if (n < 3) throw std::domain_error("stabilizer needs at least three roots");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (chordal(r[i], r[j]) < 10 * eps) throw std::runtime_error("root clustering below tolerance");
    auto match = [&](const MobiusMap& m, std::vector<int>& perm) {
        perm.assign(n, -1);
        std::vector<bool> used(n, false);
        for (std::size_t i = 0; i < n; ++i) {
            auto img = m.apply(r[i]);
            int best = -1;
            for (std::size_t j = 0; j < n; ++j)
                if (!used[j] && chordal(img, r[j]) < eps * 1e3) best = static_cast<int>(j);
            if (best < 0) return false;
            if (chordal(img, r[static_cast<std::size_t>(best)]) > eps) return false;
            perm[i] = best;
            used[static_cast<std::size_t>(best)] = true;
        }
        return true;
    };
    std::array<ProjPoint, 3> src{r[0], r[1], r[2]};
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                if (a == b || b == c || a == c) continue;
                MobiusMap m = map_triple(src, {r[a], r[b], r[c]}).normalized();
                std::vector<int> perm;
                if (!match(m, perm)) continue;
                bool dup = false;
                for (auto& p : st.permutations) dup = dup || p == perm;
                if (dup) continue;
                st.elements.push_back(m);
                st.permutations.push_back(perm);
            }
    // Identity first for readability.
    for (std::size_t k = 0; k < st.permutations.size(); ++k) {
        bool id = true;
        for (std::size_t i = 0; i < n; ++i) id = id && st.permutations[k][i] == static_cast<int>(i);
        if (id) {
            std::swap(st.permutations[0], st.permutations[k]);
            std::swap(st.elements[0], st.elements[k]);
        }
    }
    st.group = FiniteGroup::from_permutations(st.permutations, n);
    if (st.group.order() != st.elements.size()) throw std::runtime_error("stabilizer survivors are not closed");
    st.type = classify_pgl2_subgroup(st.group);
    return st;
}

// Apply a Mobius map to a binary form numerically and test proportionality: g^* q = mu q.
inline std::optional<cplx> pullback_ratio(const QPoly& q, std::size_t u, std::size_t v, const MobiusMap& g,
                                          double eps = 1e-8) {
    // Evaluate q at g(u, v) and at (u, v) on sample points; the ratio must be constant.
    std::optional<cplx> mu;
    const std::array<cplx, 4> us{cplx(0.3, 0.7), cplx(-1.1, 0.2), cplx(0.5, -0.9), cplx(2.0, 1.3)};
    for (auto s : us) {
        cplx x = s, y = 1.0;
        cplx gx = g.m[0] * x + g.m[1] * y, gy = g.m[2] * x + g.m[3] * y;
        auto eval = [&](cplx a, cplx b) {
            cplx tot = 0;
            for (auto& [m, c] : q.terms())
                tot += std::pow(a, m.e[u]) * std::pow(b, m.e[v]) * static_cast<double>(detail::to_ld(c));
            return tot;
        };
        cplx base = eval(x, y), img = eval(gx, gy);
        if (std::abs(base) < 1e-12) continue;
        cplx ratio = img / base;
        if (!mu) mu = ratio;
        else if (std::abs(ratio - *mu) > eps * std::max(1.0, std::abs(*mu))) return std::nullopt;
    }
    return mu;
}

}  // namespace wfano
