#pragma once

#include <stdexcept>
#include <vector>

#include "qpoly.hpp"

namespace wfano {

// Dense univariate polynomial over Q; c[i] is the coefficient of u^i, no trailing zeros.
struct UPoly {
    std::vector<Rational> c;

    UPoly() = default;
    explicit UPoly(std::vector<Rational> v) : c(std::move(v)) { trim(); }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Rational& lead() const { return c.back(); }

    UPoly derivative() const {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<int>(i));
        return UPoly(d);
    }
    UPoly monic() const {
        if (is_zero()) return *this;
        UPoly r = *this;
        Rational l = lead();
        for (auto& x : r.c) x /= l;
        return r;
    }
    Rational eval(const Rational& x) const {
        Rational s = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
        return s;
    }
};

inline UPoly upoly_mod(UPoly a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    while (!a.is_zero() && a.degree() >= b.degree()) {
        Rational f = a.lead() / b.lead();
        int sh = a.degree() - b.degree();
        for (int i = 0; i <= b.degree(); ++i) a.c[static_cast<std::size_t>(i + sh)] -= f * b.c[static_cast<std::size_t>(i)];
        a.trim();
    }
    return a;
}

inline UPoly upoly_div(UPoly a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.degree() < b.degree()) return UPoly();
    std::vector<Rational> q(static_cast<std::size_t>(a.degree() - b.degree() + 1), Rational(0));
    while (!a.is_zero() && a.degree() >= b.degree()) {
        Rational f = a.lead() / b.lead();
        int sh = a.degree() - b.degree();
        q[static_cast<std::size_t>(sh)] = f;
        for (int i = 0; i <= b.degree(); ++i) a.c[static_cast<std::size_t>(i + sh)] -= f * b.c[static_cast<std::size_t>(i)];
        a.trim();
    }
    return UPoly(q);
}

// Monic gcd; gcd(0,0) = 0.
inline UPoly upoly_gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = upoly_mod(a, b);
        a = b.monic();
        b = r.is_zero() ? r : r.monic();
    }
    return a.monic();
}

inline bool upoly_squarefree(const UPoly& p) {
    if (p.degree() <= 0) return true;
    return upoly_gcd(p, p.derivative()).degree() == 0;
}

// Univariate polynomial of p in variable i, other variables must be absent.
inline UPoly to_upoly(const QPoly& p, std::size_t i) {
    std::vector<Rational> c;
    for (auto& [m, k] : p.terms()) {
        for (std::size_t j = 0; j < m.e.size(); ++j)
            if (j != i && m.e[j] != 0) throw std::invalid_argument("polynomial is not univariate");
        std::size_t d = static_cast<std::size_t>(m.e[i]);
        if (c.size() <= d) c.resize(d + 1, Rational(0));
        c[d] += k;
    }
    return UPoly(c);
}

inline QPoly from_upoly(const UPoly& u, const VarTable& vars, std::size_t i) {
    QPoly r(vars);
    for (std::size_t d = 0; d < u.c.size(); ++d) {
        std::vector<int> e(vars.size(), 0);
        e[i] = static_cast<int>(d);
        r.add_term(Monomial{e}, u.c[d]);
    }
    return r;
}

// The two variables a binary form lives in (declared order); throws if more are used.
inline std::pair<std::size_t, std::size_t> binary_vars(const QPoly& p, const QPoly* q = nullptr) {
    std::vector<std::size_t> used;
    for (std::size_t i = 0; i < p.nvars(); ++i)
        if (p.involves(i) || (q && q->involves(i))) used.push_back(i);
    if (used.size() > 2) throw std::invalid_argument("not a binary form");
    for (std::size_t i = 0; used.size() < 2 && i < p.nvars(); ++i)
        if (std::find(used.begin(), used.end(), i) == used.end()) used.push_back(i);
    std::sort(used.begin(), used.end());
    if (used.size() < 2) throw std::invalid_argument("need at least two variables");
    return {used[0], used[1]};
}

namespace detail {

// p = v^k * p' with v not dividing p'; returns k and p'(u,1).
inline std::pair<int, UPoly> split_binary(const QPoly& p, std::size_t u, std::size_t v) {
    int k = -1;
    for (auto& [m, c] : p.terms()) k = (k < 0) ? m.e[v] : std::min(k, m.e[v]);
    std::vector<Rational> coef;
    for (auto& [m, c] : p.terms()) {
        std::size_t d = static_cast<std::size_t>(m.e[u]);
        if (coef.size() <= d) coef.resize(d + 1, Rational(0));
        coef[d] += c;
    }
    return {k, UPoly(coef)};
}

}  // namespace detail

// gcd of two binary forms (homogeneous in the usual sense), monic in the first variable.
inline QPoly binary_gcd(const QPoly& p, const QPoly& q) {
    if (p.is_zero() || q.is_zero()) throw std::domain_error("binary_gcd of zero polynomial");
    auto [u, v] = binary_vars(p, &q);
    auto [kp, up] = detail::split_binary(p, u, v);
    auto [kq, uq] = detail::split_binary(q, u, v);
    UPoly g = upoly_gcd(up, uq);
    int dg = g.degree();
    int kv = std::min(kp, kq);
    QPoly r(p.vars());
    for (int i = 0; i <= dg; ++i) {
        std::vector<int> e(p.nvars(), 0);
        e[u] = i;
        e[v] = dg - i + kv;
        r.add_term(Monomial{e}, g.c[static_cast<std::size_t>(i)]);
    }
    if (dg < 0) {
        std::vector<int> e(p.nvars(), 0);
        e[v] = kv;
        r.add_term(Monomial{e}, 1);
    }
    return r;
}

// Squarefree as a form on P^1: no repeated root in either affine chart.
inline bool is_squarefree_binary(const QPoly& p) {
    if (p.is_zero()) throw std::domain_error("is_squarefree_binary of zero polynomial");
    auto [u, v] = binary_vars(p);
    auto [kv, pu] = detail::split_binary(p, u, v);
    if (kv >= 2) return false;
    auto [ku, pv] = detail::split_binary(p, v, u);
    if (ku >= 2) return false;
    return upoly_squarefree(pu) && upoly_squarefree(pv);
}

}  // namespace wfano
