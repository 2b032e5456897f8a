#pragma once

#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "wfano/intlattice.hpp"
#include "wfano/qpoly.hpp"
#include "wfano/wps.hpp"

namespace testutil {

using namespace wfano;

inline Rational small_rational(std::mt19937_64& rng, int lo = -5, int hi = 5, int maxden = 3) {
    std::uniform_int_distribution<int> num(lo, hi), den(1, maxden);
    return Rational(num(rng), den(rng));
}

// Random polynomial with up to `terms` monomials of total degree <= maxdeg.
inline QPoly random_poly(std::mt19937_64& rng, const VarTable& vars, int terms, int maxdeg) {
    std::uniform_int_distribution<int> ex(0, maxdeg);
    QPoly p(vars);
    for (int k = 0; k < terms; ++k) {
        std::vector<int> e(vars.size(), 0);
        int budget = maxdeg;
        for (auto& x : e) {
            x = std::uniform_int_distribution<int>(0, budget)(rng);
            budget -= x;
        }
        p.add_term(Monomial{e}, small_rational(rng));
    }
    return p;
}

// Random quasi-homogeneous polynomial of weighted degree d.
inline QPoly random_qh(std::mt19937_64& rng, const VarTable& vars, long d, int terms) {
    std::vector<int> w;
    for (auto& v : vars) w.push_back(v.weight);
    auto mons = monomials_of_degree(w, d);
    QPoly p(vars);
    if (mons.empty()) return p;
    std::uniform_int_distribution<std::size_t> pick(0, mons.size() - 1);
    for (int k = 0; k < terms; ++k) p.add_term(mons[pick(rng)], small_rational(rng, -9, 9, 4));
    return p;
}

// gcd of all k x k minors, by brute force over row/column subsets.
inline Int minor_gcd(const IntMatrix& m, std::size_t k) {
    Int g = 0;
    std::vector<std::size_t> rs(k), cs(k);
    std::function<void(std::size_t, std::size_t)> pick_cols;
    std::function<void(std::size_t, std::size_t)> pick_rows = [&](std::size_t i, std::size_t start) {
        if (i == k) { pick_cols(0, 0); return; }
        for (std::size_t r = start; r < m.rows; ++r) { rs[i] = r; pick_rows(i + 1, r + 1); }
    };
    pick_cols = [&](std::size_t i, std::size_t start) {
        if (i == k) {
            IntMatrix sub(k, k);
            for (std::size_t a = 0; a < k; ++a)
                for (std::size_t b = 0; b < k; ++b) sub(a, b) = m(rs[a], cs[b]);
            g = gcd(g, abs(determinant(sub)));
            return;
        }
        for (std::size_t c = start; c < m.cols; ++c) { cs[i] = c; pick_cols(i + 1, c + 1); }
    };
    pick_rows(0, 0);
    return g;
}

// Terminal 3-fold cyclic quotients are exactly 1/r(1, a, r-a) up to permutation and unit rescaling.
inline bool terminal_by_classification(const CyclicQuotient& q) {
    int r = q.r;
    for (long u = 1; u < r; ++u) {
        if (std::gcd(u, static_cast<long>(r)) != 1) continue;
        auto s = q.scaled(u).w;
        for (std::size_t i = 0; i < 3; ++i) {
            if (s[i] != 1) continue;
            std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
            if ((s[j] + s[k]) % r == 0) return true;
        }
    }
    return false;
}

inline const VarTable XY = make_vars({1, 1});

// Large-height rational avoiding the special values 0, 1, -1.
inline Rational random_param(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(2000, 900000), den(1000, 700000);
    Rational r(num(rng), den(rng));
    if (rng() & 1u) r = -r;
    return r;
}

inline QPoly form_for_row(int row, std::mt19937_64& rng) {
    auto lam = random_param(rng), mu = random_param(rng), gam = random_param(rng);
    auto L = [&](const Rational& q) { return "(" + to_string(q) + ")"; };
    switch (row) {
        case 0:  // generic sextic through 0, 1, lambda, mu, gamma, infinity
            return parse_poly("x*(x - y)*(x - " + L(lam) + "*y)*(x - " + L(mu) + "*y)*(x - " + L(gam) + "*y)*y", XY);
        case 1: return parse_poly("(x^2 + y^2)*(x^2 + " + L(lam) + "*y^2)*(x^2 + " + L(mu) + "*y^2)", XY);
        case 2: return parse_poly("x*(x^5 + y^5)", XY);
        case 3: return parse_poly("x*y*(x^2 + y^2)*(x^2 + " + L(lam) + "*y^2)", XY);
        case 4: return parse_poly("(x^3 + y^3)*(x^3 + " + L(lam) + "*y^3)", XY);
        case 5: return parse_poly("x^6 + y^6", XY);
        default: return parse_poly("x*y*(x^4 + y^4)", XY);
    }
}

inline const char* const kSexticRowTypes[7] = {"trivial", "Z2", "Z5", "D4", "D6", "D12", "S4"};

}  // namespace testutil
