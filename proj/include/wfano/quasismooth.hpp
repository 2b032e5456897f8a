#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "qpoly.hpp"
#include "upoly.hpp"
#include "wps.hpp"

namespace wfano {

enum class QsStatus { QUASI_SMOOTH, NOT_QUASI_SMOOTH, LINEAR_CONE, UNSUPPORTED };

inline const char* to_string(QsStatus s) {
    switch (s) {
        case QsStatus::QUASI_SMOOTH: return "QUASI_SMOOTH";
        case QsStatus::NOT_QUASI_SMOOTH: return "NOT_QUASI_SMOOTH";
        case QsStatus::LINEAR_CONE: return "LINEAR_CONE";
        case QsStatus::UNSUPPORTED: return "UNSUPPORTED";
    }
    return "?";
}

struct QsVerdict {
    QsStatus status = QsStatus::UNSUPPORTED;
    std::optional<std::string> witness;  // always set for NOT_QUASI_SMOOTH
    std::string method;                  // how the verdict was certified
};

namespace detail {

// Is n a nonnegative combination of ws?
inline bool representable(int n, const std::vector<int>& ws) {
    if (n < 0) return false;
    std::vector<char> ok(static_cast<std::size_t>(n) + 1, 0);
    ok[0] = 1;
    for (int v = 1; v <= n; ++v)
        for (int w : ws)
            if (w <= v && ok[static_cast<std::size_t>(v - w)]) {
                ok[static_cast<std::size_t>(v)] = 1;
                break;
            }
    return ok[static_cast<std::size_t>(n)];
}

}  // namespace detail

// Monomial criterion for the general member: for every nonempty coordinate subset I,
// either a degree-d monomial lives in I, or |I| distinct outside variables x_e admit
// degree-d monomials x_I^M x_e.
inline QsVerdict general_member_quasismooth(const WeightSystem& ws) {
    const auto& a = ws.weights;
    const int d = ws.degree;
    for (int x : a)
        if (x == d) return {QsStatus::LINEAR_CONE, std::nullopt, "d equals a weight"};
    for (unsigned mask = 1; mask < 32u; ++mask) {
        std::vector<int> aI;
        for (std::size_t i = 0; i < 5; ++i)
            if (mask & (1u << i)) aI.push_back(a[i]);
        if (detail::representable(d, aI)) continue;
        std::size_t k = aI.size(), cnt = 0;
        for (std::size_t e = 0; e < 5; ++e)
            if (!(mask & (1u << e)) && detail::representable(d - a[e], aI)) ++cnt;
        if (cnt < k) {
            std::string s = "coordinate stratum {";
            bool first = true;
            for (std::size_t i = 0; i < 5; ++i)
                if (mask & (1u << i)) {
                    s += (first ? "" : ",") + std::to_string(i);
                    first = false;
                }
            return {QsStatus::NOT_QUASI_SMOOTH, s + "}", "monomial criterion"};
        }
    }
    return {QsStatus::QUASI_SMOOTH, std::nullopt, "monomial criterion"};
}

namespace detail {

// Every partial restricted to the coordinate line x_i, x_j (others zero), at x_i = 1, as univariate in x_j.
inline UPoly line_gcd(const std::vector<QPoly>& partials, std::size_t i, std::size_t j) {
    UPoly g;
    for (const auto& p : partials) {
        std::vector<Rational> coef;
        for (auto& [m, c] : p.terms()) {
            bool on_line = true;
            for (std::size_t k = 0; k < m.e.size(); ++k)
                if (k != i && k != j && m.e[k] != 0) on_line = false;
            if (!on_line) continue;
            auto e = static_cast<std::size_t>(m.e[j]);
            if (coef.size() <= e) coef.resize(e + 1, Rational(0));
            coef[e] += c;
        }
        g = upoly_gcd(g, UPoly(coef));
        if (g.degree() == 0) break;
    }
    return g;
}

// Strip factors of u from g.
inline UPoly strip_zero_root(UPoly g) {
    std::size_t k = 0;
    while (k < g.c.size() && g.c[k] == 0) ++k;
    g.c.erase(g.c.begin(), g.c.begin() + static_cast<std::ptrdiff_t>(k));
    return g;
}

inline std::uint64_t to_mod(const Rational& q, std::uint64_t p, bool& bad) {
    Int n = numer(q) % p, dd = denom(q) % p;
    if (n < 0) n += p;
    if (dd == 0) {
        bad = true;
        return 0;
    }
    auto powmod = [p](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1u) r = r * b % p;
            b = b * b % p;
            e >>= 1u;
        }
        return r;
    };
    return static_cast<std::uint64_t>(n) * powmod(static_cast<std::uint64_t>(dd), p - 2) % p;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

// Columns of the multiplication map sum_i S_{e-deg(P_i)} -> S_e, (g_i) -> sum g_i P_i.
inline QMatrix jacobian_graded_matrix(const std::vector<QPoly>& partials, const std::vector<int>& w, long d, long e,
                                      std::size_t& nrows) {
    auto target = monomials_of_degree(w, e);
    std::map<std::vector<int>, std::size_t> row_of;
    for (std::size_t r = 0; r < target.size(); ++r) row_of[target[r].e] = r;
    nrows = target.size();
    QMatrix cols;
    for (std::size_t i = 0; i < partials.size(); ++i) {
        if (partials[i].is_zero()) continue;
        long shift = e - (d - w[i]);
        for (auto& mono : monomials_of_degree(w, shift)) {
            QVector col(nrows, Rational(0));
            for (auto& [m, c] : partials[i].terms()) {
                std::vector<int> ex = m.e;
                for (std::size_t k = 0; k < ex.size(); ++k) ex[k] += mono.e[k];
                col[row_of.at(ex)] += c;
            }
            cols.push_back(std::move(col));
        }
    }
    return cols;
}

}  // namespace detail

// Exact checks on coordinate points and lines; elsewhere the Jacobian ideal J is certified
// to contain every monomial of degree e_i (the first multiple of a_i above the socle degree
// sum(d - 2 a_i)), which holds iff J is irrelevant. Ranks are taken modulo seeded primes
// near 2^31 (full rank there is a proof) with an exact rational fallback.
inline QsVerdict member_quasismooth(const WeightSystem& ws, const QPoly& F, std::uint64_t seed = 0x5eed) {
    if (!F.is_quasi_homogeneous(ws.degree)) throw std::invalid_argument("F is not quasi-homogeneous of degree d");
    const auto& a = ws.weights;
    const long d = ws.degree;
    std::vector<QPoly> partials;
    for (std::size_t i = 0; i < 5; ++i) partials.push_back(F.partial(i));

    // Coordinate points: some monomial x_i^k x_j must be present.
    for (std::size_t i = 0; i < 5; ++i) {
        bool ok = false;
        for (auto& [m, c] : F.terms()) {
            int others = 0;
            for (std::size_t j = 0; j < 5; ++j)
                if (j != i) others += m.e[j];
            if (others <= 1) ok = true;
        }
        if (!ok)
            return {QsStatus::NOT_QUASI_SMOOTH, "coordinate point p_" + F.vars()[i].name, "exact coordinate point"};
    }
    // Coordinate lines, points with both coordinates nonzero.
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) {
            UPoly g = detail::strip_zero_root(detail::line_gcd(partials, i, j));
            if (g.degree() > 0)
                return {QsStatus::NOT_QUASI_SMOOTH,
                        "coordinate line (" + F.vars()[i].name + ":" + F.vars()[j].name + ")", "exact coordinate line"};
        }

    long sigma = 0;
    for (int x : a) sigma += d - 2 * x;
    std::mt19937_64 rng(seed);
    std::vector<long> degrees;
    for (int x : a) {
        long e = (sigma / x + 1) * x;
        if (e <= 0) e = x;
        if (std::find(degrees.begin(), degrees.end(), e) == degrees.end()) degrees.push_back(e);
    }
    for (long e : degrees) {
        std::size_t nrows = 0;
        QMatrix cols = detail::jacobian_graded_matrix(partials, a, d, e, nrows);
        if (cols.size() < nrows)
            return {QsStatus::NOT_QUASI_SMOOTH, "Jacobian ideal misses degree " + std::to_string(e),
                    "graded dimension count"};
        bool certified = false;
        for (int attempt = 0; attempt < 3 && !certified; ++attempt) {
            std::uint64_t p = (1ull << 31) - 1 - (rng() % (1ull << 20));
            while (!detail::is_prime(p)) --p;
            bool bad = false;
            std::vector<std::vector<std::uint64_t>> m(cols.size(), std::vector<std::uint64_t>(nrows));
            for (std::size_t c = 0; c < cols.size(); ++c)
                for (std::size_t r = 0; r < nrows; ++r) m[c][r] = detail::to_mod(cols[c][r], p, bad);
            if (bad) continue;  // denominator divisible by p: try another prime
            if (rank_mod_p(std::move(m), p) == nrows) certified = true;
        }
        if (!certified && rank(cols) < nrows)
            return {QsStatus::NOT_QUASI_SMOOTH, "Jacobian ideal misses degree " + std::to_string(e),
                    "exact graded rank"};
    }
    return {QsStatus::QUASI_SMOOTH, std::nullopt, "exact strata plus graded Jacobian rank"};
}

}  // namespace wfano
