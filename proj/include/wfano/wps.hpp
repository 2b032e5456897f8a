#pragma once

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "qpoly.hpp"

namespace wfano {

struct WeightSystem {
    std::vector<int> weights;  // five, ascending
    int degree = 0;

    WeightSystem() = default;
    WeightSystem(std::vector<int> w, int d) : weights(std::move(w)), degree(d) {
        if (weights.size() != 5) throw std::invalid_argument("a weight system has five weights");
        for (int a : weights)
            if (a <= 0) throw std::invalid_argument("weights must be positive");
        if (degree <= 0) throw std::invalid_argument("degree must be positive");
        std::sort(weights.begin(), weights.end());
    }
    int sum() const { return std::accumulate(weights.begin(), weights.end(), 0); }
    bool operator==(const WeightSystem&) const = default;
    auto operator<=>(const WeightSystem& o) const {
        if (auto c = degree <=> o.degree; c != 0) return c;
        return weights <=> o.weights;
    }
    std::string str() const {
        std::string s = "X_" + std::to_string(degree) + " in P(";
        for (std::size_t i = 0; i < weights.size(); ++i) s += (i ? "," : "") + std::to_string(weights[i]);
        return s + ")";
    }
};

inline int gcd_of(std::initializer_list<int> xs) {
    int g = 0;
    for (int x : xs) g = std::gcd(g, x);
    return g;
}

// Ambient: every four weights coprime.
inline bool is_well_formed(const WeightSystem& ws) {
    const auto& a = ws.weights;
    for (int skip = 0; skip < 5; ++skip) {
        int g = 0;
        for (int i = 0; i < 5; ++i)
            if (i != skip) g = std::gcd(g, a[static_cast<std::size_t>(i)]);
        if (g != 1) return false;
    }
    return true;
}

// Hypersurface: additionally the gcd of any three weights divides d.
inline bool is_well_formed_hypersurface(const WeightSystem& ws) {
    if (!is_well_formed(ws)) return false;
    const auto& a = ws.weights;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
            for (std::size_t k = j + 1; k < 5; ++k)
                if (ws.degree % gcd_of({a[i], a[j], a[k]}) != 0) return false;
    return true;
}

inline int fano_index(const WeightSystem& ws) {
    int s = ws.sum();
    if (s <= ws.degree) throw std::domain_error("not Fano: sum of weights <= degree");
    return s - ws.degree;
}

inline long mod_pos(long a, long r) { return ((a % r) + r) % r; }

inline long inverse_mod(long a, long r) {
    long g0 = r, g1 = mod_pos(a, r), t0 = 0, t1 = 1;
    while (g1 != 0) {
        long q = g0 / g1;
        std::tie(g0, g1) = std::make_pair(g1, g0 - q * g1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    if (g0 != 1) throw std::domain_error("not a unit");
    return mod_pos(t0, r);
}

// 1/r (w1, w2, w3), weights reduced mod r.
struct CyclicQuotient {
    int r = 1;
    std::array<int, 3> w{0, 0, 0};

    CyclicQuotient() = default;
    CyclicQuotient(int order, std::array<long, 3> ws) : r(order) {
        if (order <= 0) throw std::invalid_argument("quotient order must be positive");
        for (std::size_t i = 0; i < 3; ++i) w[i] = static_cast<int>(mod_pos(ws[i], order));
    }

    bool is_isolated() const {
        for (int x : w)
            if (std::gcd(x, r) != 1 && r > 1) return false;
        return true;
    }
    CyclicQuotient scaled(long u) const {
        return CyclicQuotient(r, {static_cast<long>(w[0]) * u, static_cast<long>(w[1]) * u,
                                  static_cast<long>(w[2]) * u});
    }
    // Rescale so the first weight is 1 when it is a unit; otherwise unchanged.
    CyclicQuotient normalized() const {
        if (r == 1 || std::gcd(w[0], r) != 1) return *this;
        return scaled(inverse_mod(w[0], r));
    }
    // Same group action: some unit rescaling and permutation match.
    bool equivalent(const CyclicQuotient& o) const {
        if (r != o.r) return false;
        auto target = o.w;
        std::sort(target.begin(), target.end());
        for (long u = 1; u <= std::max(1, r - 1); ++u) {
            if (std::gcd(u, static_cast<long>(r)) != 1 && r > 1) continue;
            auto s = scaled(u).w;
            std::sort(s.begin(), s.end());
            if (s == target) return true;
        }
        return false;
    }
    bool operator==(const CyclicQuotient&) const = default;
    std::string str() const {
        return "1/" + std::to_string(r) + "(" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "," +
               std::to_string(w[2]) + ")";
    }
};

// Reid-Tai: every nontrivial element has age > 1.
inline bool is_terminal_cyclic(const CyclicQuotient& q) {
    if (q.r == 1) return true;
    if (!q.is_isolated()) throw std::domain_error("Reid-Tai test needs an isolated quotient");
    for (long k = 1; k < q.r; ++k) {
        long s = 0;
        for (int x : q.w) s += (k * x) % q.r;
        if (s <= q.r) return false;
    }
    return true;
}

struct StratumPoint {
    std::size_t index = 0;
    bool lies_on_X = false;
    std::optional<CyclicQuotient> quotient;
    bool unsupported = false;  // the local group does not act freely off the point
    std::size_t eliminated = 0;
};

// Monomial x_i^k x_m with nonzero coefficient in F, m != i; lowest m first.
inline std::vector<std::size_t> eliminating_variables(const QPoly& F, std::size_t i) {
    std::vector<std::size_t> out;
    for (auto& [m, c] : F.terms()) {
        int others = 0;
        std::size_t which = 0;
        for (std::size_t j = 0; j < m.e.size(); ++j)
            if (j != i && m.e[j] != 0) {
                others += m.e[j];
                which = j;
            }
        if (others == 1) out.push_back(which);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline CyclicQuotient local_quotient(const std::vector<int>& a, std::size_t i, std::size_t m) {
    std::array<long, 3> lw{};
    std::size_t k = 0;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (j != i && j != m) lw[k++] = a[j];
    return CyclicQuotient(a[i], lw);
}

// Coordinate points with a_i > 1 on the member {F = 0}; F is given in the order of ws.weights.
inline std::vector<StratumPoint> singular_points(const WeightSystem& ws, const QPoly& F) {
    if (!F.is_quasi_homogeneous(ws.degree)) throw std::invalid_argument("F is not quasi-homogeneous of degree d");
    std::vector<StratumPoint> out;
    const auto& a = ws.weights;
    for (std::size_t i = 0; i < 5; ++i) {
        if (a[i] == 1) continue;
        StratumPoint sp;
        sp.index = i;
        std::vector<int> pure(5, 0);
        bool has_pure = ws.degree % a[i] == 0;
        if (has_pure) pure[i] = ws.degree / a[i];
        sp.lies_on_X = !(has_pure && F.coeff(pure) != 0);
        if (sp.lies_on_X) {
            auto elim = eliminating_variables(F, i);
            if (elim.empty())
                throw std::domain_error("no eliminating monomial at coordinate point " + std::to_string(i) +
                                        " (member is not quasi-smooth there)");
            sp.eliminated = elim.front();
            auto q = local_quotient(a, i, sp.eliminated);
            sp.unsupported = !q.is_isolated();
            sp.quotient = q.normalized();
        }
        out.push_back(sp);
    }
    return out;
}

// Weight-only analysis of a general member, used by the enumerator.
struct GeneralSingularityVerdict {
    bool terminal = false;
    std::string reason;  // empty when terminal
};

namespace detail {

// Degree-d monomials in the two variables i, j.
inline int count_binary_monomials(const std::vector<int>& a, int d, std::size_t i, std::size_t j) {
    int n = 0;
    for (int p = 0; p * a[i] <= d; ++p)
        if ((d - p * a[i]) % a[j] == 0) ++n;
    return n;
}

}  // namespace detail

inline GeneralSingularityVerdict general_singularities(const WeightSystem& ws) {
    const auto& a = ws.weights;
    const int d = ws.degree;
    // Strata of dimension >= 2 with nontrivial stabiliser meet X in curves.
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j)
            for (std::size_t k = j + 1; k < 5; ++k)
                if (gcd_of({a[i], a[j], a[k]}) > 1)
                    return {false, "non-isolated singular stratum on a coordinate plane"};
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = i + 1; j < 5; ++j) {
            int h = std::gcd(a[i], a[j]);
            if (h == 1) continue;
            int n = detail::count_binary_monomials(a, d, i, j);
            if (n == 0) return {false, "singular coordinate line contained in X"};
            if (n >= 2) {
                std::array<long, 3> rest{};
                std::size_t t = 0;
                for (std::size_t k = 0; k < 5; ++k)
                    if (k != i && k != j) rest[t++] = a[k];
                CyclicQuotient q(h, rest);
                if (!q.is_isolated() || !is_terminal_cyclic(q))
                    return {false, "non-terminal point on singular line: " + q.str()};
            }
        }
    for (std::size_t i = 0; i < 5; ++i) {
        if (a[i] == 1 || d % a[i] == 0) continue;
        std::optional<std::size_t> m;
        for (std::size_t j = 0; j < 5 && !m; ++j)
            if (j != i && d - a[j] > 0 && (d - a[j]) % a[i] == 0) m = j;
        if (!m) return {false, "coordinate point without eliminating monomial"};
        auto q = local_quotient(a, i, *m);
        if (!q.is_isolated() || !is_terminal_cyclic(q))
            return {false, "non-terminal coordinate point: " + q.str()};
    }
    return {true, ""};
}

}  // namespace wfano
