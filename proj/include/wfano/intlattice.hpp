#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qpoly.hpp"

namespace wfano {

struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;  // row-major

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}
    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static IntMatrix from_rows(const std::vector<std::vector<long>>& r, std::size_t ncols_if_empty = 0) {
        std::size_t c = r.empty() ? ncols_if_empty : r[0].size();
        IntMatrix m(r.size(), c);
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (r[i].size() != c) throw std::invalid_argument("ragged matrix");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = r[i][j];
        }
        return m;
    }

    Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    bool operator==(const IntMatrix&) const = default;

    friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
        if (x.cols != y.rows) throw std::invalid_argument("dimension mismatch");
        IntMatrix r(x.rows, y.cols);
        for (std::size_t i = 0; i < x.rows; ++i)
            for (std::size_t k = 0; k < x.cols; ++k) {
                if (x(i, k) == 0) continue;
                for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += x(i, k) * y(k, j);
            }
        return r;
    }
    IntMatrix transpose() const {
        IntMatrix t(cols, rows);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
        return t;
    }
};

// Bareiss fraction-free determinant.
inline Int determinant(IntMatrix m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    std::size_t n = m.rows;
    if (n == 0) return 1;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

struct SmithResult {
    IntMatrix U, D, V;
    std::size_t rank = 0;
    std::vector<Int> diagonal() const {
        std::vector<Int> d;
        for (std::size_t i = 0; i < std::min(D.rows, D.cols); ++i) d.push_back(D(i, i));
        return d;
    }
};

// U*M*V = D, U and V unimodular, D diagonal with d_i | d_{i+1}, d_i >= 0.
inline SmithResult smith_normal_form(const IntMatrix& M) {
    IntMatrix D = M, U = IntMatrix::identity(M.rows), V = IntMatrix::identity(M.cols);
    const std::size_t m = M.rows, n = M.cols;
    auto row_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < n; ++c) std::swap(D(i, c), D(j, c));
        for (std::size_t c = 0; c < m; ++c) std::swap(U(i, c), U(j, c));
    };
    auto col_swap = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < m; ++r) std::swap(D(r, i), D(r, j));
        for (std::size_t r = 0; r < n; ++r) std::swap(V(r, i), V(r, j));
    };
    // row_i += f * row_j
    auto row_add = [&](std::size_t i, std::size_t j, const Int& f) {
        for (std::size_t c = 0; c < n; ++c) D(i, c) += f * D(j, c);
        for (std::size_t c = 0; c < m; ++c) U(i, c) += f * U(j, c);
    };
    auto col_add = [&](std::size_t i, std::size_t j, const Int& f) {
        for (std::size_t r = 0; r < m; ++r) D(r, i) += f * D(r, j);
        for (std::size_t r = 0; r < n; ++r) V(r, i) += f * V(r, j);
    };

    std::size_t t = 0;
    for (; t < std::min(m, n); ++t) {
        for (;;) {
            // Pivot: smallest |entry|, ties by lowest row then column.
            bool found = false;
            std::size_t pi = 0, pj = 0;
            Int best;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j) {
                    if (D(i, j) == 0) continue;
                    Int v = abs(D(i, j));
                    if (!found || v < best) { found = true; best = v; pi = i; pj = j; }
                }
            if (!found) goto done;
            row_swap(t, pi);
            col_swap(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (D(i, t) == 0) continue;
                Int q = D(i, t) / D(t, t);
                row_add(i, t, -q);
                if (D(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (D(t, j) == 0) continue;
                Int q = D(t, j) / D(t, t);
                col_add(j, t, -q);
                if (D(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // Divisibility: fold an offending row into row t and retry.
            bool divides = true;
            for (std::size_t i = t + 1; i < m && divides; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (D(i, j) % D(t, t) != 0) {
                        row_add(t, i, Int(1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (D(t, t) < 0) {
            for (std::size_t c = 0; c < n; ++c) D(t, c) = -D(t, c);
            for (std::size_t c = 0; c < m; ++c) U(t, c) = -U(t, c);
        }
    }
done:
    SmithResult res{U, D, V, 0};
    for (std::size_t i = 0; i < std::min(m, n); ++i)
        if (D(i, i) != 0) ++res.rank;
    if (!(U * M * V == D)) throw std::logic_error("SNF verification failed: U*M*V != D");
    if (abs(determinant(U)) != 1 || abs(determinant(V)) != 1)
        throw std::logic_error("SNF verification failed: transform not unimodular");
    return res;
}

inline std::map<long, int> factorize(long n) {
    std::map<long, int> f;
    n = std::labs(n);
    for (long p = 2; p * p <= n; ++p)
        while (n % p == 0) { ++f[p]; n /= p; }
    if (n > 1) ++f[n];
    return f;
}

struct AbelianGroup {
    std::vector<long> invariant_factors;  // each >= 2, d_i | d_{i+1}
    int free_rank = 0;

    // Normalise an arbitrary list of cyclic orders (1 and 0 are handled: 0 adds free rank).
    static AbelianGroup from_cyclic_orders(const std::vector<long>& orders, int free = 0) {
        std::map<long, std::vector<int>> prim;
        for (long o : orders) {
            if (o == 0) { ++free; continue; }
            for (auto [p, e] : factorize(o)) prim[p].push_back(e);
        }
        std::size_t len = 0;
        for (auto& [p, es] : prim) {
            std::sort(es.begin(), es.end(), std::greater<>());
            len = std::max(len, es.size());
        }
        std::vector<long> inv(len, 1);
        for (auto& [p, es] : prim)
            for (std::size_t i = 0; i < es.size(); ++i) {
                long q = 1;
                for (int k = 0; k < es[i]; ++k) q *= p;
                inv[len - 1 - i] *= q;
            }
        AbelianGroup g;
        for (long d : inv)
            if (d > 1) g.invariant_factors.push_back(d);
        g.free_rank = free;
        return g;
    }

    long order() const {
        long o = 1;
        for (long d : invariant_factors) o *= d;
        return o;
    }
    bool is_trivial() const { return invariant_factors.empty() && free_rank == 0; }

    // Sorted prime powers, e.g. {2,2,4,5}.
    std::vector<long> primary() const {
        std::vector<long> out;
        for (long d : invariant_factors)
            for (auto [p, e] : factorize(d)) {
                long q = 1;
                for (int k = 0; k < e; ++k) q *= p;
                out.push_back(q);
            }
        std::sort(out.begin(), out.end());
        return out;
    }

    std::string str() const {
        auto pr = primary();
        std::string s;
        for (std::size_t i = 0; i < pr.size();) {
            std::size_t j = i;
            while (j < pr.size() && pr[j] == pr[i]) ++j;
            if (!s.empty()) s += " x ";
            s += "Z" + std::to_string(pr[i]);
            if (j - i > 1) s += "^" + std::to_string(j - i);
            i = j;
        }
        if (free_rank > 0) {
            if (!s.empty()) s += " x ";
            s += "Z";
            if (free_rank > 1) s += "^" + std::to_string(free_rank);
        }
        return s.empty() ? "1" : s;
    }

    bool operator==(const AbelianGroup&) const = default;
};

// Z^n / <generators>.
inline AbelianGroup quotient_group(const std::vector<std::vector<long>>& gens, std::size_t n) {
    for (auto& g : gens)
        if (g.size() != n) throw std::invalid_argument("generator length differs from ambient rank");
    if (gens.empty()) return AbelianGroup{{}, static_cast<int>(n)};
    auto snf = smith_normal_form(IntMatrix::from_rows(gens));
    std::vector<long> orders;
    for (auto& d : snf.diagonal())
        if (d > 1) orders.push_back(static_cast<long>(d));
    AbelianGroup g = AbelianGroup::from_cyclic_orders(orders);
    g.free_rank = static_cast<int>(n - snf.rank);
    return g;
}

// Saturated basis of the integer kernel, first nonzero coordinate positive.
inline std::vector<std::vector<Int>> kernel_basis(const IntMatrix& M) {
    auto snf = smith_normal_form(M);
    std::vector<std::vector<Int>> out;
    for (std::size_t j = snf.rank; j < M.cols; ++j) {
        std::vector<Int> v(M.cols);
        for (std::size_t i = 0; i < M.cols; ++i) v[i] = snf.V(i, j);
        for (auto& x : v)
            if (x != 0) {
                if (x < 0)
                    for (auto& y : v) y = -y;
                break;
            }
        out.push_back(v);
    }
    return out;
}

}  // namespace wfano
