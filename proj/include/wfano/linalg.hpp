#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qpoly.hpp"

namespace wfano {

using QMatrix = std::vector<std::vector<Rational>>;
using QVector = std::vector<Rational>;

// In-place reduced row echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(QMatrix& a, std::size_t ncols) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t p = r;
        while (p < a.size() && a[p][c] == 0) ++p;
        if (p == a.size()) continue;
        std::swap(a[p], a[r]);
        Rational inv = 1 / a[r][c];
        for (std::size_t j = c; j < ncols; ++j) a[r][j] *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (std::size_t j = c; j < ncols; ++j)
                if (a[r][j] != 0) a[i][j] -= f * a[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    a.resize(r);
    return piv;
}

inline std::size_t rank(QMatrix a) {
    if (a.empty()) return 0;
    return rref(a, a[0].size()).size();
}

// Basis of {v : A v = 0}; one vector per free column.
inline std::vector<QVector> nullspace(QMatrix a, std::size_t ncols) {
    auto piv = rref(a, ncols);
    std::vector<bool> is_piv(ncols, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<QVector> basis;
    for (std::size_t f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        QVector v(ncols, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -a[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Incremental span membership with an echelon basis.
class Span {
public:
    explicit Span(std::size_t dim) : dim_(dim) {}

    // Returns true if v was independent (and adds it).
    bool add(QVector v) {
        reduce(v);
        std::size_t p = 0;
        while (p < dim_ && v[p] == 0) ++p;
        if (p == dim_) return false;
        Rational inv = 1 / v[p];
        for (auto& x : v) x *= inv;
        for (auto& [q, row] : rows_) {
            if (row[p] == 0) continue;
            Rational f = row[p];
            for (std::size_t j = 0; j < dim_; ++j) row[j] -= f * v[j];
        }
        rows_.emplace_back(p, std::move(v));
        return true;
    }
    bool contains(QVector v) const {
        reduce(v);
        for (auto& x : v)
            if (x != 0) return false;
        return true;
    }
    std::size_t rank() const { return rows_.size(); }
    std::size_t dim() const { return dim_; }

private:
    void reduce(QVector& v) const {
        for (auto& [p, row] : rows_) {
            if (v[p] == 0) continue;
            Rational f = v[p];
            for (std::size_t j = 0; j < dim_; ++j)
                if (row[j] != 0) v[j] -= f * row[j];
        }
    }
    std::size_t dim_;
    std::vector<std::pair<std::size_t, QVector>> rows_;
};

// Rank over F_p for p < 2^32.
inline std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> a, std::uint64_t p) {
    auto powmod = [p](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1u) r = r * b % p;
            b = b * b % p;
            e >>= 1u;
        }
        return r;
    };
    if (a.empty()) return 0;
    std::size_t ncols = a[0].size(), r = 0;
    for (std::size_t c = 0; c < ncols && r < a.size(); ++c) {
        std::size_t q = r;
        while (q < a.size() && a[q][c] % p == 0) ++q;
        if (q == a.size()) continue;
        std::swap(a[q], a[r]);
        std::uint64_t inv = powmod(a[r][c], p - 2);
        for (std::size_t j = c; j < ncols; ++j) a[r][j] = a[r][j] * inv % p;
        for (std::size_t i = r + 1; i < a.size(); ++i) {
            std::uint64_t f = a[i][c] % p;
            if (!f) continue;
            for (std::size_t j = c; j < ncols; ++j) a[i][j] = (a[i][j] + (p - f) * a[r][j]) % p;
        }
        ++r;
    }
    return r;
}

}  // namespace wfano
