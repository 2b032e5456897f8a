#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "intlattice.hpp"

namespace wfano {

// Finite group as a Cayley table; element 0 is the identity.
class FiniteGroup {
public:
    FiniteGroup() : mul_{{0}} {}

    std::size_t order() const { return mul_.size(); }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    int inv(int a) const {
        for (int b = 0; b < static_cast<int>(order()); ++b)
            if (mul(a, b) == 0) return b;
        throw std::logic_error("element without inverse");
    }
    int element_order(int a) const {
        int k = 1, x = a;
        while (x != 0) {
            x = mul(x, a);
            ++k;
        }
        return k;
    }

    // Closure of a set of permutations of {0..n-1} under composition.
    static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens, std::size_t n) {
        std::vector<int> id(n);
        std::iota(id.begin(), id.end(), 0);
        std::vector<std::vector<int>> elems{id};
        std::map<std::vector<int>, int> index{{id, 0}};
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (auto& g : gens) {
                if (g.size() != n) throw std::invalid_argument("permutation of wrong length");
                auto c = compose(g, elems[i]);
                if (!index.count(c)) {
                    index[c] = static_cast<int>(elems.size());
                    elems.push_back(c);
                }
            }
        return from_elements(elems, [](const std::vector<int>& a, const std::vector<int>& b) { return compose(a, b); });
    }

    static FiniteGroup cyclic(int n) {
        if (n < 1) throw std::invalid_argument("cyclic order must be positive");
        FiniteGroup g;
        g.mul_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) g.mul_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
        return g;
    }

    static FiniteGroup abelian(const AbelianGroup& a) {
        if (a.free_rank != 0) throw std::invalid_argument("infinite abelian group");
        FiniteGroup g;
        for (long d : a.invariant_factors) g = direct_product(g, cyclic(static_cast<int>(d)));
        return g;
    }

    static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
        int na = static_cast<int>(a.order()), nb = static_cast<int>(b.order());
        FiniteGroup g;
        g.mul_.assign(static_cast<std::size_t>(na * nb), std::vector<int>(static_cast<std::size_t>(na * nb)));
        for (int x = 0; x < na * nb; ++x)
            for (int y = 0; y < na * nb; ++y)
                g.mul_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
                    a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
        return g;
    }

    // N x| H with act(h, n) the image of n under h; elements are pairs (n, h).
    static FiniteGroup semidirect(const FiniteGroup& n, const FiniteGroup& h, const std::function<int(int, int)>& act) {
        int nn = static_cast<int>(n.order()), nh = static_cast<int>(h.order());
        FiniteGroup g;
        g.mul_.assign(static_cast<std::size_t>(nn * nh), std::vector<int>(static_cast<std::size_t>(nn * nh)));
        for (int x = 0; x < nn * nh; ++x)
            for (int y = 0; y < nn * nh; ++y) {
                int n1 = x / nh, h1 = x % nh, n2 = y / nh, h2 = y % nh;
                g.mul_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
                    n.mul(n1, act(h1, n2)) * nh + h.mul(h1, h2);
            }
        if (!g.is_associative()) throw std::logic_error("semidirect product action is not a homomorphism");
        return g;
    }

    template <class T, class Op>
    static FiniteGroup from_elements(const std::vector<T>& elems, Op op) {
        std::map<T, int> index;
        for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i]] = static_cast<int>(i);
        FiniteGroup g;
        g.mul_.assign(elems.size(), std::vector<int>(elems.size()));
        for (std::size_t a = 0; a < elems.size(); ++a)
            for (std::size_t b = 0; b < elems.size(); ++b) {
                auto it = index.find(op(elems[a], elems[b]));
                if (it == index.end()) throw std::logic_error("element set is not closed");
                g.mul_[a][b] = it->second;
            }
        return g;
    }

    static std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
        return c;
    }

    bool is_associative() const {
        int n = static_cast<int>(order());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
        return true;
    }
    bool is_abelian() const {
        int n = static_cast<int>(order());
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (mul(a, b) != mul(b, a)) return false;
        return true;
    }

    // Subgroup generated by a set (closure under multiplication in a finite group).
    std::vector<int> generated(const std::vector<int>& gens) const {
        std::set<int> s{0};
        std::vector<int> q{0};
        for (std::size_t i = 0; i < q.size(); ++i)
            for (int g : gens) {
                int c = mul(q[i], g);
                if (s.insert(c).second) q.push_back(c);
            }
        return {s.begin(), s.end()};
    }

    std::vector<int> derived_subgroup() const {
        std::set<int> comms;
        int n = static_cast<int>(order());
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) comms.insert(mul(mul(inv(a), inv(b)), mul(a, b)));
        return generated({comms.begin(), comms.end()});
    }

    std::size_t center_size() const {
        std::size_t c = 0;
        int n = static_cast<int>(order());
        for (int a = 0; a < n; ++a) {
            bool central = true;
            for (int b = 0; b < n && central; ++b) central = mul(a, b) == mul(b, a);
            if (central) ++c;
        }
        return c;
    }

    std::map<int, int> order_histogram() const {
        std::map<int, int> h;
        for (int a = 0; a < static_cast<int>(order()); ++a) ++h[element_order(a)];
        return h;
    }

    // Invariants of G / [G, G].
    AbelianGroup abelianization() const {
        auto d = derived_subgroup();
        std::set<int> dset(d.begin(), d.end());
        // Cosets a[G,G]; record the order of each coset in the quotient.
        std::map<std::set<int>, int> cosets;
        for (int a = 0; a < static_cast<int>(order()); ++a) {
            std::set<int> c;
            for (int x : d) c.insert(mul(a, x));
            if (cosets.count(c)) continue;
            int k = 1, y = a;
            while (!dset.count(y)) {
                y = mul(y, a);
                ++k;
            }
            cosets[c] = k;
        }
        std::map<int, int> hist;
        for (auto& [c, k] : cosets) ++hist[k];
        return abelian_from_histogram(hist, cosets.size());
    }

    // The abelian group of the given order whose element-order histogram matches.
    static AbelianGroup abelian_from_histogram(const std::map<int, int>& hist, std::size_t n) {
        for (auto& cand : abelian_groups_of_order(static_cast<long>(n)))
            if (FiniteGroup::abelian(cand).order_histogram() == hist) return cand;
        throw std::logic_error("no abelian group matches the order histogram");
    }

    static std::vector<AbelianGroup> abelian_groups_of_order(long n) {
        std::vector<std::vector<long>> per_prime_options{{}};
        for (auto [p, e] : factorize(n)) {
            std::vector<std::vector<long>> parts;
            std::function<void(int, int, std::vector<long>&)> rec = [&](int left, int maxpart, std::vector<long>& cur) {
                if (left == 0) {
                    parts.push_back(cur);
                    return;
                }
                for (int k = std::min(left, maxpart); k >= 1; --k) {
                    long q = 1;
                    for (int i = 0; i < k; ++i) q *= p;
                    cur.push_back(q);
                    rec(left - k, k, cur);
                    cur.pop_back();
                }
            };
            std::vector<long> cur;
            rec(e, e, cur);
            std::vector<std::vector<long>> next;
            for (auto& base : per_prime_options)
                for (auto& pp : parts) {
                    auto b = base;
                    b.insert(b.end(), pp.begin(), pp.end());
                    next.push_back(b);
                }
            per_prime_options = next;
        }
        std::vector<AbelianGroup> out;
        for (auto& o : per_prime_options) out.push_back(AbelianGroup::from_cyclic_orders(o));
        return out;
    }

private:
    std::vector<std::vector<int>> mul_;
};

// Isomorphism invariants used for comparison; distinguishes all groups that arise here.
struct GroupSignature {
    std::size_t order = 1;
    std::map<int, int> order_histogram;
    std::size_t center = 1;
    std::size_t derived = 1;
    AbelianGroup abelianization;
    bool operator==(const GroupSignature&) const = default;
};

inline GroupSignature signature(const FiniteGroup& g) {
    return {g.order(), g.order_histogram(), g.center_size(), g.derived_subgroup().size(), g.abelianization()};
}

inline bool isomorphic(const FiniteGroup& a, const FiniteGroup& b) { return signature(a) == signature(b); }

namespace named {

inline FiniteGroup symmetric(int n) {
    std::vector<int> cyc(static_cast<std::size_t>(n)), tr(static_cast<std::size_t>(n));
    std::iota(tr.begin(), tr.end(), 0);
    for (int i = 0; i < n; ++i) cyc[static_cast<std::size_t>(i)] = (i + 1) % n;
    std::swap(tr[0], tr[1]);
    return FiniteGroup::from_permutations({cyc, tr}, static_cast<std::size_t>(n));
}

inline FiniteGroup alternating(int n) {
    std::vector<std::vector<int>> gens;
    for (int i = 2; i < n; ++i) {
        std::vector<int> c(static_cast<std::size_t>(n));
        std::iota(c.begin(), c.end(), 0);
        c[0] = 1;
        c[1] = i;
        c[static_cast<std::size_t>(i)] = 0;
        gens.push_back(c);
    }
    return FiniteGroup::from_permutations(gens, static_cast<std::size_t>(n));
}

// Dihedral group of the given order (2m), acting on an m-gon.
inline FiniteGroup dihedral(int order) {
    int m = order / 2;
    if (order % 2 != 0 || m < 2) throw std::invalid_argument("dihedral order must be even and >= 4");
    std::vector<int> rot(static_cast<std::size_t>(m)), ref(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        rot[static_cast<std::size_t>(i)] = (i + 1) % m;
        ref[static_cast<std::size_t>(i)] = (m - i) % m;
    }
    if (m == 2) return FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    return FiniteGroup::from_permutations({rot, ref}, static_cast<std::size_t>(m));
}

// Names use the convention D_n = dihedral of order n.
inline FiniteGroup by_name(const std::string& s) {
    if (s == "S3" || s == "D6") return symmetric(3);
    if (s == "S4") return symmetric(4);
    if (s == "A4") return alternating(4);
    if (s == "A5") return alternating(5);
    if (s == "D4") return dihedral(4);
    if (s.size() > 1 && s[0] == 'D') return dihedral(std::stoi(s.substr(1)));
    if (s.size() > 1 && s[0] == 'Z') return FiniteGroup::cyclic(std::stoi(s.substr(1)));
    if (s == "1" || s == "trivial") return FiniteGroup{};
    throw std::invalid_argument("unknown group name '" + s + "'");
}

}  // namespace named

// Abelian invariants plus named nonabelian factors, combined as a direct product.
struct GroupDescription {
    AbelianGroup abelian;
    std::vector<std::string> named_factors;
    std::string symbolic;  // nonempty when no concrete group is available

    FiniteGroup build() const {
        if (!symbolic.empty()) throw std::logic_error("symbolic group has no concrete model");
        FiniteGroup g = FiniteGroup::abelian(abelian);
        for (auto& n : named_factors) g = FiniteGroup::direct_product(g, named::by_name(n));
        return g;
    }

    std::string str() const {
        if (!symbolic.empty()) return symbolic;
        std::string s;
        for (auto& n : named_factors) s += (s.empty() ? "" : " x ") + n;
        if (!abelian.is_trivial() || s.empty()) {
            std::string a = abelian.str();
            if (s.empty()) return a;
            if (a != "1") s += " x " + a;
        }
        return s;
    }
};

// Describe g as N x A with N from a fixed list of nonabelian groups and A abelian.
inline GroupDescription describe(const FiniteGroup& g) {
    auto sig = signature(g);
    if (g.is_abelian()) return {sig.abelianization, {}, ""};
    for (const char* nm : {"S3", "D8", "A4", "D12", "S4", "A5", "D10"}) {
        FiniteGroup n = named::by_name(nm);
        if (g.order() % n.order() != 0) continue;
        // G = N x A forces G^ab = N^ab x A; try every abelian A of the right order.
        for (auto& a : FiniteGroup::abelian_groups_of_order(static_cast<long>(g.order() / n.order()))) {
            auto cand = FiniteGroup::direct_product(n, FiniteGroup::abelian(a));
            if (signature(cand) == sig) return {a, {nm}, ""};
        }
    }
    return {{}, {}, "nonabelian group of order " + std::to_string(g.order())};
}

}  // namespace wfano
