#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "famenum.hpp"
#include "groups.hpp"
#include "intlattice.hpp"
#include "linalg.hpp"
#include "mobius.hpp"
#include "qpoly.hpp"

namespace wfano {

// ---------- connected component ----------

// Graded derivation sum_j g_j d/dx_j with deg g_j = a_j.
using VectorField = std::vector<QPoly>;

inline QPoly apply_field(const VectorField& v, const QPoly& p) {
    QPoly r(p.vars());
    for (std::size_t j = 0; j < v.size(); ++j)
        if (!v[j].is_zero()) r += v[j] * p.partial(j);
    return r;
}

inline VectorField bracket(const VectorField& a, const VectorField& b) {
    VectorField r;
    for (std::size_t j = 0; j < a.size(); ++j) r.push_back(apply_field(a, b[j]) - apply_field(b, a[j]));
    return r;
}

// Coordinates of graded derivations: one slot per (variable, monomial of its weight).
struct DerivationLayout {
    VarTable vars;
    std::vector<std::pair<std::size_t, Monomial>> slots;
    std::map<std::pair<std::size_t, std::vector<int>>, std::size_t> index;

    explicit DerivationLayout(const VarTable& v, bool diagonal_only = false) : vars(v) {
        std::vector<int> w;
        for (auto& x : v) w.push_back(x.weight);
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (diagonal_only) {
                std::vector<int> e(v.size(), 0);
                e[j] = 1;
                add(j, Monomial{e});
                continue;
            }
            for (auto& m : monomials_of_degree(w, w[j])) add(j, m);
        }
    }
    void add(std::size_t j, const Monomial& m) {
        index[{j, m.e}] = slots.size();
        slots.emplace_back(j, m);
    }
    VectorField field(const QVector& c) const {
        VectorField v(vars.size(), QPoly(vars));
        for (std::size_t s = 0; s < slots.size(); ++s)
            if (c[s] != 0) v[slots[s].first].add_term(slots[s].second, c[s]);
        return v;
    }
    std::optional<QVector> coords(const VectorField& v) const {
        QVector c(slots.size(), Rational(0));
        for (std::size_t j = 0; j < v.size(); ++j)
            for (auto& [m, k] : v[j].terms()) {
                auto it = index.find({j, m.e});
                if (it == index.end()) return std::nullopt;
                c[it->second] = k;
            }
        return c;
    }
};

// Graded derivations v with v(F) = lambda F; the Euler field is always among them.
struct DerivationSpace {
    DerivationLayout layout;
    std::vector<VectorField> basis;
    std::vector<Rational> eigenvalues;  // lambda for each basis element
};

inline DerivationSpace derivation_space(const QPoly& F, bool diagonal_only = false) {
    DerivationLayout lay(F.vars(), diagonal_only);
    auto d = F.weighted_degree();
    if (!d) throw std::invalid_argument("F is not quasi-homogeneous");
    std::map<std::vector<int>, std::size_t> row_of;
    for (auto& m : monomials_of_degree(F.weights(), *d)) row_of.emplace(m.e, row_of.size());
    std::size_t n = lay.slots.size() + 1;  // last unknown is lambda
    QMatrix A(row_of.size(), QVector(n, Rational(0)));
    std::vector<QPoly> partials;
    for (std::size_t j = 0; j < F.nvars(); ++j) partials.push_back(F.partial(j));
    for (std::size_t s = 0; s < lay.slots.size(); ++s) {
        auto& [j, mono] = lay.slots[s];
        for (auto& [m, c] : partials[j].terms()) {
            std::vector<int> e = m.e;
            for (std::size_t k = 0; k < e.size(); ++k) e[k] += mono.e[k];
            A[row_of.at(e)][s] += c;
        }
    }
    for (auto& [m, c] : F.terms()) A[row_of.at(m.e)][n - 1] -= c;
    DerivationSpace ds{lay, {}, {}};
    for (auto& v : nullspace(A, n)) {
        QVector c(v.begin(), v.end() - 1);
        ds.basis.push_back(lay.field(c));
        ds.eigenvalues.push_back(v.back());
    }
    return ds;
}

struct ConnectedStructure {
    int dim = 0;  // dim Aut^0(X)
    int N = 0;    // unipotent radical dimension
    int M = 0;    // maximal torus rank
    bool solvable = true;
    bool semidirect_nontrivial = false;
    std::vector<int> derived_dims;  // dims of the derived series of the full stabiliser algebra

    std::string str() const {
        if (!solvable) return "non-solvable of dimension " + std::to_string(dim);
        auto pw = [](const char* g, int k) { return std::string(g) + (k > 1 ? "^" + std::to_string(k) : ""); };
        if (N == 0 && M == 0) return "1";
        if (N == 0) return pw("Gm", M);
        if (M == 0) return pw("Ga", N);
        return pw("Ga", N) + (semidirect_nontrivial ? " x| " : " x ") + pw("Gm", M);
    }
};

namespace detail {

inline std::vector<QVector> span_basis(const std::vector<QVector>& vs) {
    if (vs.empty()) return {};
    QMatrix a = vs;
    auto piv = rref(a, a[0].size());
    a.resize(piv.size());
    return a;
}

}  // namespace detail

inline ConnectedStructure connected_structure(const QPoly& F) {
    auto full = derivation_space(F);
    auto diag = derivation_space(F, true);
    ConnectedStructure cs;
    cs.dim = static_cast<int>(full.basis.size()) - 1;
    cs.M = static_cast<int>(diag.basis.size()) - 1;
    cs.N = cs.dim - cs.M;

    const auto& lay = full.layout;
    std::vector<QVector> cur;
    for (auto& v : full.basis) cur.push_back(*lay.coords(v));
    cur = detail::span_basis(cur);
    cs.derived_dims.push_back(static_cast<int>(cur.size()));
    while (!cur.empty()) {
        std::vector<QVector> next;
        for (std::size_t i = 0; i < cur.size(); ++i)
            for (std::size_t j = i + 1; j < cur.size(); ++j) {
                auto c = lay.coords(bracket(lay.field(cur[i]), lay.field(cur[j])));
                if (!c) throw std::logic_error("bracket left the graded derivations");
                next.push_back(*c);
            }
        next = detail::span_basis(next);
        if (next.size() == cur.size()) break;
        cur = next;
        cs.derived_dims.push_back(static_cast<int>(cur.size()));
    }
    cs.solvable = cur.empty();

    for (auto& d : diag.basis)
        for (auto& v : full.basis) {
            auto b = bracket(d, v);
            if (std::any_of(b.begin(), b.end(), [](const QPoly& p) { return !p.is_zero(); })) {
                cs.semidirect_nontrivial = true;
                break;
            }
        }
    return cs;
}

// ---------- finite part ----------

// Diagonal scalings exp(2 pi i theta_a) of the chosen variables that fix F exactly.
struct DiagonalPart {
    std::vector<std::size_t> vars;  // lattice variable indices
    std::vector<long> orders;       // cyclic factors of the finite part, d_i > 1
    int torus_rank = 0;             // contributes to Aut^0
    IntMatrix V;                    // theta = V psi
    std::vector<std::size_t> positions;  // SNF positions of the finite factors
    FiniteGroup group;

    // Element index -> digits j_i (mixed radix, last factor least significant).
    std::vector<long> digits(int idx) const {
        std::vector<long> j(orders.size());
        for (std::size_t i = orders.size(); i-- > 0;) {
            j[i] = idx % orders[i];
            idx /= static_cast<int>(orders[i]);
        }
        return j;
    }
    int index_of(const std::vector<long>& j) const {
        long idx = 0;
        for (std::size_t i = 0; i < orders.size(); ++i) idx = idx * orders[i] + mod_pos(j[i], orders[i]);
        return static_cast<int>(idx);
    }
    // theta in [0,1) for each lattice variable.
    std::vector<Rational> theta(int idx) const {
        auto j = digits(idx);
        std::size_t k = vars.size();
        std::vector<Rational> psi(k, Rational(0)), th(k, Rational(0));
        for (std::size_t i = 0; i < orders.size(); ++i) psi[positions[i]] = Rational(j[i], orders[i]);
        for (std::size_t a = 0; a < k; ++a) {
            for (std::size_t b = 0; b < k; ++b) th[a] += Rational(V(a, b)) * psi[b];
            th[a] -= Rational(Int(numer(th[a]) / denom(th[a])));
            if (th[a] < 0) th[a] += 1;
        }
        return th;
    }
};

namespace detail {

inline std::vector<std::vector<Rational>> inverse(const IntMatrix& V) {
    std::size_t n = V.rows;
    QMatrix a(n, QVector(2 * n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(V(i, j));
        a[i][n + i] = 1;
    }
    auto piv = rref(a, 2 * n);
    if (piv.size() != n || piv.back() != n - 1) throw std::domain_error("singular matrix");
    std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = a[i][n + j];
    return inv;
}

inline std::size_t var_index(const VarTable& vars, const std::string& name) {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == name) return i;
    throw std::invalid_argument("unknown variable '" + name + "'");
}

}  // namespace detail

inline DiagonalPart diagonal_finite_part(const QPoly& F, const std::vector<std::size_t>& vars) {
    DiagonalPart dp;
    dp.vars = vars;
    std::size_t k = vars.size();
    std::vector<std::vector<long>> rows;
    for (auto& [m, c] : F.terms()) {
        std::vector<long> r;
        bool nonzero = false;
        for (auto v : vars) {
            r.push_back(m.e[v]);
            nonzero = nonzero || m.e[v] != 0;
        }
        if (nonzero && std::find(rows.begin(), rows.end(), r) == rows.end()) rows.push_back(r);
    }
    if (rows.empty()) {
        dp.torus_rank = static_cast<int>(k);
        dp.V = IntMatrix::identity(k);
        return dp;
    }
    auto snf = smith_normal_form(IntMatrix::from_rows(rows));
    dp.V = snf.V;
    auto diag = snf.diagonal();
    for (std::size_t i = 0; i < snf.rank; ++i)
        if (diag[i] > 1) {
            dp.orders.push_back(static_cast<long>(diag[i]));
            dp.positions.push_back(i);
        }
    dp.torus_rank = static_cast<int>(k - snf.rank);
    for (long d : dp.orders) dp.group = FiniteGroup::direct_product(dp.group, FiniteGroup::cyclic(static_cast<int>(d)));
    return dp;
}

// Closure of variable permutations that fix F exactly; identity first.
inline std::vector<std::vector<int>> permutation_group(const QPoly& F, const std::vector<std::vector<int>>& gens) {
    std::size_t n = F.nvars();
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> elems{id};
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (auto& g : gens) {
            auto c = FiniteGroup::compose(g, elems[i]);
            if (std::find(elems.begin(), elems.end(), c) == elems.end()) elems.push_back(c);
        }
    return elems;
}

inline QPoly permute_vars(const QPoly& F, const std::vector<int>& p) {
    std::map<std::size_t, QPoly> img;
    for (std::size_t i = 0; i < p.size(); ++i) img.emplace(i, QPoly::var(F.vars(), static_cast<std::size_t>(p[i])));
    return F.substitute(img);
}

// T_fin x| P with P acting on theta by relabelling lattice variables.
inline FiniteGroup lattice_with_permutations(const DiagonalPart& dp, const std::vector<std::vector<int>>& perms) {
    if (perms.size() <= 1) return dp.group;
    std::size_t k = dp.vars.size();
    auto Vinv = detail::inverse(dp.V);
    std::vector<std::size_t> slot(perms[0].size(), k);
    for (std::size_t a = 0; a < k; ++a) slot[dp.vars[a]] = a;
    for (auto& p : perms)
        for (std::size_t a = 0; a < k; ++a)
            if (slot[static_cast<std::size_t>(p[dp.vars[a]])] == k)
                throw std::invalid_argument("permutation moves a lattice variable outside the lattice");
    // act(h, n): relabel theta, back to psi, read off the finite digits.
    std::map<std::pair<int, int>, int> table;
    int nn = static_cast<int>(dp.group.order());
    for (int h = 0; h < static_cast<int>(perms.size()); ++h)
        for (int n = 0; n < nn; ++n) {
            auto th = dp.theta(n);
            std::vector<Rational> th2(k);
            for (std::size_t a = 0; a < k; ++a) th2[slot[static_cast<std::size_t>(perms[static_cast<std::size_t>(h)][dp.vars[a]])]] = th[a];
            std::vector<long> j(dp.orders.size());
            for (std::size_t i = 0; i < dp.orders.size(); ++i) {
                Rational psi = 0;
                for (std::size_t b = 0; b < k; ++b) psi += Vinv[dp.positions[i]][b] * th2[b];
                Rational scaled = psi * dp.orders[i];
                if (denom(scaled) != 1) throw std::logic_error("relabelled scaling is not in the finite part");
                j[i] = static_cast<long>(numer(scaled) % dp.orders[i]);
            }
            table[{h, n}] = dp.index_of(j);
        }
    FiniteGroup H = FiniteGroup::from_elements(perms, [](const std::vector<int>& a, const std::vector<int>& b) {
        return FiniteGroup::compose(a, b);
    });
    return FiniteGroup::semidirect(dp.group, H, [&](int h, int n) { return table.at({h, n}); });
}

// Stabiliser in PGL2 of the primary block form that lifts to fix every block form exactly.
struct BlockStabilizer {
    MobiusStabilizer primary;
    std::vector<std::size_t> surviving;
    FiniteGroup group;
};

inline BlockStabilizer block_stabilizer(const QPoly& F, std::size_t u, std::size_t v, std::size_t p) {
    std::map<int, QPoly> forms;  // power of p -> binary form in u, v
    for (auto& [m, c] : F.terms()) {
        bool inside = true;
        for (std::size_t i = 0; i < m.e.size(); ++i)
            if (i != u && i != v && i != p && m.e[i] != 0) inside = false;
        if (!inside) continue;
        std::vector<int> e = m.e;
        int k = e[p];
        e[p] = 0;
        forms.try_emplace(k, QPoly(F.vars())).first->second.add_term(Monomial{e}, c);
    }
    int top = -1, topdeg = -1;
    for (auto& [k, q] : forms) {
        int deg = q.terms().begin()->first.e[u] + q.terms().begin()->first.e[v];
        if (deg > topdeg) top = k, topdeg = deg;
    }
    if (top < 0) throw std::invalid_argument("no block forms");
    BlockStabilizer bs;
    bs.primary = binary_form_stabilizer(forms.at(top));
    // g survives iff some lift s and common factor kappa (absorbed by the pivot variable)
    // satisfy s^deg_k mu_k = kappa for every form; a form of degree 0 forces kappa = 1.
    bool kappa_fixed = false;
    std::vector<std::pair<int, QPoly>> lifts;
    for (auto& [k, q] : forms) {
        int deg = q.terms().begin()->first.e[u] + q.terms().begin()->first.e[v];
        if (deg == 0) kappa_fixed = true;
        else lifts.emplace_back(deg, q);
    }
    std::vector<std::vector<int>> perms;
    for (std::size_t idx = 0; idx < bs.primary.elements.size(); ++idx) {
        const auto& g = bs.primary.elements[idx];
        std::vector<cplx> mus;
        bool ok = true;
        for (auto& [deg, q] : lifts) {
            auto mu = pullback_ratio(q, u, v, g);
            if (!mu) ok = false;
            else mus.push_back(*mu);
        }
        if (!ok) continue;
        // Equations s^e = r: against kappa = 1, or against the primary form otherwise.
        std::vector<std::pair<int, cplx>> eqs;
        std::size_t ref = 0;
        for (std::size_t i = 0; i < lifts.size(); ++i)
            if (lifts[i].first > lifts[ref].first) ref = i;
        for (std::size_t i = 0; i < lifts.size(); ++i) {
            if (kappa_fixed) eqs.emplace_back(lifts[i].first, 1.0 / mus[i]);
            else if (i != ref && lifts[i].first != lifts[ref].first)
                eqs.emplace_back(lifts[ref].first - lifts[i].first, mus[i] / mus[ref]);
            else if (i != ref && std::abs(mus[i] - mus[ref]) > 1e-7)
                ok = false;
        }
        if (!ok) continue;
        bool found = eqs.empty();
        if (!found) {
            auto low = *std::min_element(eqs.begin(), eqs.end(), [](auto& x, auto& y) { return x.first < y.first; });
            cplx base = std::pow(low.second, 1.0 / low.first);
            for (int r = 0; r < low.first && !found; ++r) {
                cplx s = base * std::polar(1.0, 2 * M_PI * r / low.first);
                bool all = true;
                for (auto& [e, rhs] : eqs) all = all && std::abs(std::pow(s, e) - rhs) < 1e-7;
                found = all;
            }
        }
        if (found) {
            bs.surviving.push_back(idx);
            perms.push_back(bs.primary.permutations[idx]);
        }
    }
    bs.group = FiniteGroup::from_permutations(perms, bs.primary.roots.size());
    if (bs.group.order() != perms.size()) throw std::logic_error("lifted stabiliser is not a subgroup");
    return bs;
}

struct FinitePart {
    FiniteGroup group;
    GroupDescription description;
    int extra_torus_rank = 0;  // torus directions seen by the diagonal lattice
    std::vector<std::string> factors;  // how the group was assembled
};

inline FinitePart finite_part(const QPoly& F, const FiniteShape& shape) {
    FinitePart fp;
    if (shape.trivial) {
        fp.description = describe(fp.group);
        fp.factors.push_back("trivial");
        return fp;
    }
    const auto& vars = F.vars();
    if (!shape.symbolic.empty()) {
        FiniteGroup g;
        if (shape.swap) g = FiniteGroup::cyclic(2);
        fp.group = g;
        fp.description = describe(g);
        fp.description.symbolic = shape.symbolic + (shape.swap ? " x| Z2" : "");
        fp.factors.push_back("symbolic");
        return fp;
    }
    FiniteGroup g;
    if (shape.swap) {
        g = FiniteGroup::cyclic(2);
        fp.factors.push_back("swap Z2");
    }
    if (!shape.lattice_vars.empty()) {
        std::vector<std::size_t> lv;
        for (auto& n : shape.lattice_vars) lv.push_back(detail::var_index(vars, n));
        auto dp = diagonal_finite_part(F, lv);
        fp.extra_torus_rank = dp.torus_rank;
        std::vector<std::vector<int>> gens;
        for (auto& [a, b] : shape.perms) {
            std::vector<int> p(vars.size());
            std::iota(p.begin(), p.end(), 0);
            std::swap(p[detail::var_index(vars, a)], p[detail::var_index(vars, b)]);
            if (permute_vars(F, p) == F) gens.push_back(p);
        }
        auto perms = permutation_group(F, gens);
        g = FiniteGroup::direct_product(g, lattice_with_permutations(dp, perms));
        fp.factors.push_back("diagonal " + AbelianGroup::from_cyclic_orders(dp.orders).str() +
                             (perms.size() > 1 ? " with " + std::to_string(perms.size()) + " permutations" : ""));
    }
    if (!shape.binary_vars.empty()) {
        std::vector<std::size_t> keep;
        for (auto& n : shape.binary_vars) keep.push_back(detail::var_index(vars, n));
        auto st = binary_form_stabilizer(F.restrict_to(keep));
        g = FiniteGroup::direct_product(g, st.group);
        fp.factors.push_back("binary " + st.type);
    }
    if (!shape.block_vars.empty()) {
        auto bs = block_stabilizer(F, detail::var_index(vars, shape.block_vars.at(0)),
                                   detail::var_index(vars, shape.block_vars.at(1)),
                                   detail::var_index(vars, shape.block_param_var));
        g = FiniteGroup::direct_product(g, bs.group);
        fp.factors.push_back("block " + classify_pgl2_subgroup(bs.group));
    }
    fp.group = g;
    fp.description = describe(g);
    return fp;
}

// A computed finite part matches an expected description.
inline bool matches(const FinitePart& fp, const GroupDescription& expected) {
    if (!expected.symbolic.empty() || !fp.description.symbolic.empty()) {
        if (expected.symbolic.empty() || fp.description.symbolic.empty()) return false;
        return fp.description.symbolic.find(expected.symbolic) == 0 && fp.group.order() == expected.abelian.order();
    }
    return isomorphic(fp.group, expected.build());
}

struct AutReport {
    ConnectedStructure connected;
    FinitePart finite;
    std::string str() const {
        std::string a = connected.str(), w = finite.description.str();
        if (w == "1") return a;
        if (a == "1") return w;
        return "(" + a + ") x| " + w;
    }
};

inline AutReport full_aut(const FamilyRecord& rec, const QPoly& F, const std::optional<FiniteShape>& shape = std::nullopt) {
    if (!F.is_quasi_homogeneous(rec.ws.degree)) throw std::invalid_argument("F is not quasi-homogeneous");
    return {connected_structure(F), finite_part(F, shape ? *shape : rec.shape)};
}

}  // namespace wfano
