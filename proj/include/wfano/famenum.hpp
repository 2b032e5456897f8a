#pragma once

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "groups.hpp"
#include "json.hpp"
#include "quasismooth.hpp"
#include "wps.hpp"

namespace wfano {

// Which subgroups make up the finite part W of a family's automorphism group.
struct FiniteShape {
    bool trivial = false;
    bool swap = false;                                       // the involution exchanging pivot and top variable
    std::vector<std::string> lattice_vars;                   // diagonal scalings, other variables fixed
    std::vector<std::pair<std::string, std::string>> perms;  // candidate variable transpositions
    std::vector<std::string> binary_vars;                    // PGL2 stabiliser of F restricted to these two
    std::vector<std::string> block_vars;                     // projective block acting on two equal-weight variables
    std::string block_param_var;                             // powers of this variable index the block's forms
    std::string symbolic;                                    // group without a concrete model
};

struct ParamCase {
    std::string label;
    std::map<std::string, std::string> params;
    std::optional<std::string> poly;
    GroupDescription expected;
    std::optional<FiniteShape> shape;
};

struct ChartExpectation {
    std::string var;
    CyclicQuotient quotient;
};

struct ExpectedClassification {
    bool contains_a3 = false;
    std::optional<int> N, M, dim_aut;
    bool nonsolvable = false;
    std::vector<ParamCase> finite_parts;
    std::optional<int> genus;
    std::vector<ChartExpectation> charts;
};

struct FamilyRecord {
    std::optional<int> family_no;
    WeightSystem ws;
    int fano_index = 0;
    VarTable vars;
    std::string normal_form;  // template; parameters are identifiers outside the variable table
    std::map<std::string, std::string> default_params;
    std::optional<ExpectedClassification> expected;
    FiniteShape shape;
    std::string tag;  // irrational-family status, empty otherwise
};

// Substitute named parameters into a template and parse over the record's variables.
inline QPoly instantiate(const FamilyRecord& rec, const std::map<std::string, std::string>& overrides = {}) {
    auto params = rec.default_params;
    for (auto& [k, v] : overrides) {
        if (!params.count(k)) throw std::invalid_argument("unknown parameter '" + k + "'");
        params[k] = v;
    }
    std::string out;
    const std::string& s = rec.normal_form;
    for (std::size_t i = 0; i < s.size();) {
        if (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_') {
            std::size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
            std::string id = s.substr(i, j - i);
            auto it = params.find(id);
            out += (it != params.end()) ? "(" + it->second + ")" : id;
            i = j;
        } else {
            out += s[i++];
        }
    }
    QPoly F = parse_poly(out, rec.vars);
    if (!F.is_zero() && !F.is_quasi_homogeneous(rec.ws.degree))
        throw std::invalid_argument("normal form is not quasi-homogeneous of degree " + std::to_string(rec.ws.degree));
    return F;
}

struct EnumerationResult {
    std::vector<FamilyRecord> records;
    std::vector<std::string> boundary_warnings;
    std::map<std::string, long> rejections;  // reason -> count
};

inline std::string rejection_key(const std::string& reason) {
    auto p = reason.find(':');
    return p == std::string::npos ? reason : reason.substr(0, p);
}

// All quasi-smooth, well-formed, terminal Fano hypersurface families within the bounds,
// sorted by (index, degree, weights).
inline EnumerationResult enumerate_families(int max_weight = 35, int max_degree = 100) {
    if (max_weight < 1 || max_degree < 1) throw std::invalid_argument("bounds must be positive");
    EnumerationResult res;
    std::vector<int> a(5);
    std::vector<int> degs;
    for (a[4] = 1; a[4] <= max_weight; ++a[4])
        for (a[3] = 1; a[3] <= a[4]; ++a[3])
            for (a[2] = 1; a[2] <= a[3]; ++a[2])
                for (a[1] = 1; a[1] <= a[2]; ++a[1])
                    for (a[0] = 1; a[0] <= a[1]; ++a[0]) {
                        int s = a[0] + a[1] + a[2] + a[3] + a[4];
                        int dmax = std::min(max_degree, s - 1);
                        // The top vertex needs x4^k or x4^k x_j: d is 0 or a_j mod a4.
                        degs.clear();
                        for (int k = 0; k * a[4] <= dmax; ++k)
                            for (int r : {0, a[0], a[1], a[2], a[3]}) {
                                int d = k * a[4] + r;
                                if (d >= 1 && d <= dmax) degs.push_back(d);
                            }
                        std::sort(degs.begin(), degs.end());
                        degs.erase(std::unique(degs.begin(), degs.end()), degs.end());
                        for (int d : degs) {
                            bool vertices_ok = true;
                            for (int i = 0; i < 5 && vertices_ok; ++i) {
                                int ai = a[static_cast<std::size_t>(i)];
                                bool ok = d % ai == 0;
                                for (int j = 0; j < 5 && !ok; ++j) {
                                    int r = d - a[static_cast<std::size_t>(j)];
                                    ok = r > 0 && r % ai == 0;
                                }
                                vertices_ok = ok;
                            }
                            if (!vertices_ok) continue;
                            WeightSystem ws(a, d);
                            if (!is_well_formed_hypersurface(ws)) {
                                ++res.rejections["not well-formed"];
                                continue;
                            }
                            auto qs = general_member_quasismooth(ws);
                            if (qs.status != QsStatus::QUASI_SMOOTH) {
                                ++res.rejections[qs.status == QsStatus::LINEAR_CONE ? "linear cone" : "not quasi-smooth"];
                                continue;
                            }
                            auto sing = general_singularities(ws);
                            if (!sing.terminal) {
                                ++res.rejections[rejection_key(sing.reason)];
                                continue;
                            }
                            FamilyRecord rec;
                            rec.ws = ws;
                            rec.fano_index = fano_index(ws);
                            rec.vars = make_vars(ws.weights);
                            res.records.push_back(rec);
                            if (a[4] == max_weight || d == max_degree)
                                res.boundary_warnings.push_back("family at search boundary: " + ws.str());
                        }
                    }
    std::sort(res.records.begin(), res.records.end(), [](const FamilyRecord& x, const FamilyRecord& y) {
        if (x.fano_index != y.fano_index) return x.fano_index < y.fano_index;
        return x.ws < y.ws;
    });
    return res;
}

// ---- dataset ----

namespace detail {

inline GroupDescription group_from_json(const nlohmann::json& j) {
    GroupDescription g;
    if (j.contains("symbolic")) g.symbolic = j.at("symbolic").get<std::string>();
    std::vector<long> inv;
    if (j.contains("invariant_factors")) inv = j.at("invariant_factors").get<std::vector<long>>();
    g.abelian = AbelianGroup::from_cyclic_orders(inv, j.value("free_rank", 0));
    if (g.abelian.invariant_factors != inv)
        throw std::invalid_argument("dataset invariant factors are not a divisibility chain");
    if (j.contains("named_factors")) g.named_factors = j.at("named_factors").get<std::vector<std::string>>();
    return g;
}

inline FiniteShape shape_from_json(const nlohmann::json& j) {
    FiniteShape s;
    s.trivial = j.value("trivial", false);
    s.swap = j.value("swap", false);
    s.lattice_vars = j.value("lattice", std::vector<std::string>{});
    for (auto& p : j.value("perms", nlohmann::json::array())) s.perms.emplace_back(p.at(0), p.at(1));
    s.binary_vars = j.value("binary", std::vector<std::string>{});
    if (j.contains("block")) {
        s.block_vars = j.at("block").at("vars").get<std::vector<std::string>>();
        s.block_param_var = j.at("block").at("param_var").get<std::string>();
    }
    s.symbolic = j.value("symbolic", std::string{});
    return s;
}

inline std::map<std::string, std::string> params_from_json(const nlohmann::json& j) {
    std::map<std::string, std::string> m;
    for (auto& [k, v] : j.items()) m[k] = v.get<std::string>();
    return m;
}

}  // namespace detail

struct Dataset {
    int schema_version = 0;
    std::vector<FamilyRecord> spade;
    std::vector<FamilyRecord> irrational;

    const FamilyRecord* find(int no) const {
        for (auto& r : spade)
            if (r.family_no == no) return &r;
        for (auto& r : irrational)
            if (r.family_no == no) return &r;
        return nullptr;
    }
};

inline Dataset load_dataset(const nlohmann::json& j) {
    Dataset ds;
    ds.schema_version = j.at("schema_version").get<int>();
    if (ds.schema_version != 1) throw std::runtime_error("unsupported dataset schema version");
    for (auto& f : j.at("spade")) {
        FamilyRecord r;
        r.family_no = f.at("no").get<int>();
        r.ws = WeightSystem(f.at("weights").get<std::vector<int>>(), f.at("degree").get<int>());
        r.fano_index = f.at("fano_index").get<int>();
        if (r.fano_index != fano_index(r.ws)) throw std::runtime_error("dataset Fano index mismatch");
        r.vars = make_vars(r.ws.weights);
        r.normal_form = f.at("normal_form").get<std::string>();
        r.default_params = detail::params_from_json(f.value("params", nlohmann::json::object()));
        r.shape = detail::shape_from_json(f.at("finite_shape"));
        const auto& e = f.at("expected");
        ExpectedClassification ex;
        ex.contains_a3 = e.at("a3").get<bool>();
        if (e.contains("N")) ex.N = e.at("N").get<int>();
        if (e.contains("M")) ex.M = e.at("M").get<int>();
        if (e.contains("dim_aut")) ex.dim_aut = e.at("dim_aut").get<int>();
        ex.nonsolvable = e.value("nonsolvable", false);
        if (e.contains("genus")) ex.genus = e.at("genus").get<int>();
        for (auto& c : e.value("charts", nlohmann::json::array())) {
            auto q = c.at("quotient").get<std::vector<long>>();
            ex.charts.push_back({c.at("var").get<std::string>(),
                                 CyclicQuotient(static_cast<int>(q.at(0)), {q.at(1), q.at(2), q.at(3)})});
        }
        for (auto& c : e.at("finite_parts")) {
            ParamCase pc;
            pc.label = c.at("case").get<std::string>();
            pc.params = detail::params_from_json(c.value("params", nlohmann::json::object()));
            if (c.contains("poly")) pc.poly = c.at("poly").get<std::string>();
            pc.expected = detail::group_from_json(c.at("group"));
            if (c.contains("shape")) pc.shape = detail::shape_from_json(c.at("shape"));
            ex.finite_parts.push_back(pc);
        }
        r.expected = ex;
        ds.spade.push_back(r);
    }
    for (auto& f : j.at("irrational")) {
        FamilyRecord r;
        r.family_no = f.at("no").get<int>();
        r.ws = WeightSystem(f.at("weights").get<std::vector<int>>(), f.at("degree").get<int>());
        r.fano_index = fano_index(r.ws);
        r.vars = make_vars(r.ws.weights);
        r.tag = f.at("tag").get<std::string>();
        ds.irrational.push_back(r);
    }
    return ds;
}

#ifdef WFANO_DATASET_PATH
inline constexpr const char* kDefaultDatasetPath = WFANO_DATASET_PATH;
#else
inline constexpr const char* kDefaultDatasetPath = "data/families.json";
#endif

inline const Dataset& dataset(const std::string& path = kDefaultDatasetPath) {
    static const Dataset ds = [&] {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open dataset " + path);
        return load_dataset(nlohmann::json::parse(in));
    }();
    return ds;
}

inline std::vector<FamilyRecord> spade_families() { return dataset().spade; }

inline std::vector<std::pair<int, std::string>> irrational_families() {
    std::vector<std::pair<int, std::string>> out;
    for (auto& r : dataset().irrational) out.emplace_back(*r.family_no, r.tag);
    return out;
}

// Attach known family numbers to enumerated records.
inline void assign_numbers(std::vector<FamilyRecord>& recs, const Dataset& ds) {
    for (auto& r : recs)
        for (const auto* list : {&ds.spade, &ds.irrational})
            for (auto& k : *list)
                if (k.ws == r.ws) {
                    r.family_no = k.family_no;
                    r.tag = k.tag;
                }
}

}  // namespace wfano
