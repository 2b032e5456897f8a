#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "autgroup.hpp"
#include "cylinders.hpp"
#include "famenum.hpp"
#include "quasismooth.hpp"

namespace wfano {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr std::uint64_t kDefaultSeed = 0x5eed;

// Thrown for malformed user input; maps to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using nlohmann::json;

inline json envelope(const std::string& command) {
    return {{"schema_version", kReportSchemaVersion}, {"tool", "wfano"}, {"version", kToolVersion}, {"command", command}};
}

inline json ws_json(const WeightSystem& ws) { return {{"weights", ws.weights}, {"degree", ws.degree}}; }

inline json quotient_json(const CyclicQuotient& q) { return {{"r", q.r}, {"w", q.w}, {"text", q.str()}}; }

inline json chart_json(const QPoly& F, const ChartAnalysis& ca) {
    json j{{"chart", F.vars()[ca.chart].name}, {"kind", to_string(ca.kind)}};
    if (ca.eliminated) j["eliminated"] = F.vars()[*ca.eliminated].name;
    if (ca.quotient) j["quotient"] = quotient_json(*ca.quotient);
    return j;
}

inline json curve_json(const CurveReport& c) {
    auto opt = [](const auto& o) -> json { return o ? json(*o) : json(nullptr); };
    return {{"curve", c.curve.str()},          {"newton_genus", opt(c.genus)},
            {"places_at_infinity", opt(c.places)}, {"smooth", opt(c.smooth)},
            {"affine_line", to_string(c.affine_line)}};
}

inline json cylinder_json(const QPoly& F, const CylinderReport& r) {
    json j;
    j["contains_a3"] = to_string(r.a3.answer);
    j["reason"] = r.a3.reason;
    if (r.a3.witness) j["a3_chart"] = chart_json(F, *r.a3.witness);
    j["obstructions"] = json::array();
    for (auto& o : r.a3.obstructions) j["obstructions"].push_back(curve_json(o));
    if (r.a2) {
        j["a2_cylinder"] = {{"chart", chart_json(F, r.a2->chart)},
                            {"statement", r.a2->statement},
                            {"hyperplane", F.vars()[r.a2->hyperplane_var].name},
                            {"weights", r.a2->blown_up_weights}};
    } else {
        j["a2_cylinder"] = nullptr;
    }
    return j;
}

inline json group_json(const GroupDescription& g) {
    json j{{"text", g.str()}};
    if (g.symbolic.empty()) {
        j["invariant_factors"] = g.abelian.invariant_factors;
        j["named_factors"] = g.named_factors;
    } else {
        j["symbolic"] = g.symbolic;
    }
    return j;
}

inline json aut_json(const AutReport& a) {
    const auto& c = a.connected;
    json j{{"text", a.str()},
           {"connected", {{"dim", c.dim}, {"N", c.N}, {"M", c.M}, {"solvable", c.solvable}, {"text", c.str()}}}};
    j["finite"] = group_json(a.finite.description);
    j["finite"]["order"] = a.finite.group.order();
    j["finite"]["assembly"] = a.finite.factors;
    return j;
}

inline json qs_json(const QsVerdict& v) {
    json j{{"status", to_string(v.status)}, {"method", v.method}};
    if (v.witness) j["witness"] = *v.witness;
    return j;
}

// A check row: name, expected, computed, pass.
inline json check(const std::string& name, const json& expected, const json& computed) {
    return {{"check", name}, {"expected", expected}, {"computed", computed}, {"pass", expected == computed}};
}

inline bool all_pass(const json& checks) {
    for (auto& c : checks)
        if (!c.at("pass").get<bool>()) return false;
    return true;
}

inline const FamilyRecord& spade_record(int no) {
    const auto* r = dataset().find(no);
    if (!r) throw InputError("unknown family number " + std::to_string(no));
    return *r;
}

inline QPoly member_of(const FamilyRecord& rec, const ParamCase& c) {
    return c.poly ? parse_poly(*c.poly, rec.vars) : instantiate(rec, c.params);
}

// Cells of `report --table 1` for one member; charts and genus only when the dataset lists them.
inline json table1_checks(const FamilyRecord& rec, const QPoly& F, const CylinderReport& cyl, const AutReport& aut) {
    const auto& e = *rec.expected;
    json checks = json::array();
    checks.push_back(check("contains_a3", e.contains_a3 ? "YES" : "NO", to_string(cyl.a3.answer)));
    const auto& c = aut.connected;
    if (e.nonsolvable) {
        checks.push_back(check("aut0_dim", *e.dim_aut, c.dim));
        checks.push_back(check("aut0_solvable", false, c.solvable));
    } else {
        checks.push_back(check("aut0_N", *e.N, c.N));
        checks.push_back(check("aut0_M", *e.M, c.M));
    }
    if (e.genus) {
        json g = cyl.a3.obstructions.empty() || !cyl.a3.obstructions.front().genus
                     ? json(nullptr)
                     : json(*cyl.a3.obstructions.front().genus);
        checks.push_back(check("boundary_genus", *e.genus, g));
    }
    for (auto& ce : e.charts) {
        std::size_t j = detail::var_index(rec.vars, ce.var);
        auto ca = analyze_chart(rec.ws, F, j);
        bool ok = ca.quotient && ca.quotient->equivalent(ce.quotient);
        checks.push_back(check("chart_" + ce.var, ce.quotient.str(),
                               ok ? ce.quotient.str() : (ca.quotient ? ca.quotient->str() : to_string(ca.kind))));
    }
    return checks;
}

// Structure flags: Ga^3 iff A^3 inside; Heisenberg only with non-solvable Aut^0, since a solvable
// Aut^0 = Ga^N x| Gm^M puts every unipotent subgroup in the commutative Ga^N.
inline json structure_flags(const CylinderReport& cyl, const AutReport& aut) {
    json j{{"ga3_structure", to_string(cyl.a3.answer)}};
    j["heisenberg_structure"] = cyl.a3.answer == Tri::YES && !aut.connected.solvable ? "YES"
                                : cyl.a3.answer == Tri::UNKNOWN                       ? "UNKNOWN"
                                                                                      : "NO";
    return j;
}

struct FamilyQuery {
    int no = 0;
    std::optional<std::string> poly;
    std::map<std::string, std::string> params;
    std::uint64_t seed = kDefaultSeed;
};

// Returns the report and whether every oracle check passed; member errors raise InputError.
inline std::pair<json, bool> family_report(const FamilyQuery& q) {
    const auto& rec = spade_record(q.no);
    json out = envelope("family");
    out["input"] = {{"family", q.no}, {"seed", q.seed}, {"params", q.params}};
    out["family"] = {{"no", q.no}, {"fano_index", rec.fano_index}};
    out["family"].update(ws_json(rec.ws));
    if (!rec.expected) {
        out["family"]["status"] = rec.tag;
        out["note"] = "outside the classified list; stored metadata only";
        return {out, true};
    }
    if (q.poly && !q.params.empty()) throw InputError("--poly and --param are exclusive");
    QPoly F(rec.vars);
    try {
        F = q.poly ? parse_poly(*q.poly, rec.vars) : instantiate(rec, q.params);
    } catch (const std::exception& ex) {
        throw InputError(std::string("bad member: ") + ex.what());
    }
    if (F.is_zero() || !F.is_quasi_homogeneous(rec.ws.degree))
        throw InputError("member is not quasi-homogeneous of degree " + std::to_string(rec.ws.degree));
    out["input"]["polynomial"] = F.str();
    auto qs = member_quasismooth(rec.ws, F, q.seed);
    out["quasi_smoothness"] = qs_json(qs);
    if (qs.status != QsStatus::QUASI_SMOOTH) {
        out["note"] = "member is not quasi-smooth; classification skipped";
        out["checks"] = json::array();
        return {out, false};
    }
    // A dataset parameter case supplies its own W shape and expectation.
    const ParamCase* pc = nullptr;
    for (auto& c : rec.expected->finite_parts)
        if (member_of(rec, c) == F) pc = &c;
    auto aut = full_aut(rec, F, pc && pc->shape ? pc->shape : std::nullopt);
    auto cyl = contains_a3(rec.ws, F);
    out["cylinders"] = cylinder_json(F, cyl);
    out["aut"] = aut_json(aut);
    out["structures"] = structure_flags(cyl, aut);
    json checks = json::array();
    const bool default_member = F == instantiate(rec);
    checks.push_back(check("contains_a3", rec.expected->contains_a3 ? "YES" : "NO", to_string(cyl.a3.answer)));
    if (default_member) {
        auto t1 = table1_checks(rec, F, cyl, aut);
        for (std::size_t i = 1; i < t1.size(); ++i) checks.push_back(t1[i]);
    }
    if (pc) {
        out["parameter_case"] = pc->label;
        checks.push_back({{"check", "finite_part"},
                          {"expected", pc->expected.str()},
                          {"computed", aut.finite.description.str()},
                          {"pass", matches(aut.finite, pc->expected)}});
    }
    out["checks"] = checks;
    return {out, all_pass(checks)};
}

inline std::pair<json, bool> table1_report() {
    json out = envelope("report");
    out["table"] = 1;
    out["rows"] = json::array();
    bool ok = true;
    for (auto& rec : dataset().spade) {
        QPoly F = instantiate(rec);
        auto cyl = contains_a3(rec.ws, F);
        auto aut = full_aut(rec, F);
        auto checks = table1_checks(rec, F, cyl, aut);
        bool pass = all_pass(checks);
        ok = ok && pass;
        json row{{"no", *rec.family_no}, {"fano_index", rec.fano_index}, {"pass", pass}, {"checks", checks}};
        row.update(ws_json(rec.ws));
        row["aut0"] = aut.connected.str();
        row["contains_a3"] = to_string(cyl.a3.answer);
        out["rows"].push_back(row);
    }
    out["all_pass"] = ok;
    return {out, ok};
}

inline std::pair<json, bool> table2_report() {
    json out = envelope("report");
    out["table"] = 2;
    out["rows"] = json::array();
    bool ok = true;
    for (auto& rec : dataset().spade)
        for (auto& c : rec.expected->finite_parts) {
            QPoly F = member_of(rec, c);
            auto fp = finite_part(F, c.shape ? *c.shape : rec.shape);
            bool pass = matches(fp, c.expected);
            ok = ok && pass;
            out["rows"].push_back({{"no", *rec.family_no},
                                   {"case", c.label},
                                   {"polynomial", F.str()},
                                   {"expected", c.expected.str()},
                                   {"computed", fp.description.str()},
                                   {"pass", pass}});
        }
    out["all_pass"] = ok;
    return {out, ok};
}

inline std::pair<json, bool> enumerate_report(int max_weight, int max_degree, std::optional<int> index) {
    auto res = enumerate_families(max_weight, max_degree);
    auto recs = res.records;
    assign_numbers(recs, dataset());
    json out = envelope("enumerate");
    out["input"] = {{"max_weight", max_weight}, {"max_degree", max_degree}};
    if (index) out["input"]["index"] = *index;
    out["rows"] = json::array();
    for (auto& r : recs) {
        if (index && r.fano_index != *index) continue;
        json row{{"fano_index", r.fano_index}};
        row.update(ws_json(r.ws));
        row["no"] = r.family_no ? json(*r.family_no) : json(nullptr);
        out["rows"].push_back(row);
    }
    out["count"] = out["rows"].size();
    out["boundary_warnings"] = res.boundary_warnings;
    out["rejections"] = res.rejections;
    return {out, res.boundary_warnings.empty()};
}

inline WeightSystem parse_weights(const std::vector<int>& w, int d) {
    try {
        return WeightSystem(w, d);
    } catch (const std::exception& ex) {
        throw InputError(ex.what());
    }
}

inline QPoly parse_member(const WeightSystem& ws, const std::string& poly) {
    QPoly F(make_vars(ws.weights));
    try {
        F = parse_poly(poly, make_vars(ws.weights));
    } catch (const std::exception& ex) {
        throw InputError(std::string("bad polynomial: ") + ex.what());
    }
    if (F.is_zero() || !F.is_quasi_homogeneous(ws.degree))
        throw InputError("polynomial is not quasi-homogeneous of degree " + std::to_string(ws.degree));
    return F;
}

// Finite part needs a per-family shape, so it is reported only when the weights name a classified family.
inline json aut_report(const WeightSystem& ws, const QPoly& F) {
    json out = envelope("aut");
    out["input"] = ws_json(ws);
    out["input"]["polynomial"] = F.str();
    auto c = connected_structure(F);
    out["connected"] = {{"dim", c.dim}, {"N", c.N}, {"M", c.M}, {"solvable", c.solvable}, {"text", c.str()}};
    out["finite"] = nullptr;
    for (auto& rec : dataset().spade)
        if (rec.ws.weights == ws.weights && rec.ws.degree == ws.degree) {
            out["family"] = *rec.family_no;
            auto fp = finite_part(F, rec.shape);
            out["finite"] = group_json(fp.description);
            out["finite"]["order"] = fp.group.order();
        }
    return out;
}

inline json cylinder_report(const WeightSystem& ws, const QPoly& F) {
    json out = envelope("cylinder");
    out["input"] = ws_json(ws);
    out["input"]["polynomial"] = F.str();
    out["charts"] = json::array();
    for (std::size_t j = 0; j < F.nvars(); ++j) {
        try {
            out["charts"].push_back(chart_json(F, analyze_chart(ws, F, j)));
        } catch (const std::domain_error& ex) {
            out["charts"].push_back({{"chart", F.vars()[j].name}, {"kind", "EMPTY"}});
        }
    }
    out["cylinders"] = cylinder_json(F, contains_a3(ws, F));
    return out;
}

}  // namespace wfano
