#include <cstdint>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wfano/report.hpp"

using namespace wfano;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;

std::map<std::string, std::string> parse_params(const std::vector<std::string>& kvs) {
    std::map<std::string, std::string> out;
    for (auto& kv : kvs) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw InputError("--param expects k=v, got '" + kv + "'");
        out[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return out;
}

void print_checks(const json& checks) {
    for (auto& c : checks)
        std::cout << "  " << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["check"].get<std::string>()
                  << ": expected " << c["expected"].dump() << ", computed " << c["computed"].dump() << "\n";
}

std::string ws_text(const json& j) {
    std::string s = "P(";
    for (std::size_t i = 0; i < j["weights"].size(); ++i) s += (i ? "," : "") + j["weights"][i].dump();
    return s + ") d=" + j["degree"].dump();
}

void print_family(const json& r) {
    auto& f = r["family"];
    std::cout << "No." << f["no"] << "  " << ws_text(f) << "  index " << f["fano_index"] << "\n";
    if (r.contains("note")) std::cout << r["note"].get<std::string>() << "\n";
    if (!r.contains("quasi_smoothness")) return;
    std::cout << "member: " << r["input"]["polynomial"].get<std::string>() << "\n";
    auto& q = r["quasi_smoothness"];
    std::cout << "quasi-smoothness: " << q["status"].get<std::string>();
    if (q.contains("witness")) std::cout << " (" << q["witness"].get<std::string>() << ")";
    std::cout << "\n";
    if (!r.contains("aut")) return;
    auto& c = r["cylinders"];
    std::cout << "A^3 inside: " << c["contains_a3"].get<std::string>() << " (" << c["reason"].get<std::string>()
              << ")\n";
    if (!c["a2_cylinder"].is_null())
        std::cout << "A^2-cylinder: chart " << c["a2_cylinder"]["chart"]["chart"].get<std::string>() << ", "
                  << c["a2_cylinder"]["statement"].get<std::string>() << "\n";
    std::cout << "Aut^0: " << r["aut"]["connected"]["text"].get<std::string>() << "  (N,M) = ("
              << r["aut"]["connected"]["N"] << "," << r["aut"]["connected"]["M"] << ")\n";
    std::cout << "W: " << r["aut"]["finite"]["text"].get<std::string>() << "\n";
    if (r.contains("parameter_case")) std::cout << "parameter case: " << r["parameter_case"].get<std::string>() << "\n";
    std::cout << "structures: Ga^3 " << r["structures"]["ga3_structure"].get<std::string>() << ", Heisenberg "
              << r["structures"]["heisenberg_structure"].get<std::string>() << "\n";
    print_checks(r["checks"]);
}

void print_table(const json& r) {
    int pass = 0, total = 0;
    for (auto& row : r["rows"]) {
        ++total;
        bool ok = row["pass"].get<bool>();
        pass += ok;
        std::cout << (ok ? "PASS " : "FAIL ") << "No." << row["no"];
        if (r["table"] == 1)
            std::cout << "  " << ws_text(row) << "  A^3 " << row["contains_a3"].get<std::string>() << "  Aut^0 "
                      << row["aut0"].get<std::string>() << "\n";
        else
            std::cout << "  [" << row["case"].get<std::string>() << "]  expected " << row["expected"].get<std::string>()
                      << ", computed " << row["computed"].get<std::string>() << "\n";
        if (!ok && row.contains("checks")) print_checks(row["checks"]);
    }
    std::cout << pass << "/" << total << " rows PASS\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weighted Fano threefold hypersurfaces: enumeration, cylinders, automorphisms"};
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "emit JSON");

    int max_weight = 35, max_degree = 100;
    std::optional<int> index;
    auto* en = app.add_subcommand("enumerate", "list the quasi-smooth terminal families");
    en->add_option("--max-weight", max_weight, "largest weight searched")->check(CLI::PositiveNumber);
    en->add_option("--max-degree", max_degree, "largest degree searched")->check(CLI::PositiveNumber);
    en->add_option("--index", index, "keep only this Fano index");
    en->add_flag("--json", as_json, "emit JSON");

    FamilyQuery fq;
    std::string poly;
    std::vector<std::string> params;
    auto* fam = app.add_subcommand("family", "classify a member of a numbered family");
    fam->add_option("no", fq.no, "family number")->required();
    fam->add_option("--poly", poly, "explicit member");
    fam->add_option("--param", params, "template parameter k=v")->take_all();
    fam->add_option("--seed", fq.seed, "seed for the modular rank checks");
    fam->add_flag("--json", as_json, "emit JSON");

    std::vector<int> weights;
    int degree = 0;
    auto* aut = app.add_subcommand("aut", "automorphism group of an explicit hypersurface");
    auto* cyl = app.add_subcommand("cylinder", "charts, A^2-cylinder and A^3 test of an explicit hypersurface");
    for (auto* sc : {aut, cyl}) {
        sc->add_option("--weights", weights, "a0,...,a4")->delimiter(',')->required()->expected(5);
        sc->add_option("--degree", degree, "degree")->required();
        sc->add_option("--poly", poly, "polynomial in x,y,z,t,w")->required();
        sc->add_flag("--json", as_json, "emit JSON");
    }

    int table = 0;
    auto* rep = app.add_subcommand("report", "recompute a classification table and diff it");
    rep->add_option("--table", table, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
    rep->add_flag("--json", as_json, "emit JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitInput;
    }

    try {
        if (*en) {
            auto [r, ok] = enumerate_report(max_weight, max_degree, index);
            if (as_json) {
                std::cout << r.dump(2) << "\n";
            } else {
                for (auto& row : r["rows"])
                    std::cout << std::setw(4) << (row["no"].is_null() ? std::string("-") : row["no"].dump()) << "  "
                              << ws_text(row) << "  index " << row["fano_index"] << "\n";
                std::cout << r["count"] << " families\n";
                for (auto& w : r["boundary_warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
            }
            return ok ? 0 : kExitMismatch;
        }
        if (*fam) {
            if (!poly.empty()) fq.poly = poly;
            fq.params = parse_params(params);
            auto [r, ok] = family_report(fq);
            if (as_json) std::cout << r.dump(2) << "\n";
            else print_family(r);
            if (r.contains("quasi_smoothness") && r["quasi_smoothness"]["status"] != "QUASI_SMOOTH") return kExitInput;
            return ok ? 0 : kExitMismatch;
        }
        if (*aut || *cyl) {
            auto ws = parse_weights(weights, degree);
            auto F = parse_member(ws, poly);
            auto qs = member_quasismooth(ws, F);
            if (qs.status != QsStatus::QUASI_SMOOTH) {
                json r = envelope(*aut ? "aut" : "cylinder");
                r["input"] = ws_json(ws);
                r["input"]["polynomial"] = F.str();
                r["quasi_smoothness"] = qs_json(qs);
                std::cout << (as_json ? r.dump(2) : "not quasi-smooth: " + qs.witness.value_or("")) << "\n";
                return kExitInput;
            }
            json r = *aut ? aut_report(ws, F) : cylinder_report(ws, F);
            if (as_json) {
                std::cout << r.dump(2) << "\n";
            } else if (*aut) {
                std::cout << "Aut^0: " << r["connected"]["text"].get<std::string>() << "\n";
                if (!r["finite"].is_null()) std::cout << "W: " << r["finite"]["text"].get<std::string>() << "\n";
            } else {
                for (auto& c : r["charts"]) {
                    std::cout << "D+(" << c["chart"].get<std::string>() << "): " << c["kind"].get<std::string>();
                    if (c.contains("quotient")) std::cout << " " << c["quotient"]["text"].get<std::string>();
                    std::cout << "\n";
                }
                std::cout << "A^3 inside: " << r["cylinders"]["contains_a3"].get<std::string>() << " ("
                          << r["cylinders"]["reason"].get<std::string>() << ")\n";
            }
            return 0;
        }
        auto [r, ok] = table == 1 ? table1_report() : table2_report();
        if (as_json) std::cout << r.dump(2) << "\n";
        else print_table(r);
        return ok ? 0 : kExitMismatch;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
}
