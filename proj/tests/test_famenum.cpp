#include <chrono>
#include <set>

#include "doctest.h"
#include "wfano/famenum.hpp"

using namespace wfano;

namespace {

const EnumerationResult& default_run() {
    static const EnumerationResult r = enumerate_families();
    return r;
}

}  // namespace

TEST_CASE("enumeration count and index split") {
    auto t0 = std::chrono::steady_clock::now();
    const auto& r = default_run();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(r.records.size() == 130);
    long ones = std::count_if(r.records.begin(), r.records.end(), [](auto& f) { return f.fano_index == 1; });
    CHECK(ones == 95);
    CHECK(r.records.size() - static_cast<std::size_t>(ones) == 35);
    CHECK(r.boundary_warnings.empty());
    CHECK(secs < 300);
    std::set<int> indices;
    for (auto& f : r.records) indices.insert(f.fano_index);
    CHECK(indices == std::set<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 11, 13});
}

TEST_CASE("sorted by index, degree, weights; every record passes each filter") {
    const auto& r = default_run();
    for (std::size_t i = 1; i < r.records.size(); ++i) {
        auto& p = r.records[i - 1];
        auto& q = r.records[i];
        CHECK((p.fano_index < q.fano_index || (p.fano_index == q.fano_index && p.ws < q.ws)));
    }
    for (auto& f : r.records) {
        CHECK(is_well_formed_hypersurface(f.ws));
        CHECK(general_member_quasismooth(f.ws).status == QsStatus::QUASI_SMOOTH);
        CHECK(general_singularities(f.ws).terminal);
    }
}

TEST_CASE("larger bounds add nothing") {
    auto wide = enumerate_families(60, 180);
    const auto& r = default_run();
    REQUIRE(wide.records.size() == r.records.size());
    for (std::size_t i = 0; i < r.records.size(); ++i) CHECK(wide.records[i].ws == r.records[i].ws);
}

TEST_CASE("known smooth and classical members are found") {
    const auto& r = default_run();
    auto has = [&](std::vector<int> w, int d) {
        WeightSystem ws(w, d);
        return std::any_of(r.records.begin(), r.records.end(), [&](auto& f) { return f.ws == ws; });
    };
    CHECK(has({1, 1, 1, 1, 1}, 4));     // quartic threefold
    CHECK(has({1, 1, 1, 1, 1}, 2));     // quadric
    CHECK(has({1, 1, 1, 1, 3}, 6));     // sextic double solid
    CHECK(has({1, 5, 6, 22, 33}, 66));  // largest index-one degree
    CHECK(!has({1, 1, 1, 1, 1}, 5));    // not Fano
    CHECK(!has({1, 1, 1, 1, 2}, 2));    // linear cone
}

TEST_CASE("dataset numbering covers the higher-index families") {
    auto recs = default_run().records;
    assign_numbers(recs, dataset());
    std::set<int> nos;
    for (auto& f : recs) {
        if (f.fano_index == 1) {
            CHECK(!f.family_no);
            continue;
        }
        REQUIRE(f.family_no);
        nos.insert(*f.family_no);
    }
    CHECK(nos.size() == 35);
    CHECK(*nos.begin() == 96);
    CHECK(*nos.rbegin() == 130);
    CHECK(spade_families().size() == 20);
    CHECK(irrational_families().size() == 15);
    std::set<int> spade;
    for (auto& f : spade_families()) spade.insert(*f.family_no);
    CHECK(spade == std::set<int>{104, 105, 106, 111, 112, 113, 114, 115, 118, 119, 120, 121, 123, 124, 125,
                                 126, 127, 128, 129, 130});
    for (auto& [no, tag] : irrational_families()) CHECK(!spade.count(no));
}

TEST_CASE("every dataset member and case is a quasi-smooth terminal member") {
    for (auto& rec : spade_families()) {
        CAPTURE(*rec.family_no);
        QPoly F = instantiate(rec);
        CHECK(member_quasismooth(rec.ws, F).status == QsStatus::QUASI_SMOOTH);
        for (auto& c : rec.expected->finite_parts) {
            CAPTURE(c.label);
            QPoly G = c.poly ? parse_poly(*c.poly, rec.vars) : instantiate(rec, c.params);
            auto v = member_quasismooth(rec.ws, G);
            CHECK_MESSAGE(v.status == QsStatus::QUASI_SMOOTH, v.witness.value_or(""));
            for (auto& sp : singular_points(rec.ws, G))
                if (sp.lies_on_X && sp.quotient) CHECK(is_terminal_cyclic(*sp.quotient));
        }
    }
}

TEST_CASE("template substitution") {
    const auto* r118 = dataset().find(118);
    REQUIRE(r118);
    QPoly F = instantiate(*r118, {{"a", "0"}, {"b", "2/3"}});
    CHECK(F == parse_poly("y*w + t^2 + z^3 + 2/3*x^6", r118->vars));
    CHECK_THROWS_AS(instantiate(*r118, {{"q", "1"}}), std::invalid_argument);
    CHECK_THROWS_AS(instantiate(*r118, {{"a", "x"}}), std::invalid_argument);  // breaks homogeneity
}

TEST_CASE("negative controls are not quasi-smooth") {
    const auto* r112 = dataset().find(112);
    QPoly no_z3 = parse_poly("t*w + x^4*z + x^6 + y^6", r112->vars);
    CHECK(member_quasismooth(r112->ws, no_z3).status == QsStatus::NOT_QUASI_SMOOTH);
    const auto* r121 = dataset().find(121);
    QPoly equal = parse_poly("z*w + t^2 + y*(y + x^2)^2*(y + 3*x^2)", r121->vars);
    CHECK(member_quasismooth(r121->ws, equal).status == QsStatus::NOT_QUASI_SMOOTH);
}
