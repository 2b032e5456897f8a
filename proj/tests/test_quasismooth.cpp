#include "doctest.h"
#include "test_util.hpp"
#include "wfano/quasismooth.hpp"

using namespace wfano;

TEST_CASE("general member criterion") {
    CHECK(general_member_quasismooth(WeightSystem({1, 1, 2, 3, 3}, 6)).status == QsStatus::QUASI_SMOOTH);
    CHECK(general_member_quasismooth(WeightSystem({1, 1, 1, 1, 4}, 4)).status == QsStatus::LINEAR_CONE);
    CHECK(general_member_quasismooth(WeightSystem({1, 1, 2, 3, 5}, 6)).status == QsStatus::QUASI_SMOOTH);
    auto bad = general_member_quasismooth(WeightSystem({1, 1, 1, 3, 3}, 5));
    CHECK(bad.status == QsStatus::NOT_QUASI_SMOOTH);
    CHECK(bad.witness.has_value());
}

TEST_CASE("member checks") {
    auto v112 = make_vars({1, 1, 2, 3, 3});
    WeightSystem ws112({1, 1, 2, 3, 3}, 6);
    auto no_z3 = member_quasismooth(ws112, parse_poly("t*w + x^6 + y^6", v112));
    CHECK(no_z3.status == QsStatus::NOT_QUASI_SMOOTH);
    CHECK(*no_z3.witness == "coordinate point p_z");
    CHECK(member_quasismooth(ws112, parse_poly("t*w + z^3 + x^6 + y^6", v112)).status == QsStatus::QUASI_SMOOTH);

    auto v113 = make_vars({1, 1, 2, 2, 3});
    CHECK(member_quasismooth(WeightSystem({1, 1, 2, 2, 3}, 4), parse_poly("y*w + t^2 + z^2 + x^4", v113)).status ==
          QsStatus::QUASI_SMOOTH);

    auto v1 = make_vars({1, 1, 1, 1, 1});
    auto sq = member_quasismooth(WeightSystem({1, 1, 1, 1, 1}, 2), parse_poly("x^2", v1));
    CHECK(sq.status == QsStatus::NOT_QUASI_SMOOTH);
    CHECK(sq.witness.has_value());
}

TEST_CASE("singularity off the coordinate strata is found by the graded rank test") {
    // Smooth quadric plus a node at (1:1:1:1:1): singular at a point with all coordinates nonzero.
    auto v = make_vars({1, 1, 1, 1, 1});
    auto F = parse_poly("(x - y)^2 + (y - z)^2 + (z - t)^2 + (t - w)^2", v);
    auto r = member_quasismooth(WeightSystem({1, 1, 1, 1, 1}, 2), F);
    CHECK(r.status == QsStatus::NOT_QUASI_SMOOTH);
    CHECK(r.method.find("rank") != std::string::npos);
    CHECK(member_quasismooth(WeightSystem({1, 1, 1, 1, 1}, 2), F + parse_poly("x^2", v)).status ==
          QsStatus::QUASI_SMOOTH);
}

TEST_CASE("coordinate line singularity") {
    // On the line (x:y), F restricted is (x^2 - y^2)^2 with the other partials vanishing there.
    auto v = make_vars({1, 1, 1, 1, 1});
    auto F = parse_poly("(x^2 - y^2)^2 + z^4 + t^4 + w^4", v);
    auto r = member_quasismooth(WeightSystem({1, 1, 1, 1, 1}, 4), F);
    CHECK(r.status == QsStatus::NOT_QUASI_SMOOTH);
    CHECK(*r.witness == "coordinate line (x:y)");
}

TEST_CASE("random dense members of general-quasismooth weight systems pass") {
    std::mt19937_64 rng(31337);
    const std::vector<std::pair<std::vector<int>, int>> cases = {
        {{1, 1, 2, 3, 3}, 6}, {{1, 1, 2, 3, 5}, 6}, {{2, 3, 4, 5, 7}, 12}, {{3, 4, 5, 6, 7}, 12}, {{1, 3, 4, 5, 7}, 12}};
    for (auto& [w, d] : cases) {
        WeightSystem ws(w, d);
        REQUIRE(general_member_quasismooth(ws).status == QsStatus::QUASI_SMOOTH);
        auto v = make_vars(w);
        QPoly F(v);
        for (auto& m : monomials_of_degree(w, d)) {
            Rational c = 0;
            while (c == 0) c = testutil::small_rational(rng, -7, 7, 5);
            F.add_term(m, c);
        }
        CHECK(member_quasismooth(ws, F).status == QsStatus::QUASI_SMOOTH);
    }
}
