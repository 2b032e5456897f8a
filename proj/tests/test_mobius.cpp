#include <chrono>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "wfano/mobius.hpp"

using namespace wfano;
using namespace testutil;


TEST_CASE("sextic stabilizer table, 20 randomized trials per row") {
    auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2025);
    for (int row = 0; row < 7; ++row)
        for (int trial = 0; trial < 20; ++trial) {
            auto f = form_for_row(row, rng);
            auto st = binary_form_stabilizer(f);
            INFO("row " << row << " form " << f.str());
            CHECK(st.type == kSexticRowTypes[row]);
        }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    CHECK(secs < 30.0);
}

TEST_CASE("stabilizer elements form a group acting on the roots") {
    std::mt19937_64 rng(4);
    for (int row = 0; row < 7; ++row) {
        auto st = binary_form_stabilizer(form_for_row(row, rng));
        const double eps = 1e-9;
        for (auto& a : st.elements) {
            CHECK(std::abs(a.normalized().det() - cplx(1)) < 1e-9);
            for (auto& b : st.elements) {
                auto c = a * b;
                bool found = false;
                for (auto& e : st.elements) found = found || c.same(e, 1e-7);
                CHECK(found);
            }
            // inverse present
            cplx d = a.det();
            MobiusMap inv{{a.m[3] / d, -a.m[1] / d, -a.m[2] / d, a.m[0] / d}};
            bool has_inv = false;
            for (auto& e : st.elements) has_inv = has_inv || inv.same(e, 1e-7);
            CHECK(has_inv);
            // orbit of the root set is the root set
            for (auto& r : st.roots) {
                auto img = a.apply(r);
                double best = 1;
                for (auto& s : st.roots) best = std::min(best, chordal(img, s));
                CHECK(best < eps);
            }
        }
        auto o = st.group.order();
        CHECK((60 % o == 0 || o == 8 || o == 12 || o == 24));
    }
}

TEST_CASE("quartic stabilizers") {
    CHECK(binary_form_stabilizer(parse_poly("x^4 + 3*x^2*y^2 + y^4", XY)).type == "D4");
    CHECK(binary_form_stabilizer(parse_poly("x^4 + y^4", XY)).type == "D8");
    CHECK(binary_form_stabilizer(parse_poly("x*(x^3 + y^3)", XY)).type == "A4");
    CHECK(binary_form_stabilizer(parse_poly("x*y*(x + y)", XY)).type == "D6");
}

TEST_CASE("non-squarefree input is rejected") {
    CHECK_THROWS(binary_form_stabilizer(parse_poly("x^2*y*(x + y)", XY)));
}
