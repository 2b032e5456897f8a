#include <numeric>
#include <random>

#include "doctest.h"
#include "test_util.hpp"
#include "wfano/intlattice.hpp"

using namespace wfano;
using testutil::minor_gcd;

namespace {

bool is_primitive(const std::vector<Int>& v) {
    Int g = 0;
    for (auto& x : v) g = gcd(g, abs(x));
    return g == 1;
}

}  // namespace

TEST_CASE("smith_normal_form examples") {
    auto d23 = smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 3}}));
    CHECK(d23.D == IntMatrix::from_rows({{1, 0}, {0, 6}}));
    auto id = smith_normal_form(IntMatrix::identity(3));
    CHECK(id.D == IntMatrix::identity(3));
    CHECK(smith_normal_form(IntMatrix::from_rows({{2, 0}, {0, 2}})).D == IntMatrix::from_rows({{2, 0}, {0, 2}}));
    auto z = smith_normal_form(IntMatrix(2, 3));
    CHECK(z.rank == 0);
}

TEST_CASE("SNF agrees with the minor-gcd oracle on 1000 random matrices") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> ent(-5, 5), dim(1, 4);
    for (int it = 0; it < 1000; ++it) {
        std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
        IntMatrix m(r, c);
        for (auto& x : m.a) x = ent(rng);
        auto s = smith_normal_form(m);
        CHECK(s.U * m * s.V == s.D);
        auto diag = s.diagonal();
        Int prev = 1;
        for (std::size_t k = 1; k <= std::min(r, c); ++k) {
            Int g = minor_gcd(m, k);
            Int expect = (g == 0) ? Int(0) : g / prev;
            CHECK(diag[k - 1] == expect);
            if (k < diag.size() && diag[k - 1] != 0) CHECK(diag[k] % diag[k - 1] == 0);
            if (g == 0) break;
            prev = g;
        }
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j)
                if (i != j) CHECK(s.D(i, j) == 0);
    }
}

TEST_CASE("quotient_group examples") {
    auto g = quotient_group({{2, 0}, {0, 2}}, 2);
    CHECK(g.invariant_factors == std::vector<long>{2, 2});
    CHECK(g.free_rank == 0);
    auto h = quotient_group({{1, 0}}, 2);
    CHECK(h.invariant_factors.empty());
    CHECK(h.free_rank == 1);
    CHECK(quotient_group({}, 3).free_rank == 3);
}

TEST_CASE("quotient_group of the weight-plus-difference lattice for P(3,4,5,6,7)") {
    // Oracle by hand: column ops on [[4,-3,0,0],[0,3,0,-2],[3,4,5,6]] leave a single factor 2.
    auto g = quotient_group({{4, -3, 0, 0}, {0, 3, 0, -2}, {3, 4, 5, 6}}, 4);
    CHECK(g.free_rank == 1);
    CHECK(g.invariant_factors == std::vector<long>{2});
}

TEST_CASE("quotient_group is invariant under row operations and coordinate permutations") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> ent(-6, 6);
    for (int it = 0; it < 200; ++it) {
        std::vector<std::vector<long>> gens(3, std::vector<long>(4));
        for (auto& r : gens)
            for (auto& x : r) x = ent(rng);
        auto base = quotient_group(gens, 4);
        auto ops = gens;
        long f = ent(rng);
        for (std::size_t j = 0; j < 4; ++j) ops[0][j] += f * ops[2][j];
        std::swap(ops[1], ops[2]);
        CHECK(quotient_group(ops, 4) == base);
        auto perm = gens;
        for (auto& r : perm) std::rotate(r.begin(), r.begin() + 1, r.end());
        CHECK(quotient_group(perm, 4) == base);
    }
}

TEST_CASE("kernel_basis") {
    auto k1 = kernel_basis(IntMatrix::from_rows({{1, 1}}));
    REQUIRE(k1.size() == 1);
    CHECK(k1[0] == std::vector<Int>{1, -1});
    CHECK(kernel_basis(IntMatrix::identity(2)).empty());
    auto k2 = kernel_basis(IntMatrix::from_rows({{2, 4}}));
    REQUIRE(k2.size() == 1);
    CHECK(k2[0] == std::vector<Int>{2, -1});
    CHECK(is_primitive(k2[0]));
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> ent(-4, 4);
    for (int it = 0; it < 100; ++it) {
        IntMatrix m(2, 4);
        for (auto& x : m.a) x = ent(rng);
        for (auto& v : kernel_basis(m)) {
            CHECK(is_primitive(v));
            for (std::size_t i = 0; i < 2; ++i) {
                Int s = 0;
                for (std::size_t j = 0; j < 4; ++j) s += m(i, j) * v[j];
                CHECK(s == 0);
            }
        }
    }
}

TEST_CASE("AbelianGroup normalisation and display") {
    auto g = AbelianGroup::from_cyclic_orders({2, 3, 4});
    CHECK(g.invariant_factors == std::vector<long>{2, 12});
    CHECK(g.str() == "Z2 x Z3 x Z4");
    auto h = AbelianGroup::from_cyclic_orders({2, 2, 5});
    CHECK(h.str() == "Z2^2 x Z5");
    CHECK(AbelianGroup::from_cyclic_orders({8, 4, 2}).invariant_factors == std::vector<long>{2, 4, 8});
    CHECK(AbelianGroup{}.str() == "1");
}
