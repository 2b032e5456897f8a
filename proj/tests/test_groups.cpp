#include "doctest.h"
#include "wfano/groups.hpp"

using namespace wfano;

TEST_CASE("named groups have the right orders and shapes") {
    CHECK(named::symmetric(3).order() == 6);
    CHECK(named::symmetric(4).order() == 24);
    CHECK(named::alternating(4).order() == 12);
    CHECK(named::alternating(5).order() == 60);
    CHECK(named::dihedral(12).order() == 12);
    CHECK(named::dihedral(4).is_abelian());
    CHECK_FALSE(named::dihedral(8).is_abelian());
    CHECK(isomorphic(named::by_name("D6"), named::symmetric(3)));
}

TEST_CASE("abelianization and derived subgroup") {
    CHECK(named::symmetric(3).abelianization() == AbelianGroup::from_cyclic_orders({2}));
    CHECK(named::alternating(4).abelianization() == AbelianGroup::from_cyclic_orders({3}));
    CHECK(named::symmetric(4).derived_subgroup().size() == 12);
    CHECK(named::alternating(5).derived_subgroup().size() == 60);
}

TEST_CASE("isomorphism of abelian presentations") {
    auto a = FiniteGroup::abelian(AbelianGroup::from_cyclic_orders({2, 3, 4}));
    auto b = FiniteGroup::abelian(AbelianGroup::from_cyclic_orders({12, 2}));
    CHECK(isomorphic(a, b));
    CHECK_FALSE(isomorphic(a, FiniteGroup::cyclic(24)));
    CHECK(describe(a).str() == "Z2 x Z3 x Z4");
}

TEST_CASE("describe recovers named direct factors") {
    auto g = FiniteGroup::direct_product(named::symmetric(3), FiniteGroup::cyclic(2));
    auto d = describe(g);
    REQUIRE(d.named_factors.size() == 1);
    CHECK(d.named_factors[0] == "S3");
    CHECK(d.abelian == AbelianGroup::from_cyclic_orders({2}));
    auto h = FiniteGroup::direct_product(FiniteGroup::abelian(AbelianGroup::from_cyclic_orders({2, 3})),
                                         named::symmetric(4));
    CHECK(describe(h).str() == "S4 x Z2 x Z3");
    // D12 x Z2 is not S3 x Z2^2 even though both have order 24 and share element orders 1,2,3,6.
    auto d12 = FiniteGroup::direct_product(named::dihedral(12), FiniteGroup::cyclic(2));
    auto s3 = FiniteGroup::direct_product(named::symmetric(3), FiniteGroup::cyclic(4));
    CHECK_FALSE(isomorphic(d12, s3));
}

TEST_CASE("semidirect product of Z3 by inversion is S3") {
    auto z3 = FiniteGroup::cyclic(3), z2 = FiniteGroup::cyclic(2);
    auto g = FiniteGroup::semidirect(z3, z2, [](int h, int n) { return h == 0 ? n : (3 - n) % 3; });
    CHECK(isomorphic(g, named::symmetric(3)));
}
