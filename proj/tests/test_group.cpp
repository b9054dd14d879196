#include <catch2/catch_amalgamated.hpp>

#include "stone/group.hpp"

#include "oracles.hpp"

using namespace stone;

TEST_CASE("catalog groups satisfy the axioms table-wise") {
  for (const auto& g : oracles::group_catalog(16)) {
    CAPTURE(g.order());
    CHECK(is_valid_group(g));
  }
}

TEST_CASE("subgroup lattices of small groups") {
  CHECK(all_subgroups(cyclic_group(4)).size() == 3);
  CHECK(all_subgroups(direct_product(cyclic_group(2), cyclic_group(2))).size() == 5);
  CHECK(all_subgroups(symmetric_group_3()).size() == 6);
  CHECK(all_subgroups(dihedral_group(4)).size() == 10);
  CHECK(all_subgroups(quaternion_group()).size() == 6);
}

TEST_CASE("normal subgroups of small groups") {
  CHECK(normal_subgroups(symmetric_group_3()).size() == 3);
  CHECK(normal_subgroups(dihedral_group(4)).size() == 6);
  // every subgroup of the quaternion group is normal
  CHECK(normal_subgroups(quaternion_group()).size() == 6);
  for (const auto& h : all_subgroups(cyclic_group(12)))
    CHECK(is_normal_subgroup(cyclic_group(12), h));
}

TEST_CASE("group isomorphism testing") {
  CHECK(group_isomorphic(cyclic_group(6), direct_product(cyclic_group(2), cyclic_group(3))));
  CHECK(group_isomorphic(symmetric_group_3(), dihedral_group(3)));
  CHECK_FALSE(group_isomorphic(cyclic_group(4), direct_product(cyclic_group(2), cyclic_group(2))));
  CHECK_FALSE(group_isomorphic(dihedral_group(4), quaternion_group()));
  CHECK_FALSE(group_isomorphic(cyclic_group(8), direct_product(cyclic_group(2), cyclic_group(4))));
  CHECK(group_isomorphic(alternating_group_4(), alternating_group_4()));
  CHECK_FALSE(group_isomorphic(alternating_group_4(), dihedral_group(6)));
  CHECK_FALSE(group_isomorphic(alternating_group_4(), cyclic_group(12)));
}

TEST_CASE("element orders") {
  auto q8 = quaternion_group();
  auto orders = element_orders(q8);
  CHECK(orders == std::vector<int>{1, 2, 4, 4, 4, 4, 4, 4});
  CHECK(element_orders(dihedral_group(4)) == std::vector<int>{1, 2, 2, 2, 2, 2, 4, 4});
}

TEST_CASE("right cosets") {
  auto c4 = cyclic_group(4);
  auto cosets = right_cosets(c4, {0, 2});
  REQUIRE(cosets.size() == 2);
  CHECK(cosets[0] == std::vector<int>{0, 2});
  CHECK(cosets[1] == std::vector<int>{1, 3});
}

TEST_CASE("generating sequences generate") {
  for (const auto& g : oracles::group_catalog(12)) {
    auto gens = generating_sequence(g);
    CHECK(static_cast<int>(subgroup_closure(g, gens).size()) == g.order());
  }
}

TEST_CASE("coset enumeration recovers small groups from their tables") {
  // presentation by the full multiplication table
  for (const auto& g : oracles::group_catalog(8)) {
    std::vector<std::vector<int>> relators;
    relators.push_back({2 * g.identity});
    for (int a = 0; a < g.order(); ++a)
      for (int b = 0; b < g.order(); ++b)
        relators.push_back({2 * a, 2 * b, 2 * g.mul(a, b) + 1});
    oracles::CosetEnumerator ce(g.order(), relators);
    auto presented = ce.enumerate();
    REQUIRE(presented.has_value());
    CHECK(presented->order() == g.order());
    CHECK(is_valid_group(*presented));
    CHECK(group_isomorphic(*presented, g));
  }
}
