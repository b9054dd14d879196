#include <catch2/catch_amalgamated.hpp>

#include "stone/generators.hpp"
#include "stone/serialize.hpp"

using namespace stone;

TEST_CASE("groupoid documents round-trip exactly") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto g = random_groupoid(seed, 4, 24);
    auto j = groupoid_to_json(g);
    auto parsed = groupoid_from_json(j);
    CHECK(groupoid_to_json(parsed.groupoid).dump() == j.dump());
  }
}

TEST_CASE("tower documents round-trip exactly") {
  for (auto t : {cyclic_tower(3, 3), translation_tower(2, 2), mod_action_tower(2, 3)}) {
    auto j = tower_to_json(t);
    auto parsed = tower_from_json(j);
    CHECK(tower_to_json(parsed.tower).dump() == j.dump());
  }
}

TEST_CASE("functor documents round-trip exactly") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto f = random_functor(seed, 32);
    auto j = functor_to_json(f);
    CHECK(functor_to_json(functor_from_json(j)).dump() == j.dump());
  }
}

TEST_CASE("names are preserved") {
  auto g = pair_groupoid(2);
  json names;
  names["objects"] = {"a", "b"};
  auto j = groupoid_to_json(g, names);
  auto parsed = groupoid_from_json(j);
  CHECK(parsed.names == names);
  CHECK(groupoid_to_json(parsed.groupoid, parsed.names).dump() == j.dump());
}

TEST_CASE("comp triples cover exactly the composable pairs of valid documents") {
  auto g = random_groupoid(5, 3, 20);
  auto j = groupoid_to_json(g);
  auto parsed = groupoid_from_json(j).groupoid;
  size_t composable = 0;
  for (int a = 0; a < parsed.morphism_count(); ++a)
    for (int b = 0; b < parsed.morphism_count(); ++b)
      if (parsed.tgt[a] == parsed.src[b]) ++composable;
  CHECK(parsed.comp.size() == composable);
}

TEST_CASE("format errors") {
  CHECK_THROWS_AS(groupoid_from_json(json::parse("[]")), StructureError);
  CHECK_THROWS_AS(groupoid_from_json(json::parse("{}")), StructureError);
  // wrong version
  auto j = groupoid_to_json(pair_groupoid(2));
  j["version"] = 99;
  CHECK_THROWS_AS(groupoid_from_json(j), StructureError);
  // missing table
  j = groupoid_to_json(pair_groupoid(2));
  j.erase("inv");
  CHECK_THROWS_AS(groupoid_from_json(j), StructureError);
  // duplicate comp key
  j = groupoid_to_json(one_object_groupoid(cyclic_group(2)));
  j["comp"].push_back(json::array({0, 0, 1}));
  CHECK_THROWS_AS(groupoid_from_json(j), StructureError);
}

TEST_CASE("out-of-range indices are named") {
  auto j = groupoid_to_json(one_object_groupoid(cyclic_group(2)));
  j["src"][1] = 7;
  try {
    groupoid_from_json(j);
    FAIL("expected a structural error");
  } catch (const StructureError& e) {
    std::string msg = e.what();
    CHECK(msg.find("src") != std::string::npos);
    CHECK(msg.find("7") != std::string::npos);
  }
}

TEST_CASE("subset documents") {
  auto j = subset_to_json({1, 2, 5});
  CHECK(subset_from_json(j) == std::vector<int>{1, 2, 5});
  CHECK_THROWS_AS(subset_from_json(json::parse("{\"version\":1}")), StructureError);
}
