#include <set>
#include <sstream>
#include <tuple>

#include "doctest.h"
#include "rgstar/oracle.hpp"
#include "rgstar/system_state.hpp"

using namespace rgstar;

TEST_CASE("validate names the first violation") {
  const LatticeConfig cfg{2, 4};
  CHECK(validate(SystemState(cfg, {{0, 1, 2}, {2, 6, 10}})).value_or("").rfind("overlap", 0) == 0);
  CHECK(validate(SystemState(cfg, {{0, 5, 6}})).value_or("").rfind("broken path", 0) == 0);
  CHECK_FALSE(validate(boxed_initial_state(cfg, 2, 4)).has_value());
  CHECK(validate(SystemState(cfg, {{0, 1, 0}})).has_value());
}

TEST_CASE("remove and insert") {
  const LatticeConfig cfg{2, 5};
  const SystemState original = boxed_initial_state(cfg, 3, 4);
  SystemState s = original;
  const auto free_before = s.occupancy().free_count();
  const Polymer last = s.remove_polymer(2);
  CHECK(s.occupancy().free_count() == free_before + 4);
  s.insert_polymer(last);
  CHECK(s == original);
  CHECK_THROWS_AS(s.insert_polymer(s.polymer(0)), OverlapError);
  CHECK(s == original);
}

TEST_CASE("vacate and occupy keep slot order") {
  SystemState s = boxed_initial_state(LatticeConfig{2, 4}, 2, 3);
  const Polymer p = s.polymer(0);
  s.vacate(0);
  CHECK(s.vacated(0));
  CHECK(s.occupancy().free(p[0]));
  CHECK_THROWS_AS(s.occupy(0, s.polymer(1)), OverlapError);
  s.occupy(0, p);
  CHECK_FALSE(s.vacated(0));
  CHECK(s.occupancy().owner(p[1]) == 0);
  CHECK_THROWS_AS(s.occupy(1, p), std::logic_error);
}

TEST_CASE("density") {
  std::vector<Polymer> ps;
  const LatticeConfig big{2, 135};
  for (VertexId i = 0; i < 100; ++i) {
    Polymer p;
    for (VertexId j = 0; j < 25; ++j) p.push_back(i * 135 + j);
    ps.push_back(p);
  }
  CHECK(density(SystemState(big, ps)) == Ratio{2500, 18225});
  CHECK(density(SystemState(big)).num == 0);
  CHECK(density(boxed_initial_state(LatticeConfig{1, 4}, 2, 2)) == Ratio{1, 1});
}

TEST_CASE("boxed initial states") {
  const auto ring = boxed_initial_state(LatticeConfig{1, 6}, 2, 3);
  CHECK(ring.polymer(0) == Polymer{0, 1, 2});
  CHECK(ring.polymer(1) == Polymer{3, 4, 5});

  const auto two = boxed_initial_state(LatticeConfig{2, 4}, 2, 4);
  CHECK_FALSE(validate(two).has_value());

  for (auto [cfg, l] : {std::pair{LatticeConfig{2, 4}, 4}, std::pair{LatticeConfig{2, 6}, 3},
                        std::pair{LatticeConfig{3, 3}, 3}, std::pair{LatticeConfig{2, 5}, 5}}) {
    const int n = static_cast<int>(cfg.vertex_count()) / l;
    const auto full = boxed_initial_state(cfg, n, l);
    CHECK_FALSE(validate(full).has_value());
    CHECK(full.occupancy().free_count() == 0);
  }
  CHECK_THROWS_AS(boxed_initial_state(LatticeConfig{2, 3}, 5, 2), InfeasibleError);
  const std::vector<int> mixed{2, 5, 3};
  CHECK_FALSE(validate(boxed_initial_state(LatticeConfig{2, 4}, mixed)).has_value());
}

TEST_CASE("boustrophedon order is a Hamiltonian path") {
  for (auto cfg : {LatticeConfig{2, 3}, LatticeConfig{2, 4}, LatticeConfig{3, 3}, LatticeConfig{3, 4}, LatticeConfig{4, 4}}) {
    const auto order = boustrophedon_order(cfg);
    CHECK(order.size() == cfg.vertex_count());
    CHECK(std::set<VertexId>(order.begin(), order.end()).size() == order.size());
    for (std::size_t i = 1; i < order.size(); ++i) CHECK(torus_adjacent(cfg, order[i - 1], order[i]));
  }
}

TEST_CASE("canonical keys ignore orientation and order") {
  const LatticeConfig cfg{2, 4};
  const SystemState s(cfg, {{0, 1, 2}, {8, 9, 13}});
  const SystemState reversed(cfg, {{2, 1, 0}, {8, 9, 13}});
  const SystemState swapped(cfg, {{13, 9, 8}, {0, 1, 2}});
  CHECK(canonical_key(s) == canonical_key(reversed));
  CHECK(canonical_key(s) == canonical_key(swapped));
  CHECK(canonical_key(s) != canonical_key(SystemState(cfg, {{0, 1, 2}, {8, 9, 10}})));
  CHECK(canonical_orientation(Polymer{5, 4, 0}) == Polymer{0, 4, 5});
}

TEST_CASE("canonical keys separate every enumerated state") {
  for (auto [cfg, n, l] : {std::tuple{LatticeConfig{2, 3}, 2, 3}, std::tuple{LatticeConfig{2, 4}, 2, 3},
                           std::tuple{LatticeConfig{3, 3}, 2, 2}}) {
    const auto space = enumerate_states(cfg, n, l);
    std::set<CanonicalKey> keys;
    for (std::size_t s = 0; s < space.size(); ++s) keys.insert(canonical_key(space.state(s)));
    CHECK(keys.size() == space.size());
  }
}

TEST_CASE("snapshot round trip") {
  const LatticeConfig cfg{3, 4};
  const SystemState s(cfg, {{0, 1, 2, 6}, {63, 62, 58}, {32, 48}});
  const std::string text = snapshot_string(s);
  CHECK(text.substr(0, text.find('\n')) == "3 4 3 0");
  const SystemState back = parse_snapshot(text);
  CHECK(back == s);
  CHECK(snapshot_string(back) == text);

  const auto uniform = boxed_initial_state(LatticeConfig{2, 5}, 4, 5);
  CHECK(snapshot_string(uniform).substr(0, 8) == "2 5 4 5\n");
  CHECK(parse_snapshot(snapshot_string(uniform)) == uniform);
}

TEST_CASE("malformed snapshots are rejected") {
  CHECK_THROWS(parse_snapshot(""));
  CHECK_THROWS(parse_snapshot("2 4 1 3\n0 1\n"));
  CHECK_THROWS(parse_snapshot("2 4 2 2\n0 1\n"));
  CHECK_THROWS(parse_snapshot("2 4 2 2\n0 1\n1 2\n"));
  CHECK_THROWS(parse_snapshot("2 4 1 2\n0 x\n"));
}
