#include <cmath>

#include "doctest.h"
#include "rgstar/oracle.hpp"

using namespace rgstar;

TEST_CASE("tiny state spaces") {
  const auto two = enumerate_states(LatticeConfig{1, 4}, 2, 2);
  REQUIRE(two.size() == 2);
  CHECK(two.find(SystemState(LatticeConfig{1, 4}, {{0, 1}, {2, 3}})).has_value());
  CHECK(two.find(SystemState(LatticeConfig{1, 4}, {{1, 2}, {3, 0}})).has_value());
  CHECK(enumerate_states(LatticeConfig{1, 4}, 1, 2).size() == 4);
  // self-avoiding walks with two steps on the 4x4 torus: 16 * 4 * 3 / 2
  CHECK(polymer_catalog(LatticeConfig{2, 4}, 3).size() == 96);

  for (auto [cfg, n, l] : {std::tuple{LatticeConfig{2, 3}, 3, 3}, std::tuple{LatticeConfig{2, 4}, 2, 3},
                           std::tuple{LatticeConfig{1, 6}, 2, 3}}) {
    const auto space = enumerate_states(cfg, n, l);
    CHECK(space.size() > 0);
    for (std::size_t s = 0; s < space.size(); ++s) {
      const auto state = space.state(s);
      CHECK_FALSE(validate(state).has_value());
      CHECK(space.find(state) == std::optional<std::size_t>(s));
      CHECK(space.find_ids({space.ids(s).begin(), space.ids(s).end()}) == std::optional<std::size_t>(s));
    }
  }
}

TEST_CASE("enumeration refuses large instances") {
  CHECK_THROWS_AS(enumerate_states(LatticeConfig{2, 7}, 2, 3), OracleRefused);
  CHECK_THROWS_AS(enumerate_states(LatticeConfig{2, 4}, 3, 3, 100), OracleRefused);
  CHECK_THROWS_AS(enumerate_states(LatticeConfig{1, 4}, 3, 2), OracleRefused);
}

TEST_CASE("k = Q graph enumeration") {
  const Lattice lat(LatticeConfig{2, 3});
  const SystemState s(LatticeConfig{2, 3}, {{0, 1, 2}});
  const auto graphs = enumerate_underlying_graphs(lat, s.occupancy(), DegreeLaw::fixed(4, 4));
  CHECK(graphs.size() == 6);
  for (const auto& e : graphs) CHECK(e.probability == Rational(1, 6));
}

TEST_CASE("compatible polymer enumeration") {
  Rng g(8);
  const LatticeConfig cfg{2, 4};
  const Lattice lat(cfg);
  const SystemState s(cfg, {{0, 1, 2}});
  UnderlyingGraph graph(lat);
  for (int rep = 0; rep < 300; ++rep) {
    generate(graph, lat, s.occupancy(), DegreeLaw::fixed(1 + rep % 4, 4), g);
    const int length = 2 + rep % 4;
    const auto all = enumerate_polymers(graph, s.occupancy(), length);
    double total = 0;
    for (const auto& c : all) {
      CHECK(c.front() == graph.root());
      CHECK(is_compatible(graph, c));
      for (int feeler = 0; feeler <= length; ++feeler) CHECK(prob_g(graph, s.occupancy(), c, feeler) > 0);
      total += prob_g(graph, s.occupancy(), c, rep % (length + 1));
    }
    CHECK(total <= 1.0 + 1e-12);
  }
  // root walled in
  UnderlyingGraph blocked(lat);
  const SystemState wall(cfg, {{4, 0, 1}, {12, 8, 9}, {6, 7}});
  blocked.reset(5);
  blocked.assign(5, lat.neighbors(5));
  CHECK(enumerate_polymers(blocked, wall.occupancy(), 2).empty());
}

TEST_CASE("exact kernel on a small instance") {
  const auto space = enumerate_states(LatticeConfig{2, 3}, 2, 2);
  for (int feeler = 0; feeler <= 2; ++feeler) {
    const auto kernel = exact_kernel_kQ(space, feeler);
    const auto report = check_detailed_balance(space, kernel);
    CHECK(report.exact);
    CHECK(report.max_violation == 0.0);
    CHECK(report.max_row_error == 0.0);
    CHECK(report.zero_one_move == 0);
    CHECK(report.one_move_pairs > 0);
    const auto pi = stationary_vector(to_float(kernel));
    for (double p : pi) CHECK(p == doctest::Approx(1.0 / static_cast<double>(space.size())).epsilon(1e-9));

    const auto contact = float_kernel_kQ(space, feeler, EnergyModel::contact(0.9));
    const auto cr = check_detailed_balance(space, contact);
    CHECK(cr.max_violation < 1e-12);
    CHECK(cr.zero_one_move == 0);
  }
  CHECK_THROWS(exact_kernel_kQ(space, 3));
}

TEST_CASE("irreducibility on small cases") {
  const auto ring = check_irreducibility(LatticeConfig{1, 4}, 2, 2);
  CHECK_FALSE(ring.irreducible);
  CHECK(ring.components == 2);
  CHECK(ring.witness.has_value());
  const auto dimers = check_irreducibility(LatticeConfig{2, 3}, 4, 2);
  CHECK(dimers.irreducible);
  CHECK(dimers.components == 1);
  CHECK(dimers.states == enumerate_states(LatticeConfig{2, 3}, 4, 2).size());
  CHECK(check_irreducibility(LatticeConfig{2, 3}, 2, 3).irreducible);
}

TEST_CASE("straight packing and the trapped configuration") {
  const auto box = straight_box_state(LatticeConfig{2, 6}, 4, 3);
  CHECK_FALSE(validate(box).has_value());
  CHECK(box.size() == 4);
  CHECK_THROWS_AS(straight_box_state(LatticeConfig{2, 4}, 9, 3), InfeasibleError);
  CHECK(reachable_from_all(LatticeConfig{2, 4}, 2, 3, straight_box_state(LatticeConfig{2, 4}, 2, 3)));

  const auto trapped = trapped_configuration();
  CHECK_FALSE(validate(trapped).has_value());
  CHECK(trapped.size() == 16);
  CHECK(trapped.occupancy().free_count() == 1);
  const int centre[] = {3, 3};
  CHECK(trapped.occupancy().free(Lattice(LatticeConfig{2, 9}).to_index(centre)));
  const auto frozen = check_locally_frozen(trapped);
  CHECK(frozen.frozen);
  CHECK(frozen.polymers == 16);
  CHECK(frozen.replacements >= 16);

  // a loose state is not frozen
  CHECK_FALSE(check_locally_frozen(boxed_initial_state(LatticeConfig{2, 4}, 2, 3)).frozen);
}

TEST_CASE("distances") {
  const std::vector<std::uint64_t> even{10, 10, 10, 10};
  const std::vector<double> uniform(4, 0.25);
  CHECK(distribution_distance(even, uniform).tv == 0.0);
  CHECK(distance_to_uniform(even).chi2 == 0.0);
  const std::vector<std::uint64_t> spike{0, 40, 0, 0};
  CHECK(distance_to_uniform(spike).tv == doctest::Approx(0.75));
  CHECK(chi_square_p_value(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
  const auto same = two_sample_chi_square(even, even);
  CHECK(same.chi2 == 0.0);
  CHECK(same.p_value == 1.0);
  const std::vector<std::uint64_t> a{100, 0, 5}, b{0, 100, 5};
  CHECK(two_sample_chi_square(a, b).p_value < 1e-10);
}

TEST_CASE("histograms reject unknown states") {
  const auto space = enumerate_states(LatticeConfig{2, 3}, 1, 2);
  StateHistogram h(space);
  h.add(space.state(3));
  h.add(space.state(3));
  CHECK(h.total() == 2);
  CHECK(h.counts()[3] == 2);
  CHECK_THROWS_AS(h.add(SystemState(LatticeConfig{2, 3}, {{0, 1, 2}})), std::logic_error);
}
