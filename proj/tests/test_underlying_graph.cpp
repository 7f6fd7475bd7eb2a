#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "rgstar/oracle.hpp"
#include "rgstar/underlying_graph.hpp"

using namespace rgstar;

namespace {

// Independent reachability check: BFS over the recorded out-edges.
bool reachable_closure(const UnderlyingGraph& g) {
  std::vector<char> seen(g.lattice_size(), 0);
  std::vector<VertexId> stack{g.root()};
  seen[g.root()] = 1;
  std::size_t count = 0;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    ++count;
    if (!g.assigned(v)) return false;
    for (VertexId u : g.out_edges(v))
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
  }
  return count == g.size();
}

Rational pow(Rational x, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= x;
  return r;
}

}  // namespace

TEST_CASE("degree laws") {
  const auto fixed = DegreeLaw::fixed(2, 4);
  CHECK(fixed.is_fixed());
  CHECK(fixed.p(2) == 1.0);
  CHECK(fixed.p(3) == 0.0);
  CHECK(fixed.degenerate());
  const auto ext = DegreeLaw::extended({0, 0.5, 0.5, 0});
  CHECK_FALSE(ext.is_fixed());
  CHECK_FALSE(ext.degenerate());
  CHECK(ext.mean_degree() == doctest::Approx(2.5));
  CHECK(DegreeLaw::extended({0, 0, 1, 0}).degenerate());
  CHECK_THROWS_AS(DegreeLaw::fixed(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(DegreeLaw::fixed(5, 4), std::invalid_argument);
  CHECK_THROWS_AS(DegreeLaw::extended({0.5, 0.4}), std::invalid_argument);
  CHECK_THROWS_AS(DegreeLaw::extended({1.5, -0.5}), std::invalid_argument);
}

TEST_CASE("generated graphs are closed and reachable") {
  Rng g(11);
  for (auto [cfg, k] : {std::pair{LatticeConfig{1, 6}, 1}, std::pair{LatticeConfig{2, 5}, 2},
                        std::pair{LatticeConfig{2, 5}, 3}, std::pair{LatticeConfig{3, 3}, 2}}) {
    const Lattice lat(cfg);
    const auto law = DegreeLaw::fixed(k, lat.coordination());
    const Occupancy occ(lat.vertex_count());
    UnderlyingGraph graph(lat);
    for (int rep = 0; rep < 200; ++rep) {
      generate(graph, lat, occ, law, g, rep % 2 ? WaitingOrder::Lifo : WaitingOrder::Fifo);
      CHECK(graph.is_complete());
      CHECK(reachable_closure(graph));
      for (VertexId v : graph.vertices()) CHECK(graph.out_degree(v) == k);
    }
  }
}

TEST_CASE("k = Q spans the lattice and k = 1 on a ring is a path") {
  Rng g(3);
  const Lattice lat(LatticeConfig{2, 4});
  UnderlyingGraph graph(lat);
  const Occupancy occ(lat.vertex_count());
  generate(graph, lat, occ, DegreeLaw::fixed(4, 4), g);
  CHECK(graph.size() == lat.vertex_count());
  CHECK(prob_u_exact(graph, DegreeLaw::fixed(4, 4), 16) == Rational(1, 16));

  const Lattice ring(LatticeConfig{1, 6});
  UnderlyingGraph path(ring);
  for (int rep = 0; rep < 100; ++rep) {
    generate(path, ring, Occupancy(6), DegreeLaw::fixed(1, 2), g);
    // walk the single out-edges from the root; the first repeat closes the graph
    std::set<VertexId> seen;
    VertexId v = path.root();
    while (seen.insert(v).second) v = path.out_edges(v)[0];
    CHECK(seen.size() == path.size());
  }
}

TEST_CASE("root is a free vertex") {
  Rng g(5);
  const Lattice lat(LatticeConfig{2, 3});
  const SystemState s(LatticeConfig{2, 3}, {{0, 1, 2}, {3, 4, 5}});
  UnderlyingGraph graph(lat);
  std::map<VertexId, int> roots;
  for (int rep = 0; rep < 3000; ++rep) {
    generate(graph, lat, s.occupancy(), DegreeLaw::fixed(2, 4), g);
    ++roots[graph.root()];
  }
  CHECK(roots.size() == 3);
  for (auto [v, n] : roots) {
    CHECK(v >= 6);
    CHECK(std::abs(n - 1000) < 4 * std::sqrt(3000 * (1.0 / 3) * (2.0 / 3)));
  }
  const auto full = boxed_initial_state(LatticeConfig{2, 3}, 3, 3);
  CHECK_THROWS_AS(generate(graph, lat, full.occupancy(), DegreeLaw::fixed(2, 4), g), InfeasibleError);
}

TEST_CASE("compatible generation") {
  Rng g(7);
  const Lattice lat(LatticeConfig{2, 5});
  const Polymer c{0, 1, 6, 11};
  UnderlyingGraph graph(lat);
  int rooted_front = 0;
  const int draws = 10000;
  for (int rep = 0; rep < draws; ++rep) {
    generate_compatible(graph, lat, c, DegreeLaw::fixed(2, 4), g);
    CHECK(is_compatible(graph, c));
    CHECK(reachable_closure(graph));
    rooted_front += graph.root() == c.front();
  }
  CHECK(std::abs(rooted_front - draws / 2) < 4 * std::sqrt(draws * 0.25));

  // k = Q: the orientation is the only randomness
  std::set<std::vector<VertexId>> forms;
  for (int rep = 0; rep < 200; ++rep) {
    generate_compatible(graph, lat, c, DegreeLaw::fixed(4, 4), g);
    forms.insert(graph.canonical_form());
    CHECK(prob_c_exact(graph, c, DegreeLaw::fixed(4, 4), 25) == Rational(1, 2));
  }
  CHECK(forms.size() == 2);
  const auto all = enumerate_compatible_graphs(lat, c, DegreeLaw::fixed(4, 4));
  REQUIRE(all.size() == 2);
  CHECK(all[0].probability == Rational(1, 2));
  CHECK(all[1].probability == Rational(1, 2));
}

TEST_CASE("is_compatible") {
  Rng g(9);
  const Lattice lat(LatticeConfig{2, 5});
  const Polymer c{0, 1, 6, 11};
  UnderlyingGraph graph(lat);
  generate_compatible(graph, lat, c, DegreeLaw::fixed(2, 4), g);
  CHECK(is_compatible(graph, c));
  // rooted at the interior vertex 1 with every lattice edge present
  UnderlyingGraph interior(lat);
  interior.reset(1);
  interior.assign(1, lat.neighbors(1));
  CHECK_FALSE(is_compatible(interior, c));
}

TEST_CASE("is_compatible matches prob_g > 0 on enumerated instances") {
  const Lattice lat(LatticeConfig{1, 5});
  const auto law = DegreeLaw::extended({0.5, 0.5});
  const Occupancy occ(5);
  const auto graphs = enumerate_underlying_graphs(lat, occ, law);
  const auto catalog = polymer_catalog(LatticeConfig{1, 5}, 3);
  std::size_t positives = 0;
  for (const auto& e : graphs) {
    auto& graph = const_cast<UnderlyingGraph&>(e.graph);
    for (const auto& c : catalog.polymers) {
      const bool compat = is_compatible(graph, c);
      CHECK(compat == (prob_g(graph, occ, c, 3) > 0.0));
      positives += compat;
    }
  }
  CHECK(positives > 0);
}

TEST_CASE("closed forms of the graph probabilities") {
  const auto law2 = DegreeLaw::fixed(2, 4);
  Rng g(21);
  const Lattice lat(LatticeConfig{2, 3});
  UnderlyingGraph graph(lat);
  const Occupancy occ(9);
  do generate(graph, lat, occ, law2, g);
  while (graph.size() != 7);
  CHECK(prob_u_exact(graph, law2, 10) == pow(Rational(1, 6), 7) / 10);
  CHECK(std::exp(log_prob_u(graph, law2, 10)) == doctest::Approx(std::pow(1.0 / 6, 7) / 10).epsilon(1e-12));

  const Polymer c{0, 1, 2};
  do generate_compatible(graph, lat, c, law2, g);
  while (graph.size() != 9);
  const Rational expected = pow(Rational(1, 6), 7) * pow(Rational(1, 3), 2) / 2;
  CHECK(prob_c_exact(graph, c, law2, 10) == expected);
  CHECK(prob_c_direct(graph, c, law2) == expected);
  CHECK(prob_c_exact(graph, c, law2, 10) == CombinatorialConstants::make(4, 2, 3, 10).eta * prob_u_exact(graph, law2, 10));
  CHECK(std::exp(log_prob_c(graph, c, law2, 10)) == doctest::Approx(expected.convert_to<double>()).epsilon(1e-12));
  CHECK(prob_c_exact(graph, Polymer{3, 4, 5}, law2, 10) == 0);

  const auto kq = DegreeLaw::fixed(4, 4);
  UnderlyingGraph full(lat);
  generate(full, lat, occ, kq, g);
  CHECK(prob_u_exact(full, kq, 9) == Rational(1, 9));
}

TEST_CASE("combinatorial constants") {
  const auto k = CombinatorialConstants::make(4, 2, 3, 10);
  CHECK(k.alpha == Rational(1, 6));
  CHECK(k.beta == Rational(1, 3));
  CHECK(k.eta == Rational(10, 2) * 4);
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(4, 5) == 0);
}

TEST_CASE("d=1 a=6 k=1: branch probabilities sum to one") {
  const Lattice ring(LatticeConfig{1, 6});
  const auto law = DegreeLaw::fixed(1, 2);
  const auto graphs = enumerate_underlying_graphs(ring, Occupancy(6), law);
  Rational total = 0;
  for (const auto& e : graphs) {
    CHECK(e.probability == pow(Rational(1, 2), static_cast<int>(e.graph.size())) / 6);
    total += e.probability;
  }
  CHECK(total == 1);
}

TEST_CASE("weight_w0 is k^(L-1) in fixed mode") {
  Rng g(4);
  const Lattice lat(LatticeConfig{2, 5});
  UnderlyingGraph graph(lat);
  const Polymer c{0, 1, 6, 11, 16};
  for (int k = 1; k <= 4; ++k) {
    generate_compatible(graph, lat, c, DegreeLaw::fixed(k, 4), g);
    CHECK(weight_w0(graph, c) == static_cast<std::uint64_t>(std::pow(k, 4)));
  }
}

TEST_CASE("FIFO and LIFO waiting sets give the same graph law") {
  const Lattice ring(LatticeConfig{1, 5});
  const auto law = DegreeLaw::extended({0.5, 0.5});
  const Occupancy occ(5);
  const auto graphs = enumerate_underlying_graphs(ring, occ, law);
  std::map<std::vector<VertexId>, std::size_t> index;
  std::vector<double> target;
  for (const auto& e : graphs) {
    index[e.graph.canonical_form()] = target.size();
    target.push_back(e.probability.convert_to<double>());
  }
  std::vector<std::uint64_t> fifo(target.size(), 0), lifo(target.size(), 0);
  Rng g(77);
  UnderlyingGraph graph(ring);
  const int draws = 100000;
  for (int rep = 0; rep < draws; ++rep) {
    generate(graph, ring, occ, law, g, WaitingOrder::Fifo);
    ++fifo.at(index.at(graph.canonical_form()));
    generate(graph, ring, occ, law, g, WaitingOrder::Lifo);
    ++lifo.at(index.at(graph.canonical_form()));
  }
  CHECK(two_sample_chi_square(fifo, lifo).p_value > 0.01);
  CHECK(distribution_distance(fifo, target).p_value > 0.01);
  CHECK(distribution_distance(lifo, target).p_value > 0.01);
}

TEST_CASE("graph dump") {
  const Lattice ring(LatticeConfig{1, 3});
  UnderlyingGraph graph(ring);
  graph.reset(0);
  const VertexId e0[] = {1}, e1[] = {2}, e2[] = {0};
  graph.assign(0, e0);
  graph.assign(1, e1);
  graph.assign(2, e2);
  std::ostringstream os;
  write_graph_dump(os, graph);
  CHECK(os.str() == "0*: 1\n1: 2\n2: 0\n");
}
