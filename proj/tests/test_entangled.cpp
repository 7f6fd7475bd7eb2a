#include <cmath>
#include <map>

#include "doctest.h"
#include "rgstar/entangled.hpp"
#include "rgstar/oracle.hpp"

using namespace rgstar;

namespace {

struct Instance {
  LatticeConfig cfg{2, 4};
  Lattice lat{cfg};
  SystemState others{cfg, {{0, 1, 2}}};
};

double two_sample_z(std::uint64_t a, std::uint64_t b, double n) {
  const double p = (static_cast<double>(a) + static_cast<double>(b)) / (2 * n);
  if (p == 0.0 || p == 1.0) return 0.0;
  return std::abs(static_cast<double>(a) - static_cast<double>(b)) / n / std::sqrt(p * (1 - p) * 2 / n);
}

}  // namespace

TEST_CASE("lazy graph assigns on demand and completes to a valid graph") {
  Instance in;
  const auto law = DegreeLaw::fixed(2, 4);
  Rng g(5);
  LazyGraph<Rng> lazy(in.lat, law, g);
  for (int rep = 0; rep < 500; ++rep) {
    const auto r = entangled_grow(lazy, in.others.occupancy(), 4, rep % 3, g);
    const std::size_t lazily = lazy.assigned_count();
    const auto& full = lazy.materialize();
    CHECK(full.is_complete());
    CHECK(lazily <= full.size());
    CHECK(lazy.pending_count() == 0);
    if (r.success) {
      // W from the completed graph equals W on the same graph seen through the lazy interface
      CHECK(weight(const_cast<UnderlyingGraph&>(full), in.others.occupancy(), r.polymer, rep % 3).elementary ==
            weight(lazy, in.others.occupancy(), r.polymer, rep % 3).elementary);
    }
  }
  lazy.start(3);
  CHECK_THROWS_AS(lazy.out_edges(12), std::logic_error);
}

TEST_CASE("weights computed lazily match the materialized graph") {
  Instance in;
  const auto law = DegreeLaw::fixed(2, 4);
  Rng g(6), side(60);
  LazyGraph<Rng> lazy(in.lat, law, g);
  int compared = 0;
  for (int rep = 0; rep < 800; ++rep) {
    const int feeler = rep % 4;
    const auto r = entangled_grow(lazy, in.others.occupancy(), 4, feeler, g);
    if (!r.success) continue;
    const auto lazy_w = complete_for_weights(lazy, in.others.occupancy(), r.polymer, feeler);
    lazy.rebind(side);
    UnderlyingGraph full = lazy.materialize();
    lazy.rebind(g);
    CHECK(weight(full, in.others.occupancy(), r.polymer, feeler).elementary == lazy_w.w.elementary);
    CHECK(weight_w0(full, r.polymer) == lazy_w.w0);
    ++compared;
  }
  CHECK(compared > 100);
}

TEST_CASE("feeler 0 without recoil needs no new assignments for the weights") {
  Instance in;
  const auto law = DegreeLaw::fixed(3, 4);
  Rng g(9);
  LazyGraph<Rng> lazy(in.lat, law, g);
  int checked = 0;
  for (int rep = 0; rep < 300; ++rep) {
    const auto r = entangled_grow(lazy, in.others.occupancy(), 4, 0, g);
    if (!r.success) continue;
    REQUIRE(r.recoils == 0);
    const std::size_t before = lazy.assigned_count();
    const auto w = complete_for_weights(lazy, in.others.occupancy(), r.polymer, 0);
    CHECK(lazy.assigned_count() == before);
    CHECK(w.w0 == 27);
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("compatible lazy graphs carry the polymer edges up front") {
  Instance in;
  const auto law = DegreeLaw::fixed(1, 4);
  Rng g(2);
  LazyGraph<Rng> lazy(in.lat, law, g);
  const Polymer c{5, 6, 10, 14};
  int front = 0;
  for (int rep = 0; rep < 4000; ++rep) {
    entangled_compatible(lazy, c);
    CHECK(lazy.assigned_count() == 3);
    UnderlyingGraph partial = lazy.partial();
    CHECK(is_compatible(partial, c));
    front += lazy.root() == c.front();
  }
  CHECK(std::abs(front - 2000) < 4 * std::sqrt(1000.0));
}

TEST_CASE("k = Q: entangled growth weights equal the full lattice graph") {
  Instance in;
  const auto law = DegreeLaw::fixed(4, 4);
  const Lattice& lat = in.lat;
  Rng g(14);
  LazyGraph<Rng> lazy(lat, law, g);
  for (int rep = 0; rep < 300; ++rep) {
    const int feeler = rep % 4;
    const auto r = entangled_grow(lazy, in.others.occupancy(), 4, feeler, g);
    if (!r.success) continue;
    FullGraph full(lat, lazy.root());
    CHECK(complete_for_weights(lazy, in.others.occupancy(), r.polymer, feeler).w.elementary ==
          weight(full, in.others.occupancy(), r.polymer, feeler).elementary);
  }
}

TEST_CASE("entangled and naive growth give the same per-polymer frequencies") {
  Instance in;
  const auto law = DegreeLaw::fixed(2, 4);
  const auto catalog = polymer_catalog(in.cfg, 3);
  std::vector<std::uint64_t> naive(catalog.size() + 1, 0), lazy_counts(catalog.size() + 1, 0);
  Rng g1(101), g2(202);
  UnderlyingGraph graph(in.lat);
  LazyGraph<Rng> lazy(in.lat, law, g2);
  const int runs = 100000;
  for (int rep = 0; rep < runs; ++rep) {
    generate(graph, in.lat, in.others.occupancy(), law, g1);
    const auto a = grow(graph, in.others.occupancy(), 3, 1, g1);
    ++naive[a.success ? *catalog.find(a.polymer) : catalog.size()];
    const auto b = entangled_grow(lazy, in.others.occupancy(), 3, 1, g2);
    ++lazy_counts[b.success ? *catalog.find(b.polymer) : catalog.size()];
  }
  double worst = 0;
  for (std::size_t i = 0; i < naive.size(); ++i) worst = std::max(worst, two_sample_z(naive[i], lazy_counts[i], runs));
  CHECK(worst < 4.0);
  CHECK(two_sample_chi_square(naive, lazy_counts).p_value > 0.01);
}

TEST_CASE("old-polymer weight law: lazy compatible graph against eager generation") {
  Instance in;
  const auto law = DegreeLaw::fixed(2, 4);
  const Polymer c{5, 6, 10, 14};
  std::map<double, std::uint64_t> eager_w, lazy_w;
  Rng g1(303), g2(404);
  UnderlyingGraph graph(in.lat);
  LazyGraph<Rng> lazy(in.lat, law, g2);
  const int runs = 50000;
  for (int rep = 0; rep < runs; ++rep) {
    generate_compatible(graph, in.lat, c, law, g1);
    ++eager_w[weight(graph, in.others.occupancy(), c, 2).value()];
    entangled_compatible(lazy, c);
    ++lazy_w[complete_for_weights(lazy, in.others.occupancy(), c, 2).w.value()];
  }
  std::vector<std::uint64_t> a, b;
  for (auto& [w, n] : eager_w) {
    a.push_back(n);
    b.push_back(lazy_w[w]);
  }
  for (auto& [w, n] : lazy_w)
    if (!eager_w.count(w)) {
      a.push_back(0);
      b.push_back(n);
    }
  double worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, two_sample_z(a[i], b[i], runs));
  CHECK(a.size() > 2);
  CHECK(worst < 4.0);
}
