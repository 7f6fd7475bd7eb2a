#include <cmath>
#include <algorithm>
#include <set>

#include "doctest.h"
#include "rgstar/mcmc.hpp"
#include "rgstar/oracle.hpp"

using namespace rgstar;

namespace {

ChainConfig small_config(Implementation impl, std::uint64_t seed) {
  auto cfg = ChainConfig::uniform(LatticeConfig{2, 4}, 2, 3, DegreeLaw::fixed(3, 4), 1);
  cfg.implementation = impl;
  cfg.seed = seed;
  return cfg;
}

std::vector<VertexId> occupied_set(const SystemState& s) {
  std::vector<VertexId> v;
  for (VertexId x = 0; x < s.occupancy().vertex_count(); ++x)
    if (s.occupancy().occupied(x)) v.push_back(x);
  return v;
}

// Independent contact count from coordinates.
std::int64_t brute_contacts(const SystemState& s) {
  std::int64_t n = 0;
  const auto& cfg = s.lattice();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      for (VertexId u : s.polymer(i))
        for (VertexId v : s.polymer(j)) n += torus_adjacent(cfg, u, v);
  return n;
}

}  // namespace

TEST_CASE("acceptance probability") {
  CHECK(acceptance_probability(1.0, 5, 5) == 1.0);
  CHECK(acceptance_probability(1.0, 2, 6) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(acceptance_probability(1.0, 6, 2) == 1.0);
  CHECK(acceptance_probability(0.5, 8, 2) == 1.0);
  CHECK(acceptance_probability(0.25, 2, 1) == 0.5);
  // degenerate extended law: W0 is k^(L-1) on both sides
  Rng g(1);
  for (int t = 0; t < 1000; ++t) {
    const double q = std::exp(4 * uniform01(g) - 2);
    const double wn = 1 + uniform_below(g, 300), wo = 1 + uniform_below(g, 300);
    CHECK(acceptance_probability(q, wn, wo, true, 81, 81) == acceptance_probability(q, wn, wo));
    CHECK(acceptance_probability_log(std::log(q), std::log(wn), std::log(wo)) ==
          doctest::Approx(acceptance_probability(q, wn, wo)).epsilon(1e-12));
  }
  CHECK(acceptance_probability(1.0, 3, 6, true, 8, 4) == doctest::Approx(0.25));
  CHECK(acceptance_probability_log(0.0, 2000.0, 1000.0) == 1.0);
  CHECK(acceptance_probability_log(0.0, 1000.0, 2000.0) == 0.0);
}

TEST_CASE("contact counting") {
  const LatticeConfig cfg{2, 4};
  Rng g(3);
  for (int rep = 0; rep < 50; ++rep) {
    auto c = small_config(Implementation::Naive, 100 + static_cast<std::uint64_t>(rep));
    c.steps = 50;
    const auto r = run(c);
    CHECK(contact_count(r.final_state) == brute_contacts(r.final_state));
  }
  const SystemState s(cfg, {{0, 1}, {4, 5}});
  CHECK(contact_count(s) == 2);
  const auto e = EnergyModel::contact(0.5, 3.0);
  CHECK(e.energy(s) == doctest::Approx(2.0));
  CHECK(e.log_q_ratio(2, 5) == doctest::Approx(1.5));
  CHECK(EnergyModel::uniform().log_q_ratio(2, 5) == 0.0);
}

TEST_CASE("config validation") {
  auto cfg = ChainConfig::uniform(LatticeConfig{2, 4}, 2, 3, DegreeLaw::fixed(2, 4), 1);
  CHECK_NOTHROW(cfg.validate());
  auto bad = cfg;
  bad.law = DegreeLaw::fixed(2, 6);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.feeler = 4;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.lengths = {3, 1};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = cfg;
  bad.lengths.assign(6, 3);
  CHECK_THROWS_AS(bad.validate(), InfeasibleError);
  bad = cfg;
  bad.lengths.clear();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(Chain(cfg, SystemState(LatticeConfig{2, 4}, {{0, 1, 2}})), std::invalid_argument);
  CHECK_THROWS_AS(Chain(cfg, SystemState(LatticeConfig{2, 4}, {{0, 1, 2}, {2, 3, 7}})), std::invalid_argument);
}

TEST_CASE("steps = 0 returns the initial state") {
  for (auto impl : {Implementation::Naive, Implementation::Entangled}) {
    auto cfg = small_config(impl, 9);
    const auto r = run(cfg);
    CHECK(r.final_state == boxed_initial_state(cfg.lattice, cfg.lengths));
    CHECK(r.stats.steps == 0);
    const SystemState custom(cfg.lattice, {{5, 6, 7}, {12, 13, 14}});
    CHECK(run(cfg, custom).final_state == custom);
  }
}

TEST_CASE("same seed, same snapshot stream") {
  for (auto impl : {Implementation::Naive, Implementation::Entangled}) {
    auto cfg = small_config(impl, 77);
    cfg.steps = 3000;
    cfg.snapshot_every = 100;
    auto stream = [&] {
      std::string out;
      RunObserver obs;
      obs.on_snapshot = [&](std::uint64_t step, const SystemState& s) {
        out += std::to_string(step) + "\n" + snapshot_string(s);
      };
      run(cfg, std::nullopt, obs);
      return out;
    };
    const auto a = stream();
    CHECK(a == stream());
    cfg.seed = 78;
    CHECK(a != stream());
  }
}

TEST_CASE("adding a constant to the energy leaves trajectories unchanged") {
  for (auto impl : {Implementation::Naive, Implementation::Entangled}) {
    auto a = small_config(impl, 5);
    a.energy = EnergyModel::contact(0.7, 0.0);
    auto b = a;
    b.energy = EnergyModel::contact(0.7, 17.0);
    Chain ca(a), cb(b);
    for (int t = 0; t < 5000; ++t) {
      const auto oa = ca.step();
      const auto ob = cb.step();
      CHECK(oa.p_accept == ob.p_accept);
      CHECK(ca.state() == cb.state());
    }
    CHECK(ca.energy() + 17.0 == doctest::Approx(cb.energy()));
  }
}

TEST_CASE("incremental energy tracks the recomputed energy") {
  auto cfg = small_config(Implementation::Entangled, 12);
  cfg.energy = EnergyModel::contact(-0.4, 1.0);
  Chain chain(cfg);
  for (int t = 0; t < 3000; ++t) {
    chain.step();
    CHECK(chain.energy() == doctest::Approx(cfg.energy.energy(chain.state())).epsilon(1e-12));
  }
}

TEST_CASE("growth failures leave the state untouched") {
  // dense: most growth attempts fail
  for (auto impl : {Implementation::Naive, Implementation::Entangled}) {
    auto cfg = ChainConfig::uniform(LatticeConfig{2, 4}, 5, 3, DegreeLaw::fixed(2, 4), 0);
    cfg.implementation = impl;
    cfg.seed = 4;
    Chain chain(cfg);
    int consecutive = 0, pairs = 0;
    for (int t = 0; t < 3000; ++t) {
      const SystemState before = chain.state();
      const auto out = chain.step();
      CHECK_FALSE(validate(chain.state()).has_value());
      if (out.kind != StepKind::Accepted) {
        CHECK(chain.state() == before);
        for (std::size_t i = 0; i < chain.state().size(); ++i) CHECK_FALSE(chain.state().vacated(i));
      }
      consecutive = out.kind == StepKind::GrowthFailed ? consecutive + 1 : 0;
      pairs += consecutive >= 2;
    }
    CHECK(pairs > 0);
    CHECK(chain.stats().failures > 0);
    CHECK(chain.stats().steps == 3000);
    CHECK(chain.stats().failures + chain.stats().successes == 3000);
    CHECK(chain.stats().acceptances + chain.stats().rejections == chain.stats().successes);
  }
}

TEST_CASE("a walled-in configuration keeps its occupied set") {
  const SystemState trapped = trapped_configuration();
  ChainConfig cfg;
  cfg.lattice = trapped.lattice();
  cfg.lengths.assign(trapped.size(), 5);
  cfg.law = DegreeLaw::fixed(3, 4);
  cfg.feeler = 2;
  cfg.seed = 10;
  Chain chain(cfg, trapped);
  const auto occupied = occupied_set(trapped);
  int regrown = 0;
  for (int t = 0; t < 2000; ++t) {
    const SystemState before = chain.state();
    const auto out = chain.step();
    if (out.kind != StepKind::GrowthFailed) {
      const auto& removed = before.polymer(out.removed);
      for (VertexId v : out.candidate)
        CHECK((std::find(removed.begin(), removed.end(), v) != removed.end() || trapped.occupancy().free(v)));
      ++regrown;
    }
    CHECK(occupied_set(chain.state()) == occupied);
  }
  CHECK(regrown > 0);
}

TEST_CASE("a single polymer visits positions uniformly") {
  auto cfg = ChainConfig::uniform(LatticeConfig{2, 4}, 1, 3, DegreeLaw::fixed(2, 4), 1);
  cfg.seed = 2;
  cfg.steps = 400000;
  const auto space = enumerate_states(cfg.lattice, 1, 3);
  StateHistogram hist(space);
  RunObserver obs;
  obs.on_step = [&](const StepOutcome&, const SystemState& s) { hist.add(s); };
  run(cfg, std::nullopt, obs);
  CHECK(space.size() == 96);
  CHECK(distance_to_uniform(hist.counts()).tv < 0.02);
}

TEST_CASE("observer cadence") {
  auto cfg = small_config(Implementation::Entangled, 3);
  cfg.steps = 1000;
  cfg.snapshot_every = 300;
  cfg.stats_every = 400;
  std::vector<std::uint64_t> snaps, rows;
  RunObserver obs;
  obs.on_snapshot = [&](std::uint64_t s, const SystemState&) { snaps.push_back(s); };
  obs.on_stats = [&](std::uint64_t s, const ChainStats&) { rows.push_back(s); };
  const auto r = run(cfg, std::nullopt, obs);
  CHECK(snaps == std::vector<std::uint64_t>{0, 300, 600, 900, 1000});
  CHECK(rows == std::vector<std::uint64_t>{400, 800, 1000});
  CHECK(r.stats.steps == 1000);
  CHECK(r.stats.construction_rate() > 0.5);
}
