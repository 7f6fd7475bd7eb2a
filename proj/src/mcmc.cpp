#include "rgstar/mcmc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rgstar {

std::int64_t contacts_with(const Lattice& lattice, const Occupancy& occ, std::span<const VertexId> c) {
  std::int64_t n = 0;
  for (VertexId v : c)
    for (VertexId u : lattice.neighbors(v))
      if (occ.occupied(u)) ++n;
  return n;
}

std::int64_t contact_count(const SystemState& state) {
  const Lattice lattice(state.lattice());
  const auto& occ = state.occupancy();
  std::int64_t n = 0;
  for (VertexId v = 0; v < lattice.vertex_count(); ++v) {
    if (occ.free(v)) continue;
    for (VertexId u : lattice.neighbors(v))
      if (u > v && occ.occupied(u) && occ.owner(u) != occ.owner(v)) ++n;
  }
  return n;
}

double EnergyModel::energy(const SystemState& state) const {
  if (kind == Kind::Uniform) return 0.0;
  return offset - epsilon * static_cast<double>(contact_count(state));
}

double EnergyModel::log_q_ratio(std::int64_t c_old, std::int64_t c_new) const {
  if (kind == Kind::Uniform) return 0.0;
  return epsilon * static_cast<double>(c_new - c_old);
}

ChainConfig ChainConfig::uniform(LatticeConfig lattice, int n, int length, DegreeLaw law, int feeler) {
  ChainConfig cfg;
  cfg.lattice = lattice;
  cfg.lengths.assign(static_cast<std::size_t>(n), length);
  cfg.law = std::move(law);
  cfg.feeler = feeler;
  return cfg;
}

void ChainConfig::validate() const {
  lattice.validate();
  if (lengths.empty()) throw std::invalid_argument("N must be >= 1");
  if (law.coordination() != lattice.coordination())
    throw std::invalid_argument("degree law has Q = " + std::to_string(law.coordination()) + " but the lattice has Q = " +
                                std::to_string(lattice.coordination()));
  std::uint64_t total = 0;
  int shortest = std::numeric_limits<int>::max();
  for (int l : lengths) {
    if (l < 2) throw std::invalid_argument("polymer length L must be >= 2");
    total += static_cast<std::uint64_t>(l);
    shortest = std::min(shortest, l);
  }
  if (feeler < 0 || feeler > shortest) throw std::invalid_argument("feeler length must lie in [0, L]");
  if (total > lattice.vertex_count())
    throw InfeasibleError("infeasible: N*L = " + std::to_string(total) + " exceeds a^d = " +
                          std::to_string(lattice.vertex_count()));
}

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::GrowthFailed:
      return "growth_failed";
    case StepKind::Rejected:
      return "rejected";
    case StepKind::Accepted:
      return "accepted";
  }
  return "?";
}

void ChainStats::record(StepKind kind) {
  ++steps;
  switch (kind) {
    case StepKind::GrowthFailed:
      ++failures;
      break;
    case StepKind::Rejected:
      ++successes;
      ++rejections;
      break;
    case StepKind::Accepted:
      ++successes;
      ++acceptances;
      break;
  }
}

double acceptance_probability(double q_ratio, double w_new, double w_old, bool extended, double w0_new,
                              double w0_old) {
  double r = q_ratio * (w_new / w_old);
  if (extended && w0_new != w0_old) r *= w0_old / w0_new;
  if (!(r < 1.0)) return 1.0;
  return r;
}

double acceptance_probability_log(double log_q_ratio, double log_w_new, double log_w_old, bool extended,
                                  double log_w0_new, double log_w0_old) {
  double lr = log_q_ratio + log_w_new - log_w_old;
  if (extended) lr += log_w0_old - log_w0_new;
  if (lr >= 0.0) return 1.0;
  return std::exp(lr);
}

namespace {

SystemState checked_initial(const ChainConfig& cfg, SystemState initial) {
  cfg.validate();
  if (!(initial.lattice() == cfg.lattice)) throw std::invalid_argument("initial state lattice differs from config");
  if (initial.size() != cfg.polymer_count()) throw std::invalid_argument("initial state has the wrong polymer count");
  for (std::size_t i = 0; i < initial.size(); ++i)
    if (initial.polymer(i).size() != static_cast<std::size_t>(cfg.lengths[i]))
      throw std::invalid_argument("initial state polymer " + std::to_string(i) + " has the wrong length");
  if (auto err = validate(initial)) throw std::invalid_argument("invalid initial state: " + *err);
  return initial;
}

SystemState boxed_for(const ChainConfig& cfg) {
  cfg.validate();
  return boxed_initial_state(cfg.lattice, cfg.lengths);
}

}  // namespace

Chain::Chain(ChainConfig cfg) : Chain(cfg, boxed_for(cfg)) {}

Chain::Chain(ChainConfig cfg, SystemState initial)
    : cfg_(std::move(cfg)),
      lattice_(cfg_.lattice),
      state_(checked_initial(cfg_, std::move(initial))),
      rng_(cfg_.seed),
      side_rng_(derive_seed(cfg_.seed, 0x51de)),
      g_new_(lattice_),
      g_old_(lattice_),
      lazy_new_(lattice_, cfg_.law, rng_),
      lazy_old_(lattice_, cfg_.law, rng_) {
  contacts_ = contact_count(state_);
}

double Chain::energy() const {
  if (cfg_.energy.kind == EnergyModel::Kind::Uniform) return 0.0;
  return cfg_.energy.offset - cfg_.energy.epsilon * static_cast<double>(contacts_);
}

StepOutcome Chain::step() {
  const auto start = std::chrono::steady_clock::now();
  StepOutcome out;
  const std::size_t i = uniform_below(rng_, static_cast<std::uint32_t>(state_.size()));
  out.removed = i;
  const Polymer old = state_.polymer(i);
  state_.vacate(i);

  bool grown = false;
  if (cfg_.implementation == Implementation::Naive) {
    generate(g_new_, lattice_, state_.occupancy(), cfg_.law, rng_);
    auto res = grow(g_new_, state_.occupancy(), static_cast<int>(old.size()), cfg_.feeler, rng_);
    out.assigned_new = out.full_new = g_new_.size();
    if (res.success) {
      out.candidate = std::move(res.polymer);
      evaluate_naive(i, old, out);
      grown = true;
    }
  } else {
    grown = evaluate_entangled(i, old, out);
  }

  if (!grown) {
    out.kind = StepKind::GrowthFailed;
    state_.occupy(i, old);
  } else {
    decide(i, old, out);
  }
  stats_.record(out.kind);
  stats_.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void Chain::evaluate_naive(std::size_t, const Polymer& old, StepOutcome& out) {
  generate_compatible(g_old_, lattice_, old, cfg_.law, rng_);
  const auto& occ = state_.occupancy();
  out.w_new = weight(g_new_, occ, out.candidate, cfg_.feeler);
  out.w_old = weight(g_old_, occ, old, cfg_.feeler);
  out.w0_new = weight_w0(g_new_, out.candidate);
  out.w0_old = weight_w0(g_old_, old);
  out.assigned_old = out.full_old = g_old_.size();
}

bool Chain::evaluate_entangled(std::size_t, const Polymer& old, StepOutcome& out) {
  const auto& occ = state_.occupancy();
  lazy_new_.rebind(rng_);
  lazy_old_.rebind(rng_);
  auto res = entangled_grow(lazy_new_, occ, static_cast<int>(old.size()), cfg_.feeler, rng_);
  if (res.success) {
    out.candidate = std::move(res.polymer);
    entangled_compatible(lazy_old_, old);
    const auto wn = complete_for_weights(lazy_new_, occ, out.candidate, cfg_.feeler);
    const auto wo = complete_for_weights(lazy_old_, occ, old, cfg_.feeler);
    out.w_new = wn.w;
    out.w_old = wo.w;
    out.w0_new = wn.w0;
    out.w0_old = wo.w0;
  }
  out.assigned_new = lazy_new_.assigned_count();
  out.assigned_old = res.success ? lazy_old_.assigned_count() : 0;
  if (cfg_.audit_laziness) {
    lazy_new_.rebind(side_rng_);
    out.full_new = lazy_new_.materialize().size();
    if (res.success) {
      lazy_old_.rebind(side_rng_);
      out.full_old = lazy_old_.materialize().size();
    }
  }
  return res.success;
}

void Chain::decide(std::size_t i, const Polymer& old, StepOutcome& out) {
  const auto& occ = state_.occupancy();
  std::int64_t c_old = 0;
  std::int64_t c_new = 0;
  double log_q = 0.0;
  if (cfg_.energy.kind == EnergyModel::Kind::Contact) {
    c_old = contacts_with(lattice_, occ, old);
    c_new = contacts_with(lattice_, occ, out.candidate);
    log_q = cfg_.energy.log_q_ratio(c_old, c_new);
  }
  const bool extended = !cfg_.law.is_fixed();
  const double wn = out.w_new.value();
  const double wo = out.w_old.value();
  if (std::isfinite(wn) && std::isfinite(wo)) {
    out.p_accept = acceptance_probability(std::exp(log_q), wn, wo, extended, static_cast<double>(out.w0_new),
                                          static_cast<double>(out.w0_old));
  } else {
    out.p_accept = acceptance_probability_log(log_q, out.w_new.log(), out.w_old.log(), extended,
                                              std::log(static_cast<double>(out.w0_new)),
                                              std::log(static_cast<double>(out.w0_old)));
  }
  const double u = uniform01(rng_);
  if (u < out.p_accept) {
    out.kind = StepKind::Accepted;
    state_.occupy(i, out.candidate);
    contacts_ += c_new - c_old;
  } else {
    out.kind = StepKind::Rejected;
    state_.occupy(i, old);
  }
}

RunResult run(const ChainConfig& cfg, std::optional<SystemState> initial, const RunObserver& observer) {
  Chain chain(cfg, initial ? std::move(*initial) : boxed_for(cfg));
  if (observer.on_snapshot) observer.on_snapshot(0, chain.state());
  bool stats_written = false;
  for (std::uint64_t t = 1; t <= cfg.steps; ++t) {
    const auto outcome = chain.step();
    if (observer.on_step) observer.on_step(outcome, chain.state());
    stats_written = false;
    if (cfg.snapshot_every != 0 && t % cfg.snapshot_every == 0 && t != cfg.steps && observer.on_snapshot)
      observer.on_snapshot(t, chain.state());
    if (cfg.stats_every != 0 && t % cfg.stats_every == 0 && observer.on_stats) {
      observer.on_stats(t, chain.stats());
      stats_written = true;
    }
  }
  if (cfg.steps > 0 && observer.on_snapshot) observer.on_snapshot(cfg.steps, chain.state());
  if (!stats_written && observer.on_stats) observer.on_stats(cfg.steps, chain.stats());
  return {chain.state(), chain.stats()};
}

}  // namespace rgstar
