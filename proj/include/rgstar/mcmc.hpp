#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rgstar/entangled.hpp"
#include "rgstar/growth.hpp"
#include "rgstar/lattice.hpp"
#include "rgstar/random.hpp"
#include "rgstar/system_state.hpp"
#include "rgstar/underlying_graph.hpp"

namespace rgstar {

enum class Implementation { Naive, Entangled };

/// Boltzmann weight q(S) = exp(-E(S)). Uniform: E = 0. Contact: E = offset - epsilon * (number of
/// unordered nearest-neighbor vertex pairs held by two distinct polymers).
struct EnergyModel {
  enum class Kind { Uniform, Contact };
  Kind kind = Kind::Uniform;
  double epsilon = 0.0;
  double offset = 0.0;

  static EnergyModel uniform() { return {}; }
  static EnergyModel contact(double epsilon, double offset = 0.0) { return {Kind::Contact, epsilon, offset}; }

  double energy(const SystemState& state) const;
  /// log q(S_n)/q(S_o) for a replacement that changes the contact count from c_old to c_new.
  double log_q_ratio(std::int64_t c_old, std::int64_t c_new) const;
};

/// Inter-polymer contact count of the whole state.
std::int64_t contact_count(const SystemState& state);
/// Contacts between polymer c and the occupied vertices of occ; c's own vertices must be absent from occ.
std::int64_t contacts_with(const Lattice& lattice, const Occupancy& occ, std::span<const VertexId> c);

struct ChainConfig {
  LatticeConfig lattice;
  std::vector<int> lengths;  // one entry per polymer
  DegreeLaw law = DegreeLaw::fixed(2, 4);
  int feeler = 1;
  EnergyModel energy;
  std::uint64_t steps = 0;
  std::uint64_t seed = 1;
  std::uint64_t snapshot_every = 0;  // 0: initial and final snapshots only
  std::uint64_t stats_every = 0;     // 0: final row only
  Implementation implementation = Implementation::Entangled;
  /// Entangled only: completes each lazy graph from a side stream after the step
  /// and records its full size next to the number of lazily assigned vertices.
  bool audit_laziness = false;

  static ChainConfig uniform(LatticeConfig lattice, int n, int length, DegreeLaw law, int feeler);
  std::size_t polymer_count() const { return lengths.size(); }
  /// Throws std::invalid_argument (or InfeasibleError when the polymers do not fit).
  void validate() const;
};

enum class StepKind { GrowthFailed, Rejected, Accepted };
const char* to_string(StepKind kind);

struct StepOutcome {
  StepKind kind = StepKind::GrowthFailed;
  std::size_t removed = 0;
  Polymer candidate;  // empty on growth failure
  Weight w_new;
  Weight w_old;
  std::uint64_t w0_new = 0;
  std::uint64_t w0_old = 0;
  double p_accept = 0.0;
  // laziness diagnostics: vertices given out-edges, and the size of the completed graph
  std::size_t assigned_new = 0;
  std::size_t assigned_old = 0;
  std::size_t full_new = 0;
  std::size_t full_old = 0;
};

struct ChainStats {
  std::uint64_t steps = 0;
  std::uint64_t successes = 0;
  std::uint64_t failures = 0;
  std::uint64_t acceptances = 0;
  std::uint64_t rejections = 0;
  double seconds = 0.0;

  double construction_rate() const { return steps ? static_cast<double>(successes) / static_cast<double>(steps) : 0.0; }
  double acceptance_rate() const {
    return successes ? static_cast<double>(acceptances) / static_cast<double>(successes) : 0.0;
  }
  double seconds_per_step() const { return steps ? seconds / static_cast<double>(steps) : 0.0; }
  void record(StepKind kind);
};

/// min(1, q_ratio * W_n / W_o), times W0_o / W0_n in extended mode. The extended
/// factor is exactly 1 whenever W0_n == W0_o, so a degenerate law reproduces fixed mode bit for bit.
double acceptance_probability(double q_ratio, double w_new, double w_old, bool extended = false, double w0_new = 1.0,
                              double w0_old = 1.0);
/// Same in log space, for weights beyond double range.
double acceptance_probability_log(double log_q_ratio, double log_w_new, double log_w_old, bool extended = false,
                                  double log_w0_new = 0.0, double log_w0_old = 0.0);

/// One RG* Markov chain.
///
/// Randomness is consumed from a single stream in this order per step: removed
/// polymer index; G_n root and out-edges interleaved with growth draws (naive:
/// the whole G_n before growth); on success the G_o orientation coin and edges;
/// lazily drawn edges while W_n and then W_o are computed; the acceptance coin.
class Chain {
 public:
  explicit Chain(ChainConfig cfg);
  Chain(ChainConfig cfg, SystemState initial);
  Chain(const Chain&) = delete;
  Chain& operator=(const Chain&) = delete;

  StepOutcome step();

  const SystemState& state() const { return state_; }
  const ChainConfig& config() const { return cfg_; }
  const ChainStats& stats() const { return stats_; }
  const Lattice& lattice() const { return lattice_; }
  /// Current energy, maintained incrementally from contact deltas.
  double energy() const;

 private:
  void evaluate_naive(std::size_t i, const Polymer& old, StepOutcome& out);
  bool evaluate_entangled(std::size_t i, const Polymer& old, StepOutcome& out);
  void decide(std::size_t i, const Polymer& old, StepOutcome& out);

  ChainConfig cfg_;
  Lattice lattice_;
  SystemState state_;
  Rng rng_;
  Rng side_rng_;
  ChainStats stats_;
  std::int64_t contacts_ = 0;
  UnderlyingGraph g_new_;
  UnderlyingGraph g_old_;
  LazyGraph<Rng> lazy_new_;
  LazyGraph<Rng> lazy_old_;
};

struct RunObserver {
  std::function<void(std::uint64_t step, const SystemState&)> on_snapshot;
  std::function<void(std::uint64_t step, const ChainStats&)> on_stats;
  std::function<void(const StepOutcome&, const SystemState&)> on_step;
};

struct RunResult {
  SystemState final_state;
  ChainStats stats;
};

/// Runs cfg.steps steps from `initial` (default: the boxed initial state).
/// Snapshots at step 0, every snapshot_every steps and at the end; stats rows every
/// stats_every steps and at the end.
RunResult run(const ChainConfig& cfg, std::optional<SystemState> initial = std::nullopt,
              const RunObserver& observer = {});

}  // namespace rgstar
