#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rgstar/growth.hpp"
#include "rgstar/lattice.hpp"
#include "rgstar/random.hpp"
#include "rgstar/system_state.hpp"
#include "rgstar/underlying_graph.hpp"

namespace rgstar {

/// Underlying graph whose out-edges are drawn on first access.
///
/// Holds the assigned part V (with its edges) and the waiting set T of
/// discovered but unassigned vertices. Every assignment uses the same per-vertex
/// law as generate(), so completing the graph in any order gives the same law as
/// eager generation.
template <class URBG>
class LazyGraph {
 public:
  LazyGraph(const Lattice& lattice, const DegreeLaw& law, URBG& g)
      : lattice_(&lattice),
        law_(&law),
        g_(&g),
        graph_(lattice),
        discovered_(lattice.vertex_count(), 0),
        forced_(lattice.vertex_count(), kNone),
        buf_(static_cast<std::size_t>(lattice.coordination())) {}

  /// Starts a fresh graph with T = {root}.
  void start(VertexId root) {
    clear();
    graph_.reset(root);
    discover(root);
  }

  /// Starts a graph compatible with c: orientation drawn with probability 1/2,
  /// then the out-edges of the first L-1 oriented vertices are assigned eagerly
  /// with the polymer edge forced. Everything else stays pending.
  void start_compatible(std::span<const VertexId> c) {
    if (c.size() < 2) throw std::invalid_argument("compatible graphs need a polymer of length >= 2");
    const bool reversed = uniform_below(*g_, 2) == 1;
    Polymer oriented(c.begin(), c.end());
    if (reversed) std::reverse(oriented.begin(), oriented.end());
    start(oriented.front());
    for (std::size_t i = 0; i + 1 < oriented.size(); ++i) {
      forced_[oriented[i]] = oriented[i + 1];
      touched_forced_.push_back(oriented[i]);
    }
    for (std::size_t i = 0; i + 1 < oriented.size(); ++i) assign(oriented[i]);
  }

  VertexId root() const { return graph_.root(); }
  /// Later assignments draw from g.
  void rebind(URBG& g) { g_ = &g; }

  std::span<const VertexId> out_edges(VertexId v) {
    if (!graph_.assigned(v)) assign(v);
    return graph_.out_edges(v);
  }
  int out_degree(VertexId v) {
    if (!graph_.assigned(v)) assign(v);
    return graph_.out_degree(v);
  }

  /// Number of vertices given out-edges so far.
  std::size_t assigned_count() const { return graph_.size(); }
  std::size_t pending_count() const { return pending_.size() - pending_head_; }
  const UnderlyingGraph& partial() const { return graph_; }

  /// Assigns every pending vertex until T is empty; the result is a complete underlying graph.
  const UnderlyingGraph& materialize() {
    while (pending_head_ < pending_.size()) {
      const VertexId v = pending_[pending_head_++];
      if (!graph_.assigned(v)) assign(v);
    }
    return graph_;
  }

 private:
  static constexpr VertexId kNone = static_cast<VertexId>(-1);

  void clear() {
    for (VertexId v : touched_) discovered_[v] = 0;
    touched_.clear();
    for (VertexId v : touched_forced_) forced_[v] = kNone;
    touched_forced_.clear();
    pending_.clear();
    pending_head_ = 0;
  }

  void discover(VertexId v) {
    if (discovered_[v]) return;
    discovered_[v] = 1;
    touched_.push_back(v);
    pending_.push_back(v);
  }

  void assign(VertexId v) {
    if (!discovered_[v]) throw std::logic_error("lazy graph: out-edges requested for an undiscovered vertex");
    const VertexId* forced = forced_[v] != kNone ? &forced_[v] : nullptr;
    const std::size_t kappa = draw_out_edges(*lattice_, v, *law_, *g_, buf_, forced);
    graph_.assign(v, std::span<const VertexId>(buf_.data(), kappa));
    for (std::size_t t = 0; t < kappa; ++t) discover(buf_[t]);
  }

  const Lattice* lattice_;
  const DegreeLaw* law_;
  URBG* g_;
  UnderlyingGraph graph_;
  std::vector<char> discovered_;
  std::vector<VertexId> forced_;
  std::vector<VertexId> touched_;
  std::vector<VertexId> touched_forced_;
  std::vector<VertexId> pending_;
  std::size_t pending_head_ = 0;
  std::vector<VertexId> buf_;
};

/// Picks a uniform free root, then grows on a lazily generated graph.
/// `lazy` is restarted and holds the visited structure afterwards.
template <class URBG>
GrowthResult entangled_grow(LazyGraph<URBG>& lazy, const Occupancy& occ, int length, int feeler, URBG& g,
                            std::vector<GrowthEvent>* trace = nullptr) {
  lazy.start(draw_free_vertex(occ, g));
  return grow(lazy, occ, length, feeler, g, trace);
}

/// Orientation and forced polymer edges for the compatible graph of c; the rest is deferred.
template <class URBG>
void entangled_compatible(LazyGraph<URBG>& lazy, std::span<const VertexId> c) {
  lazy.start_compatible(c);
}

struct LazyWeights {
  Weight w;
  std::uint64_t w0 = 0;
};

/// W(C|G) and W0(C|G), drawing out-edges of any vertex the admissibility search reaches for the first time.
template <class URBG>
LazyWeights complete_for_weights(LazyGraph<URBG>& lazy, const Occupancy& occ, std::span<const VertexId> c,
                                 int feeler) {
  LazyWeights out;
  out.w = weight(lazy, occ, c, feeler);
  out.w0 = weight_w0(lazy, c);
  return out;
}

}  // namespace rgstar
