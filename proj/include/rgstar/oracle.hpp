#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "rgstar/growth.hpp"
#include "rgstar/lattice.hpp"
#include "rgstar/mcmc.hpp"
#include "rgstar/system_state.hpp"
#include "rgstar/underlying_graph.hpp"

namespace rgstar {

/// Largest torus the brute-force routines accept.
inline constexpr std::uint64_t kMaxOracleVertices = 36;

class OracleRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The k = Q underlying graph rooted at r: every vertex has all lattice neighbors as out-edges.
class FullGraph {
 public:
  FullGraph(const Lattice& lattice, VertexId root) : lattice_(&lattice), root_(root) {}
  VertexId root() const { return root_; }
  std::span<const VertexId> out_edges(VertexId v) const { return lattice_->neighbors(v); }
  int out_degree(VertexId) const { return lattice_->coordination(); }

 private:
  const Lattice* lattice_;
  VertexId root_;
};

/// Every self-avoiding path of `length` vertices on the torus, in canonical
/// orientation, sorted lexicographically, with vertex bitmasks.
struct PolymerCatalog {
  LatticeConfig lattice;
  int length = 0;
  std::vector<Polymer> polymers;
  std::vector<std::uint64_t> masks;

  std::size_t size() const { return polymers.size(); }
  /// Catalog index of a polymer in either orientation, or nullopt.
  std::optional<std::uint32_t> find(std::span<const VertexId> c) const;
};

PolymerCatalog polymer_catalog(const LatticeConfig& cfg, int length);

/// Calls f(ids) for every set of n pairwise-disjoint catalog polymers, ids strictly increasing.
template <class F>
void for_each_state(const PolymerCatalog& catalog, int n, F&& f) {
  std::vector<std::uint32_t> ids(static_cast<std::size_t>(n));
  const auto m = static_cast<std::uint32_t>(catalog.size());
  auto rec = [&](auto&& self, int depth, std::uint32_t from, std::uint64_t used) -> void {
    if (depth == n) {
      f(std::span<const std::uint32_t>(ids));
      return;
    }
    for (std::uint32_t id = from; id < m; ++id) {
      if (catalog.masks[id] & used) continue;
      ids[static_cast<std::size_t>(depth)] = id;
      self(self, depth + 1, id + 1, used | catalog.masks[id]);
    }
  };
  rec(rec, 0, 0, 0);
}

/// Every valid state of n polymers of one length, once per canonical orbit.
class StateSpace {
 public:
  StateSpace(PolymerCatalog catalog, int n);

  const PolymerCatalog& catalog() const { return catalog_; }
  const LatticeConfig& lattice() const { return catalog_.lattice; }
  int polymer_count() const { return n_; }
  int length() const { return catalog_.length; }
  std::size_t size() const { return states_.size() / static_cast<std::size_t>(n_); }
  /// Catalog ids of state s, increasing.
  std::span<const std::uint32_t> ids(std::size_t s) const {
    return {states_.data() + s * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }
  SystemState state(std::size_t s) const;
  CanonicalKey key(std::size_t s) const;
  std::optional<std::size_t> find(const CanonicalKey& key) const;
  std::optional<std::size_t> find(const SystemState& state) const { return find(canonical_key(state)); }
  /// Index of the state with these catalog ids (any order).
  std::optional<std::size_t> find_ids(std::vector<std::uint32_t> ids) const;

 private:
  PolymerCatalog catalog_;
  int n_;
  std::vector<std::uint32_t> states_;
  std::unordered_map<CanonicalKey, std::size_t, CanonicalKeyHash> index_;

  friend StateSpace enumerate_states(const LatticeConfig&, int, int, std::size_t);
};

/// Refuses (OracleRefused) when a^d > 36, N*L > a^d, or more than `max_states` states exist.
StateSpace enumerate_states(const LatticeConfig& cfg, int n, int length, std::size_t max_states = 2'000'000);

struct EnumeratedGraph {
  UnderlyingGraph graph;
  Rational probability;
};

/// Exhaustive branching over the generation procedure: every root, every out-degree
/// in the law's support and every out-edge subset, with the waiting set processed FIFO.
/// f(graph, probability) is called once per distinct graph; the probability is the
/// product of the branch probabilities taken. `compatible_with`, when non-empty,
/// enumerates graphs compatible with that polymer instead (both orientations).
/// Refuses when more than `max_graphs` graphs would be produced.
void for_each_underlying_graph(const Lattice& lattice, const Occupancy& occ, const DegreeLaw& law,
                               const std::function<void(const UnderlyingGraph&, const Rational&)>& f,
                               std::span<const VertexId> compatible_with = {}, std::size_t max_graphs = 5'000'000);

std::vector<EnumeratedGraph> enumerate_underlying_graphs(const Lattice& lattice, const Occupancy& occ,
                                                         const DegreeLaw& law, std::size_t max_graphs = 200'000);
std::vector<EnumeratedGraph> enumerate_compatible_graphs(const Lattice& lattice, std::span<const VertexId> c,
                                                         const DegreeLaw& law, std::size_t max_graphs = 200'000);

/// Every self-avoiding, occupancy-avoiding path of `length` vertices following the
/// graph's out-edges from its root, each exactly once, oriented from the root.
template <class Graph>
std::vector<Polymer> enumerate_polymers(Graph& graph, const Occupancy& occ, int length) {
  std::vector<Polymer> out;
  if (length < 1 || occ.occupied(graph.root())) return out;
  Polymer path{graph.root()};
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(path.size()) == length) {
      out.push_back(path);
      return;
    }
    for (VertexId u : graph.out_edges(path.back())) {
      if (occ.occupied(u) || std::find(path.begin(), path.end(), u) != path.end()) continue;
      path.push_back(u);
      self(self);
      path.pop_back();
    }
  };
  rec(rec);
  return out;
}

/// Sparse stochastic matrix; rows[s] maps target state index to probability, diagonal included.
template <class Scalar>
struct Kernel {
  std::vector<std::map<std::size_t, Scalar>> rows;
  /// log q(S) per state, up to an additive constant.
  std::vector<double> log_q;
};

using ExactKernel = Kernel<Rational>;
using FloatKernel = Kernel<long double>;

/// Exact transition matrix of the chain with k = Q: for S -> S' replacing C_o by C_n,
/// (1/N) * sum over C_n's two extremities r of (1/gamma)(1/W(C_n|G_r)) * sum over
/// C_o's two extremities of (1/2) * acceptance. Diagonal by row normalization.
/// Requires a uniform energy (rational entries).
ExactKernel exact_kernel_kQ(const StateSpace& space, int feeler);
/// Same kernel in long double for any energy model.
FloatKernel float_kernel_kQ(const StateSpace& space, int feeler, const EnergyModel& energy);

struct BalanceReport {
  std::size_t pairs = 0;              // ordered pairs with a positive off-diagonal entry
  std::size_t one_move_pairs = 0;     // ordered pairs differing by exactly one polymer
  std::size_t zero_one_move = 0;      // of those, entries that are not strictly positive
  double max_violation = 0.0;         // max |q(S)P(S,S') - q(S')P(S',S)|, normalized so max q = 1
  double max_row_error = 0.0;         // max |sum_j P(S,j) - 1|
  double min_diagonal = 1.0;
  bool exact = false;                 // violations evaluated in rational arithmetic
};

BalanceReport check_detailed_balance(const StateSpace& space, const ExactKernel& kernel);
BalanceReport check_detailed_balance(const StateSpace& space, const FloatKernel& kernel);

/// Left fixed point of a kernel by power iteration on (P + I)/2.
std::vector<double> stationary_vector(const FloatKernel& kernel, double tolerance = 1e-15,
                                      std::size_t max_iterations = 1'000'000);
FloatKernel to_float(const ExactKernel& kernel);

struct ReachabilityReport {
  bool irreducible = false;
  std::size_t components = 0;
  std::uint64_t states = 0;
  /// Two mutually unreachable states when reducible.
  std::optional<std::pair<std::vector<Polymer>, std::vector<Polymer>>> witness;
};

/// Connected components of the one-polymer-replacement move graph over all states of n
/// polymers of `length`. States sharing n-1 polymers are joined through those shared
/// (n-1)-sets, so the state list is streamed rather than stored.
ReachabilityReport check_irreducibility(const LatticeConfig& cfg, int n, int length);

/// Straight polymers packed along the last axis, floor(a/L) per line, lines taken in
/// index order. Throws InfeasibleError when n exceeds a^(d-1) * floor(a/L).
SystemState straight_box_state(const LatticeConfig& cfg, int n, int length);

/// Whether the move graph joins `target` to every state (stream check; same size guard).
bool reachable_from_all(const LatticeConfig& cfg, int n, int length, const SystemState& target);

struct FrozenReport {
  bool frozen = true;
  std::size_t polymers = 0;
  std::size_t replacements = 0;  // total replacement paths examined
  std::optional<std::size_t> moving_polymer;
};

/// For each polymer, enumerates every self-avoiding path of the same length on the vertices
/// left free by the other polymers and reports whether any occupies a different vertex set.
FrozenReport check_locally_frozen(const SystemState& state);

/// The a = 9, L = 5 configuration with a single free vertex enclosed by four bent polymers;
/// the rest of the torus is tiled by length-5 paths found by backtracking.
SystemState trapped_configuration();

/// Empirical state counts keyed by state index. Unknown states are a hard error.
class StateHistogram {
 public:
  explicit StateHistogram(const StateSpace& space) : space_(&space), counts_(space.size(), 0) {}
  void add(const SystemState& state);
  void add_index(std::size_t s) { ++counts_.at(s); ++total_; }
  std::span<const std::uint64_t> counts() const { return counts_; }
  std::uint64_t total() const { return total_; }

 private:
  const StateSpace* space_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

struct DistanceReport {
  double tv = 0.0;
  double chi2 = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

/// TV = (1/2) sum |p_hat - q| and Pearson chi-square with |states| - 1 degrees of freedom.
DistanceReport distribution_distance(std::span<const std::uint64_t> counts, std::span<const double> target);
DistanceReport distance_to_uniform(std::span<const std::uint64_t> counts);
/// Two-sample chi-square homogeneity test; bins empty in both samples are dropped.
DistanceReport two_sample_chi_square(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
/// Upper tail of the chi-square distribution.
double chi_square_p_value(double statistic, double dof);

}  // namespace rgstar
