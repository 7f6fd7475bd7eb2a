#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <deque>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgstar/lattice.hpp"
#include "rgstar/random.hpp"
#include "rgstar/system_state.hpp"

namespace rgstar {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Out-degree law of underlying-graph vertices.
///
/// Fixed mode assigns every vertex exactly k out-edges. Extended mode draws the
/// out-degree kappa in [1, Q] with probability p[kappa] (p[0] is always zero).
class DegreeLaw {
 public:
  static DegreeLaw fixed(int k, int q);
  /// `p` lists p_1..p_Q. Must be non-negative and sum to 1 within 1e-12.
  static DegreeLaw extended(std::vector<double> p);

  bool is_fixed() const { return fixed_k_ > 0; }
  int fixed_k() const { return fixed_k_; }
  int coordination() const { return q_; }
  /// Probability of out-degree kappa; zero outside [1, Q].
  double p(int kappa) const;
  /// Exact rational value of p(kappa) (the binary value of the stored double).
  Rational p_exact(int kappa) const;
  double mean_degree() const;
  /// True for a fixed law or an extended law whose mass sits on a single degree.
  bool degenerate() const;

  template <class URBG>
  int draw(URBG& g) const {
    if (is_fixed()) return fixed_k_;
    const double u = uniform01(g);
    double acc = 0.0;
    int last = 0;
    for (int kappa = 1; kappa <= q_; ++kappa) {
      if (p_[kappa] <= 0.0) continue;
      last = kappa;
      acc += p_[kappa];
      if (u < acc) return kappa;
    }
    return last;
  }

 private:
  int q_ = 0;
  int fixed_k_ = 0;
  std::vector<double> p_;  // index kappa = 0..Q
};

/// Rooted directed subgraph of the lattice with per-vertex out-edge lists.
///
/// Backed by dense arrays over all lattice vertices; reset() is proportional to
/// the number of assigned vertices, so one instance can be reused across steps.
class UnderlyingGraph {
 public:
  UnderlyingGraph() = default;
  explicit UnderlyingGraph(const Lattice& lattice);

  void reset(VertexId root);
  /// Records the out-edge list of v. Each vertex may be assigned once.
  void assign(VertexId v, std::span<const VertexId> targets);

  VertexId root() const { return root_; }
  bool assigned(VertexId v) const { return degree_[v] >= 0; }
  int out_degree(VertexId v) const { return degree_[v]; }
  std::span<const VertexId> out_edges(VertexId v) const {
    return {edges_.data() + static_cast<std::size_t>(v) * q_, static_cast<std::size_t>(degree_[v] < 0 ? 0 : degree_[v])};
  }
  bool has_edge(VertexId from, VertexId to) const;
  /// |G|: number of vertices with out-edges.
  std::size_t size() const { return order_.size(); }
  /// Assigned vertices in assignment order.
  const std::vector<VertexId>& vertices() const { return order_; }
  /// counts[i] = number of vertices with out-degree i, i = 0..Q.
  std::vector<std::size_t> degree_counts() const;
  int coordination() const { return q_; }
  std::uint32_t lattice_size() const { return static_cast<std::uint32_t>(degree_.size()); }

  /// Sorted (root, v, sorted out-edges...) form for equality and hashing in tests.
  std::vector<VertexId> canonical_form() const;

  /// Every assigned target is itself assigned and every vertex is reachable from the root.
  bool is_complete() const;

 private:
  int q_ = 0;
  VertexId root_ = 0;
  std::vector<int> degree_;
  std::vector<VertexId> edges_;
  std::vector<VertexId> order_;
};

enum class WaitingOrder { Fifo, Lifo };

/// Draws the out-edge list of one vertex: kappa from the law, then a uniform
/// kappa-subset of the Q lattice neighbors. When `forced` is given, that edge is
/// always present and the other kappa-1 are drawn from the remaining Q-1.
template <class URBG>
std::size_t draw_out_edges(const Lattice& lattice, VertexId v, const DegreeLaw& law, URBG& g,
                           std::span<VertexId> out, const VertexId* forced = nullptr) {
  const auto nb = lattice.neighbors(v);
  const int kappa = law.draw(g);
  std::copy(nb.begin(), nb.end(), out.begin());
  std::span<VertexId> pool = out.first(nb.size());
  if (forced != nullptr) {
    auto it = std::find(pool.begin(), pool.end(), *forced);
    if (it == pool.end()) throw std::logic_error("forced edge does not join lattice neighbors");
    std::swap(*it, pool.front());
    partial_shuffle(pool.subspan(1), static_cast<std::size_t>(kappa - 1), g);
  } else {
    partial_shuffle(pool, static_cast<std::size_t>(kappa), g);
  }
  return static_cast<std::size_t>(kappa);
}

/// Uniform free vertex by rejection; throws InfeasibleError when none is free.
template <class URBG>
VertexId draw_free_vertex(const Occupancy& occ, URBG& g) {
  if (occ.free_count() == 0) throw InfeasibleError("no free vertex for the underlying-graph root");
  for (;;) {
    const VertexId v = uniform_below(g, occ.vertex_count());
    if (occ.free(v)) return v;
  }
}

namespace detail {

template <class URBG>
void expand_from(UnderlyingGraph& graph, const Lattice& lattice, const DegreeLaw& law, URBG& g,
                 std::deque<VertexId>& waiting, std::vector<char>& queued, WaitingOrder order,
                 const std::vector<VertexId>* forced_next) {
  std::vector<VertexId> buf(static_cast<std::size_t>(lattice.coordination()));
  while (!waiting.empty()) {
    VertexId v;
    if (order == WaitingOrder::Fifo) {
      v = waiting.front();
      waiting.pop_front();
    } else {
      v = waiting.back();
      waiting.pop_back();
    }
    const VertexId* forced = nullptr;
    if (forced_next != nullptr && (*forced_next)[v] != static_cast<VertexId>(-1)) forced = &(*forced_next)[v];
    const std::size_t kappa = draw_out_edges(lattice, v, law, g, buf, forced);
    graph.assign(v, std::span<const VertexId>(buf.data(), kappa));
    for (std::size_t t = 0; t < kappa; ++t) {
      const VertexId u = buf[t];
      if (!queued[u]) {
        queued[u] = 1;
        waiting.push_back(u);
      }
    }
  }
}

}  // namespace detail

/// Generates an underlying graph: uniform free root, then out-edges assigned to
/// every discovered vertex until the waiting set is empty. Occupancy matters only
/// for the root.
template <class URBG>
void generate(UnderlyingGraph& out, const Lattice& lattice, const Occupancy& occ, const DegreeLaw& law, URBG& g,
              WaitingOrder order = WaitingOrder::Fifo) {
  const VertexId root = draw_free_vertex(occ, g);
  out.reset(root);
  std::vector<char> queued(lattice.vertex_count(), 0);
  std::deque<VertexId> waiting{root};
  queued[root] = 1;
  detail::expand_from(out, lattice, law, g, waiting, queued, order, nullptr);
}

/// Generates an underlying graph compatible with polymer c: the root is one of
/// c's extremities with probability 1/2 each, and the polymer's oriented edges
/// are forced.
template <class URBG>
void generate_compatible(UnderlyingGraph& out, const Lattice& lattice, std::span<const VertexId> c,
                         const DegreeLaw& law, URBG& g, WaitingOrder order = WaitingOrder::Fifo) {
  if (c.size() < 2) throw std::invalid_argument("compatible graphs need a polymer of length >= 2");
  const bool reversed = uniform_below(g, 2) == 1;
  std::vector<VertexId> forced_next(lattice.vertex_count(), static_cast<VertexId>(-1));
  const std::size_t len = c.size();
  for (std::size_t i = 0; i + 1 < len; ++i) {
    const VertexId from = reversed ? c[len - 1 - i] : c[i];
    const VertexId to = reversed ? c[len - 2 - i] : c[i + 1];
    forced_next[from] = to;
  }
  const VertexId root = reversed ? c.back() : c.front();
  out.reset(root);
  std::vector<char> queued(lattice.vertex_count(), 0);
  std::deque<VertexId> waiting{root};
  queued[root] = 1;
  detail::expand_from(out, lattice, law, g, waiting, queued, order, &forced_next);
}

/// The root-induced orientation of c when G's root is one of c's extremities.
/// Returns an empty polymer otherwise.
Polymer orient_from_root(VertexId root, std::span<const VertexId> c);

template <class Graph>
bool is_compatible(Graph& graph, std::span<const VertexId> c) {
  const Polymer oriented = orient_from_root(graph.root(), c);
  if (oriented.empty()) return false;
  for (std::size_t i = 0; i + 1 < oriented.size(); ++i) {
    const auto edges = graph.out_edges(oriented[i]);
    if (std::find(edges.begin(), edges.end(), oriented[i + 1]) == edges.end()) return false;
  }
  return true;
}

/// alpha = 1/C(Q,k), beta = 1/C(Q-1,k-1), gamma = free vertices with N-1 polymers present,
/// eta = gamma/2 (beta/alpha)^(L-1); alpha_i and beta_i are the extended-mode tables.
struct CombinatorialConstants {
  int q = 0;
  int k = 0;
  int length = 0;
  std::uint64_t gamma = 0;
  Rational alpha;
  Rational beta;
  Rational eta;
  std::vector<Rational> alpha_i;  // index i = 0..Q, alpha_0 unused
  std::vector<Rational> beta_i;

  /// k = 0 builds the extended tables only.
  static CombinatorialConstants make(int q, int k, int length, std::uint64_t gamma);
};

std::uint64_t binomial(int n, int r);

/// log P_u(G). Fixed law: |G| log alpha - log gamma; extended: sum over vertices of log(p_d alpha_d) - log gamma.
/// Returns -infinity when some out-degree lies outside the law's support.
double log_prob_u(const UnderlyingGraph& graph, const DegreeLaw& law, std::uint64_t gamma);
Rational prob_u_exact(const UnderlyingGraph& graph, const DegreeLaw& law, std::uint64_t gamma);

/// Product of out-degrees along the oriented polymer, excluding its far extremity.
template <class Graph>
std::uint64_t weight_w0(Graph& graph, std::span<const VertexId> c) {
  const Polymer oriented = orient_from_root(graph.root(), c);
  if (oriented.empty()) throw std::invalid_argument("weight_w0: polymer not compatible with graph root");
  std::uint64_t w = 1;
  for (std::size_t i = 0; i + 1 < oriented.size(); ++i) w *= static_cast<std::uint64_t>(graph.out_degree(oriented[i]));
  return w;
}

/// log P_c(G|C); -infinity when incompatible.
/// Fixed law: (|G|-L+1) log alpha + (L-1) log beta - log 2.
/// Extended: log(gamma Q^(L-1)/2) + log P_u(G) - log W0(C|G).
double log_prob_c(const UnderlyingGraph& graph, std::span<const VertexId> c, const DegreeLaw& law,
                  std::uint64_t gamma);
/// Exact P_c(G|C) from the closed form (fixed law) or the rewritten extended form.
Rational prob_c_exact(const UnderlyingGraph& graph, std::span<const VertexId> c, const DegreeLaw& law,
                      std::uint64_t gamma);
/// Exact P_c(G|C) as the direct product over vertices: p_d beta_d on the polymer
/// (minus its far end), p_d alpha_d elsewhere, times 1/2.
Rational prob_c_direct(const UnderlyingGraph& graph, std::span<const VertexId> c, const DegreeLaw& law);

/// One line per assigned vertex, `v: n1 n2 ...`, root marked with `*`.
void write_graph_dump(std::ostream& out, const UnderlyingGraph& graph);

}  // namespace rgstar
