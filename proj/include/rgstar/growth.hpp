#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include "rgstar/lattice.hpp"
#include "rgstar/random.hpp"
#include "rgstar/system_state.hpp"
#include "rgstar/underlying_graph.hpp"

// Growth routines are templates over the graph type. A graph provides
// `root()` and `out_edges(v)`; the lazy graph of the entangled implementation
// draws out-edges inside `out_edges` on first access, so graphs are taken by
// non-const reference.

namespace rgstar {

enum class GrowthEventKind {
  Extend,   // tip moved to a free vertex
  Blocked,  // drawn out-neighbor was occupied (other polymer or the partial polymer)
  Recoil,   // tip retracted by one vertex
  Fail,
  Success,
};

struct GrowthEvent {
  GrowthEventKind kind;
  int length;       // partial polymer length after the event
  VertexId vertex;  // vertex drawn, reached or left
  int l_max;
  int delta;        // fixed-part boundary max(1, l_max - feeler)
};

struct GrowthResult {
  bool success = false;
  Polymer polymer;  // oriented from the root; empty on failure
  std::size_t steps = 0;
  std::size_t draws = 0;
  std::size_t recoils = 0;
};

const char* to_string(GrowthEventKind kind);
/// One event per line: `extend 3 17 lmax=3 delta=1`.
void write_growth_trace(std::ostream& out, std::span<const GrowthEvent> trace);

namespace detail {

inline bool contains(std::span<const VertexId> path, VertexId v) {
  return std::find(path.begin(), path.end(), v) != path.end();
}

/// Depth-first search for `remaining` more vertices beyond path.back(), following
/// out-edges and avoiding occupied vertices and the path itself.
template <class Graph>
bool can_extend(Graph& graph, const Occupancy& occ, std::vector<VertexId>& path, int remaining) {
  if (remaining == 0) return true;
  // spans stay valid: lazy assignment writes other vertices' slots only
  for (VertexId u : graph.out_edges(path.back())) {
    if (occ.occupied(u) || contains(path, u)) continue;
    path.push_back(u);
    const bool ok = can_extend(graph, occ, path, remaining - 1);
    path.pop_back();
    if (ok) return true;
  }
  return false;
}

}  // namespace detail

/// Runs the recoil-growth procedure with feeler length `feeler` on `graph`.
///
/// Out-neighbors of the tip are drawn uniformly without replacement. The tip may
/// recoil from position i only while i > max(1, l_max - feeler); otherwise the
/// attempt fails. Every compatible complete polymer C is returned with
/// probability 1/W(C|G).
template <class Graph, class URBG>
GrowthResult grow(Graph& graph, const Occupancy& occ, int length, int feeler, URBG& g,
                  std::vector<GrowthEvent>* trace = nullptr) {
  if (length < 1) throw std::invalid_argument("grow: length must be >= 1");
  if (feeler < 0 || feeler > length) throw std::invalid_argument("grow: feeler must lie in [0, L]");
  const VertexId root = graph.root();
  if (occ.occupied(root)) throw std::logic_error("grow: root is occupied");

  const auto len = static_cast<std::size_t>(length);
  std::vector<VertexId> path;
  path.reserve(len);
  std::vector<std::vector<VertexId>> untried(len);  // per position: out-edges, tried ones first
  std::vector<std::size_t> tried(len, 0);
  GrowthResult result;
  int l_max = 1;
  auto delta = [&] { return std::max(1, l_max - feeler); };
  auto log = [&](GrowthEventKind kind, VertexId v) {
    if (trace != nullptr) trace->push_back({kind, static_cast<int>(path.size()), v, l_max, delta()});
  };
  std::vector<char> loaded(len, 0);
  // out-edges of a position are read only once growth continues from it, so a
  // completed polymer's last vertex is never queried
  auto enter = [&](VertexId v) {
    path.push_back(v);
    loaded[path.size() - 1] = 0;
    tried[path.size() - 1] = 0;
  };

  enter(root);
  for (;;) {
    ++result.steps;
    const std::size_t i = path.size();
    if (i == len) {
      result.success = true;
      result.polymer = path;
      log(GrowthEventKind::Success, path.back());
      return result;
    }
    auto& options = untried[i - 1];
    std::size_t& t = tried[i - 1];
    if (!loaded[i - 1]) {
      const auto edges = graph.out_edges(path.back());
      options.assign(edges.begin(), edges.end());
      loaded[i - 1] = 1;
    }
    bool extended = false;
    while (t < options.size()) {
      const std::size_t j = t + uniform_below(g, static_cast<std::uint32_t>(options.size() - t));
      std::swap(options[t], options[j]);
      const VertexId v = options[t++];
      ++result.draws;
      if (occ.occupied(v) || detail::contains(path, v)) {
        log(GrowthEventKind::Blocked, v);
        continue;
      }
      enter(v);
      l_max = std::max(l_max, static_cast<int>(path.size()));
      log(GrowthEventKind::Extend, v);
      extended = true;
      break;
    }
    if (extended) continue;
    if (static_cast<int>(i) > delta()) {
      const VertexId left = path.back();
      path.pop_back();
      ++result.recoils;
      log(GrowthEventKind::Recoil, left);
    } else {
      log(GrowthEventKind::Fail, path.back());
      return result;
    }
  }
}

/// Whether out-neighbor v of prefix.back() is admissible: for i = |prefix| < L - feeler,
/// (prefix, v) extends `feeler` more steps on the graph; otherwise it completes to
/// length L. The rest of the final polymer is ignored; only occupancy and
/// (prefix, v, extension) itself must be avoided.
template <class Graph>
bool is_admissible(Graph& graph, const Occupancy& occ, std::span<const VertexId> prefix, VertexId v, int feeler,
                   int length) {
  if (occ.occupied(v) || detail::contains(prefix, v)) return false;
  const int i = static_cast<int>(prefix.size());
  const int need = i < length - feeler ? feeler : length - i - 1;
  std::vector<VertexId> path(prefix.begin(), prefix.end());
  path.push_back(v);
  return detail::can_extend(graph, occ, path, need);
}

/// Number of admissible out-neighbors of c[i-1] relative to the prefix c[0..i), 1 <= i <= L-1.
/// `c` must already be oriented from the graph root.
template <class Graph>
int elementary_weight(Graph& graph, const Occupancy& occ, std::span<const VertexId> c, int i, int feeler) {
  const int length = static_cast<int>(c.size());
  if (i < 1 || i > length - 1) throw std::out_of_range("elementary_weight: position outside [1, L-1]");
  const auto prefix = c.first(static_cast<std::size_t>(i));
  int w = 0;
  for (VertexId v : graph.out_edges(prefix.back()))
    if (is_admissible(graph, occ, prefix, v, feeler, length)) ++w;
  return w;
}

/// W(C|G) as its elementary factors.
struct Weight {
  std::vector<int> elementary;

  double value() const {
    double w = 1.0;
    for (int x : elementary) w *= x;
    return w;
  }
  double log() const {
    double s = 0.0;
    for (int x : elementary) s += std::log(static_cast<double>(x));
    return s;
  }
  BigInt exact() const {
    BigInt w = 1;
    for (int x : elementary) w *= x;
    return w;
  }
};

/// c oriented from the graph root, or std::invalid_argument if it cannot be.
template <class Graph>
Polymer oriented_compatible(Graph& graph, const Occupancy& occ, std::span<const VertexId> c) {
  Polymer oriented = orient_from_root(graph.root(), c);
  if (oriented.empty()) throw std::invalid_argument("polymer and graph are not compatible: root is not an extremity");
  for (std::size_t i = 0; i < oriented.size(); ++i) {
    if (occ.occupied(oriented[i])) throw std::invalid_argument("polymer overlaps an occupied vertex");
    if (detail::contains(std::span<const VertexId>(oriented).first(i), oriented[i]))
      throw std::invalid_argument("polymer is not self-avoiding");
    if (i + 1 < oriented.size()) {
      const auto e = graph.out_edges(oriented[i]);
      if (std::find(e.begin(), e.end(), oriented[i + 1]) == e.end())
        throw std::invalid_argument("polymer and graph are not compatible: missing edge");
    }
  }
  return oriented;
}

/// W(C|G) = prod_{i=1}^{L-1} w_i. Throws std::invalid_argument when C and G are incompatible.
template <class Graph>
Weight weight(Graph& graph, const Occupancy& occ, std::span<const VertexId> c, int feeler) {
  const Polymer oriented = oriented_compatible(graph, occ, c);
  Weight w;
  for (int i = 1; i + 1 <= static_cast<int>(oriented.size()); ++i)
    w.elementary.push_back(elementary_weight(graph, occ, oriented, i, feeler));
  return w;
}

/// P_g(C|G): 1/W(C|G) for a compatible, occupancy-avoiding polymer, else 0.
template <class Graph>
double prob_g(Graph& graph, const Occupancy& occ, std::span<const VertexId> c, int feeler) {
  try {
    return 1.0 / weight(graph, occ, c, feeler).value();
  } catch (const std::invalid_argument&) {
    return 0.0;
  }
}

}  // namespace rgstar
