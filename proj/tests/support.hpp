#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "rgstar/lattice.hpp"

namespace rgstar::test {

/// Generator that replays a fixed list of raw 64-bit draws. With uniform_below(g, n),
/// the raw value floor(j * 2^64 / n) + 1 selects j; 0 always selects 0.
struct ScriptedRng {
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  std::deque<result_type> raw;
  result_type operator()() {
    if (raw.empty()) throw std::logic_error("scripted generator exhausted");
    const auto v = raw.front();
    raw.pop_front();
    return v;
  }

  /// Raw draw that makes uniform_below(n) return j.
  static result_type pick(std::uint32_t j, std::uint32_t n) {
    if (j == 0) return 0;
    const unsigned __int128 scaled = (static_cast<unsigned __int128>(j) << 64) / n;
    return static_cast<result_type>(scaled) + 1;
  }
};

/// Hand-written underlying graph for growth scenarios.
struct ScriptGraph {
  VertexId root_ = 0;
  std::map<VertexId, std::vector<VertexId>> edges;

  VertexId root() const { return root_; }
  std::span<const VertexId> out_edges(VertexId v) const {
    auto it = edges.find(v);
    if (it == edges.end()) throw std::logic_error("script graph: vertex without out-edges queried");
    return it->second;
  }
  int out_degree(VertexId v) const { return static_cast<int>(out_edges(v).size()); }
};

inline VertexId at(const Lattice& l, int x, int y) {
  const int c[] = {x, y};
  return l.to_index(c);
}

}  // namespace rgstar::test
