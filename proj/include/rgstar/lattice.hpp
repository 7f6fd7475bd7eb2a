#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rgstar {

using VertexId = std::uint32_t;

/// Geometry of the torus (Z/aZ)^d.
struct LatticeConfig {
  int d = 2;
  int a = 3;

  /// Throws std::invalid_argument unless d >= 1, a >= 3 and a^d fits the vertex index type.
  void validate() const;
  std::uint64_t vertex_count() const;
  int coordination() const { return 2 * d; }

  friend bool operator==(const LatticeConfig&, const LatticeConfig&) = default;
};

/// Row-major vertex encoding and a precomputed neighbor table.
///
/// Neighbors of a vertex are listed in a fixed order: dimension 1 minus,
/// dimension 1 plus, dimension 2 minus, and so on. Dimension 1 is the most
/// significant coordinate of the row-major index.
class Lattice {
 public:
  explicit Lattice(const LatticeConfig& cfg);

  const LatticeConfig& config() const { return cfg_; }
  int dimension() const { return cfg_.d; }
  int side() const { return cfg_.a; }
  int coordination() const { return q_; }
  std::uint32_t vertex_count() const { return n_; }

  std::vector<int> to_coords(VertexId v) const;
  VertexId to_index(std::span<const int> coords) const;

  std::span<const VertexId> neighbors(VertexId v) const {
    return {table_.data() + static_cast<std::size_t>(v) * q_, static_cast<std::size_t>(q_)};
  }
  bool adjacent(VertexId u, VertexId v) const;

 private:
  void check(VertexId v) const;

  LatticeConfig cfg_;
  int q_;
  std::uint32_t n_;
  std::vector<VertexId> table_;
};

/// Adjacency on the torus computed from coordinates, without a neighbor table.
bool torus_adjacent(const LatticeConfig& cfg, VertexId u, VertexId v);

}  // namespace rgstar
