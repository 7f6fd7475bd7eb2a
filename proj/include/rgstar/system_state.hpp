#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rgstar/lattice.hpp"

namespace rgstar {

/// A self-avoiding lattice path of at least two vertices. Orientation carries no meaning.
using Polymer = std::vector<VertexId>;

class OverlapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense per-vertex record of which polymer slot (and position) occupies a vertex.
class Occupancy {
 public:
  Occupancy() = default;
  explicit Occupancy(std::uint32_t vertex_count) : owner_(vertex_count, -1), position_(vertex_count, -1) {}

  std::uint32_t vertex_count() const { return static_cast<std::uint32_t>(owner_.size()); }
  bool occupied(VertexId v) const { return owner_[v] >= 0; }
  bool free(VertexId v) const { return owner_[v] < 0; }
  /// Polymer slot at v, or -1.
  int owner(VertexId v) const { return owner_[v]; }
  int position(VertexId v) const { return position_[v]; }
  std::uint32_t occupied_count() const { return occupied_; }
  std::uint32_t free_count() const { return vertex_count() - occupied_; }

  void set(VertexId v, int owner, int position);
  void clear(VertexId v);

 private:
  std::vector<int> owner_;
  std::vector<int> position_;
  std::uint32_t occupied_ = 0;
};

/// Ratio num/den kept unreduced; equality is by value.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio& x, const Ratio& y) {
    return static_cast<unsigned __int128>(x.num) * y.den == static_cast<unsigned __int128>(y.num) * x.den;
  }
};

/// N pairwise-disjoint polymers on the torus plus their occupancy index.
///
/// Construction from a polymer list never throws on overlap; use validate()
/// to diagnose arbitrary input. insert_polymer() and occupy() reject overlaps.
class SystemState {
 public:
  explicit SystemState(const LatticeConfig& cfg);
  SystemState(const LatticeConfig& cfg, std::vector<Polymer> polymers);

  const LatticeConfig& lattice() const { return cfg_; }
  std::size_t size() const { return polymers_.size(); }
  const Polymer& polymer(std::size_t i) const { return polymers_.at(i); }
  const std::vector<Polymer>& polymers() const { return polymers_; }
  const Occupancy& occupancy() const { return occupancy_; }
  /// Sum of polymer lengths (NL for uniform lengths).
  std::uint64_t total_length() const;
  bool uniform_length() const;

  /// Erases polymer i from the list. Later polymers shift down by one.
  Polymer remove_polymer(std::size_t i);
  /// Appends a polymer; throws OverlapError if any vertex is taken.
  void insert_polymer(Polymer c);

  /// Clears the occupancy of slot i but keeps its contents, for in-place replacement.
  void vacate(std::size_t i);
  /// Installs c in slot i (previously vacated). Throws OverlapError on conflict.
  void occupy(std::size_t i, Polymer c);
  bool vacated(std::size_t i) const { return vacated_.at(i) != 0; }

  friend bool operator==(const SystemState& x, const SystemState& y) {
    return x.cfg_ == y.cfg_ && x.polymers_ == y.polymers_;
  }

 private:
  void mark(std::size_t i);
  void reindex_from(std::size_t i);

  LatticeConfig cfg_;
  std::vector<Polymer> polymers_;
  std::vector<char> vacated_;
  Occupancy occupancy_;
  bool overlapping_ = false;

  friend std::optional<std::string> validate(const SystemState&);
};

/// Returns the first violated invariant ("overlap", "broken path", ...), or nullopt.
std::optional<std::string> validate(const SystemState& state);

Ratio density(const SystemState& state);

/// Cuts a boustrophedon Hamiltonian path of the torus into consecutive runs of the given lengths.
SystemState boxed_initial_state(const LatticeConfig& cfg, std::span<const int> lengths);
SystemState boxed_initial_state(const LatticeConfig& cfg, int n, int length);

/// Vertices of the torus in boustrophedon order; consecutive entries are adjacent.
std::vector<VertexId> boustrophedon_order(const LatticeConfig& cfg);

/// Orientation-free form of a polymer: the orientation whose first vertex is smaller.
Polymer canonical_orientation(std::span<const VertexId> c);

/// Flat key that is identical for states related by polymer reversal and permutation.
using CanonicalKey = std::vector<VertexId>;
CanonicalKey canonical_key(const SystemState& state);
CanonicalKey canonical_key(std::span<const Polymer> polymers);

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const noexcept;
};

/// Snapshot text format: header `d a N L`, then one line of vertex indices per
/// polymer. L is written as 0 when lengths differ.
void write_snapshot(std::ostream& out, const SystemState& state);
std::string snapshot_string(const SystemState& state);
SystemState read_snapshot(std::istream& in);
SystemState parse_snapshot(const std::string& text);

}  // namespace rgstar
