#include "rgstar/lattice.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace rgstar {

void LatticeConfig::validate() const {
  if (d < 1) throw std::invalid_argument("lattice dimension d must be >= 1, got " + std::to_string(d));
  if (a < 3) throw std::invalid_argument("lattice side a must be >= 3, got " + std::to_string(a));
  std::uint64_t n = 1;
  for (int i = 0; i < d; ++i) {
    n *= static_cast<std::uint64_t>(a);
    if (n > std::numeric_limits<std::uint32_t>::max() / 2)
      throw std::invalid_argument("lattice too large: a^d exceeds the vertex index range");
  }
}

std::uint64_t LatticeConfig::vertex_count() const {
  std::uint64_t n = 1;
  for (int i = 0; i < d; ++i) n *= static_cast<std::uint64_t>(a);
  return n;
}

Lattice::Lattice(const LatticeConfig& cfg) : cfg_(cfg), q_(2 * cfg.d), n_(0) {
  cfg_.validate();
  n_ = static_cast<std::uint32_t>(cfg_.vertex_count());
  table_.resize(static_cast<std::size_t>(n_) * q_);

  // stride of dimension j (0-based) in the row-major index
  std::vector<std::uint32_t> stride(cfg_.d);
  std::uint32_t s = 1;
  for (int j = cfg_.d - 1; j >= 0; --j) {
    stride[j] = s;
    s *= static_cast<std::uint32_t>(cfg_.a);
  }
  const auto a = static_cast<std::uint32_t>(cfg_.a);
  for (std::uint32_t v = 0; v < n_; ++v) {
    for (int j = 0; j < cfg_.d; ++j) {
      const std::uint32_t x = (v / stride[j]) % a;
      const std::uint32_t base = v - x * stride[j];
      table_[static_cast<std::size_t>(v) * q_ + 2 * j] = base + ((x + a - 1) % a) * stride[j];
      table_[static_cast<std::size_t>(v) * q_ + 2 * j + 1] = base + ((x + 1) % a) * stride[j];
    }
  }
}

void Lattice::check(VertexId v) const {
  if (v >= n_)
    throw std::out_of_range("vertex index " + std::to_string(v) + " outside [0, " + std::to_string(n_) + ")");
}

std::vector<int> Lattice::to_coords(VertexId v) const {
  check(v);
  std::vector<int> out(cfg_.d);
  for (int j = cfg_.d - 1; j >= 0; --j) {
    out[j] = static_cast<int>(v % static_cast<std::uint32_t>(cfg_.a));
    v /= static_cast<std::uint32_t>(cfg_.a);
  }
  return out;
}

VertexId Lattice::to_index(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) != cfg_.d)
    throw std::invalid_argument("coordinate tuple has wrong dimension");
  std::uint32_t v = 0;
  for (int x : coords) {
    if (x < 0 || x >= cfg_.a) throw std::out_of_range("coordinate outside [0, a)");
    v = v * static_cast<std::uint32_t>(cfg_.a) + static_cast<std::uint32_t>(x);
  }
  return v;
}

bool Lattice::adjacent(VertexId u, VertexId v) const {
  const auto nb = neighbors(u);
  return std::find(nb.begin(), nb.end(), v) != nb.end();
}

bool torus_adjacent(const LatticeConfig& cfg, VertexId u, VertexId v) {
  const auto a = static_cast<std::uint32_t>(cfg.a);
  int differing = 0;
  for (int j = 0; j < cfg.d; ++j) {
    const std::uint32_t x = u % a;
    const std::uint32_t y = v % a;
    u /= a;
    v /= a;
    if (x == y) continue;
    if ((x + 1) % a != y && (y + 1) % a != x) return false;
    ++differing;
  }
  return differing == 1;
}

}  // namespace rgstar
