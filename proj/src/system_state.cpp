#include "rgstar/system_state.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace rgstar {

void Occupancy::set(VertexId v, int owner, int position) {
  if (owner_[v] < 0) ++occupied_;
  owner_[v] = owner;
  position_[v] = position;
}

void Occupancy::clear(VertexId v) {
  if (owner_[v] >= 0) --occupied_;
  owner_[v] = -1;
  position_[v] = -1;
}

SystemState::SystemState(const LatticeConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  occupancy_ = Occupancy(static_cast<std::uint32_t>(cfg_.vertex_count()));
}

SystemState::SystemState(const LatticeConfig& cfg, std::vector<Polymer> polymers)
    : SystemState(cfg) {
  polymers_ = std::move(polymers);
  vacated_.assign(polymers_.size(), 0);
  for (std::size_t i = 0; i < polymers_.size(); ++i) mark(i);
}

void SystemState::mark(std::size_t i) {
  const auto& c = polymers_[i];
  for (std::size_t p = 0; p < c.size(); ++p) {
    const VertexId v = c[p];
    if (v >= occupancy_.vertex_count()) {
      overlapping_ = true;  // reported precisely by validate()
      continue;
    }
    if (occupancy_.occupied(v)) {
      overlapping_ = true;
      continue;
    }
    occupancy_.set(v, static_cast<int>(i), static_cast<int>(p));
  }
}

std::uint64_t SystemState::total_length() const {
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < polymers_.size(); ++i)
    if (!vacated_[i]) n += polymers_[i].size();
  return n;
}

bool SystemState::uniform_length() const {
  return std::all_of(polymers_.begin(), polymers_.end(),
                     [&](const Polymer& c) { return c.size() == polymers_.front().size(); });
}

void SystemState::reindex_from(std::size_t i) {
  for (std::size_t j = i; j < polymers_.size(); ++j) {
    if (vacated_[j]) continue;
    for (std::size_t p = 0; p < polymers_[j].size(); ++p)
      occupancy_.set(polymers_[j][p], static_cast<int>(j), static_cast<int>(p));
  }
}

Polymer SystemState::remove_polymer(std::size_t i) {
  if (i >= polymers_.size()) throw std::out_of_range("polymer index out of range");
  if (!vacated_[i])
    for (VertexId v : polymers_[i]) occupancy_.clear(v);
  Polymer out = std::move(polymers_[i]);
  polymers_.erase(polymers_.begin() + static_cast<std::ptrdiff_t>(i));
  vacated_.erase(vacated_.begin() + static_cast<std::ptrdiff_t>(i));
  reindex_from(i);
  return out;
}

void SystemState::insert_polymer(Polymer c) {
  for (VertexId v : c) {
    if (v >= occupancy_.vertex_count()) throw std::out_of_range("polymer vertex out of range");
    if (occupancy_.occupied(v))
      throw OverlapError("cannot insert polymer: vertex " + std::to_string(v) + " is occupied");
  }
  polymers_.push_back(std::move(c));
  vacated_.push_back(0);
  mark(polymers_.size() - 1);
}

void SystemState::vacate(std::size_t i) {
  if (vacated_.at(i)) return;
  for (VertexId v : polymers_[i]) occupancy_.clear(v);
  vacated_[i] = 1;
}

void SystemState::occupy(std::size_t i, Polymer c) {
  if (!vacated_.at(i)) throw std::logic_error("occupy() on a slot that was not vacated");
  for (VertexId v : c) {
    if (v >= occupancy_.vertex_count()) throw std::out_of_range("polymer vertex out of range");
    if (occupancy_.occupied(v))
      throw OverlapError("cannot place polymer: vertex " + std::to_string(v) + " is occupied");
  }
  polymers_[i] = std::move(c);
  vacated_[i] = 0;
  mark(i);
}

std::optional<std::string> validate(const SystemState& state) {
  const auto& cfg = state.lattice();
  const std::uint64_t n = cfg.vertex_count();
  const auto& polymers = state.polymers();
  for (std::size_t i = 0; i < polymers.size(); ++i) {
    if (state.vacated(i)) continue;
    const auto& c = polymers[i];
    const std::string tag = "polymer " + std::to_string(i);
    if (c.size() < 2) return "too short: " + tag + " has fewer than 2 vertices";
    for (VertexId v : c)
      if (v >= n) return "vertex out of range: " + tag + " contains " + std::to_string(v);
    for (std::size_t p = 0; p + 1 < c.size(); ++p)
      if (!torus_adjacent(cfg, c[p], c[p + 1]))
        return "broken path: " + tag + " steps from " + std::to_string(c[p]) + " to " + std::to_string(c[p + 1]);
    std::unordered_set<VertexId> seen;
    for (VertexId v : c)
      if (!seen.insert(v).second) return "self-intersection: " + tag + " visits " + std::to_string(v) + " twice";
  }
  std::vector<int> owner(n, -1);
  for (std::size_t i = 0; i < polymers.size(); ++i) {
    if (state.vacated(i)) continue;
    for (VertexId v : polymers[i]) {
      if (owner[v] >= 0)
        return "overlap: polymers " + std::to_string(owner[v]) + " and " + std::to_string(i) + " share vertex " +
               std::to_string(v);
      owner[v] = static_cast<int>(i);
    }
  }
  const auto& occ = state.occupancy();
  std::uint32_t occupied = 0;
  for (VertexId v = 0; v < n; ++v) {
    if (occ.owner(v) != owner[v]) return "occupancy mismatch at vertex " + std::to_string(v);
    if (owner[v] >= 0) {
      ++occupied;
      const auto& c = polymers[owner[v]];
      const int pos = occ.position(v);
      if (pos < 0 || static_cast<std::size_t>(pos) >= c.size() || c[pos] != v)
        return "occupancy mismatch at vertex " + std::to_string(v);
    }
  }
  if (occupied != occ.occupied_count() || state.overlapping_) return "occupancy mismatch: occupied count";
  return std::nullopt;
}

Ratio density(const SystemState& state) {
  return {state.total_length(), state.lattice().vertex_count()};
}

std::vector<VertexId> boustrophedon_order(const LatticeConfig& cfg) {
  cfg.validate();
  const std::uint64_t n = cfg.vertex_count();
  const auto a = static_cast<std::uint64_t>(cfg.a);
  std::vector<VertexId> out;
  out.reserve(n);
  std::vector<std::uint64_t> digits(cfg.d);
  for (std::uint64_t t = 0; t < n; ++t) {
    std::uint64_t r = t;
    for (int j = cfg.d - 1; j >= 0; --j) {
      digits[j] = r % a;
      r /= a;
    }
    // reflect each digit when the sum of the more significant output coordinates is odd
    std::uint64_t parity = 0;
    VertexId v = 0;
    for (int j = 0; j < cfg.d; ++j) {
      const std::uint64_t x = (parity & 1) ? a - 1 - digits[j] : digits[j];
      parity += x;
      v = static_cast<VertexId>(v * a + x);
    }
    out.push_back(v);
  }
  return out;
}

SystemState boxed_initial_state(const LatticeConfig& cfg, std::span<const int> lengths) {
  cfg.validate();
  std::uint64_t total = 0;
  for (int l : lengths) {
    if (l < 2) throw std::invalid_argument("polymer length must be >= 2");
    total += static_cast<std::uint64_t>(l);
  }
  if (total > cfg.vertex_count())
    throw InfeasibleError("infeasible: total polymer length " + std::to_string(total) + " exceeds a^d = " +
                          std::to_string(cfg.vertex_count()));
  const auto order = boustrophedon_order(cfg);
  std::vector<Polymer> polymers;
  std::size_t at = 0;
  for (int l : lengths) {
    polymers.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(at),
                          order.begin() + static_cast<std::ptrdiff_t>(at + l));
    at += static_cast<std::size_t>(l);
  }
  return SystemState(cfg, std::move(polymers));
}

SystemState boxed_initial_state(const LatticeConfig& cfg, int n, int length) {
  if (n < 0) throw std::invalid_argument("polymer count must be >= 0");
  const std::vector<int> lengths(static_cast<std::size_t>(n), length);
  return boxed_initial_state(cfg, lengths);
}

Polymer canonical_orientation(std::span<const VertexId> c) {
  Polymer out(c.begin(), c.end());
  if (!out.empty() && out.back() < out.front()) std::reverse(out.begin(), out.end());
  return out;
}

CanonicalKey canonical_key(std::span<const Polymer> polymers) {
  std::vector<Polymer> oriented;
  oriented.reserve(polymers.size());
  for (const auto& c : polymers) oriented.push_back(canonical_orientation(c));
  std::sort(oriented.begin(), oriented.end(), [](const Polymer& x, const Polymer& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  CanonicalKey key;
  for (const auto& c : oriented) {
    key.push_back(static_cast<VertexId>(c.size()));
    key.insert(key.end(), c.begin(), c.end());
  }
  return key;
}

CanonicalKey canonical_key(const SystemState& state) {
  std::vector<Polymer> present;
  for (std::size_t i = 0; i < state.size(); ++i)
    if (!state.vacated(i)) present.push_back(state.polymer(i));
  return canonical_key(present);
}

std::size_t CanonicalKeyHash::operator()(const CanonicalKey& k) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (VertexId v : k) {
    h ^= v;
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 29));
}

void write_snapshot(std::ostream& out, const SystemState& state) {
  const auto& cfg = state.lattice();
  const bool uniform = state.size() > 0 && state.uniform_length();
  out << cfg.d << ' ' << cfg.a << ' ' << state.size() << ' ' << (uniform ? state.polymer(0).size() : 0) << '\n';
  for (const auto& c : state.polymers()) {
    for (std::size_t p = 0; p < c.size(); ++p) out << (p ? " " : "") << c[p];
    out << '\n';
  }
}

std::string snapshot_string(const SystemState& state) {
  std::ostringstream os;
  write_snapshot(os, state);
  return os.str();
}

SystemState read_snapshot(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("snapshot: missing header line");
  std::istringstream header(line);
  LatticeConfig cfg;
  std::size_t n = 0;
  std::size_t length = 0;
  if (!(header >> cfg.d >> cfg.a >> n >> length))
    throw std::runtime_error("snapshot: header must be `d a N L`");
  std::vector<Polymer> polymers;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("snapshot: expected " + std::to_string(n) + " polymer lines");
    std::istringstream row(line);
    Polymer c;
    VertexId v;
    while (row >> v) c.push_back(v);
    if (!row.eof()) throw std::runtime_error("snapshot: bad vertex on polymer line " + std::to_string(i + 2));
    if (length != 0 && c.size() != length)
      throw std::runtime_error("snapshot: polymer line " + std::to_string(i + 2) + " has wrong length");
    polymers.push_back(std::move(c));
  }
  SystemState state(cfg, std::move(polymers));
  if (auto err = validate(state)) throw std::runtime_error("snapshot: invalid state: " + *err);
  return state;
}

SystemState parse_snapshot(const std::string& text) {
  std::istringstream is(text);
  return read_snapshot(is);
}

}  // namespace rgstar
