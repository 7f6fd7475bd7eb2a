#include "rgstar/oracle.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <numeric>
#include <set>

namespace rgstar {

namespace {

void guard_lattice(const LatticeConfig& cfg) {
  cfg.validate();
  if (cfg.vertex_count() > kMaxOracleVertices)
    throw OracleRefused("instance too large for enumeration: a^d = " + std::to_string(cfg.vertex_count()) +
                        " > " + std::to_string(kMaxOracleVertices));
}

std::uint64_t mask_of(std::span<const VertexId> c) {
  std::uint64_t m = 0;
  for (VertexId v : c) m |= std::uint64_t{1} << v;
  return m;
}

Occupancy occupancy_of(std::uint32_t n, const std::vector<const Polymer*>& polymers) {
  Occupancy occ(n);
  for (std::size_t i = 0; i < polymers.size(); ++i)
    for (std::size_t p = 0; p < polymers[i]->size(); ++p) occ.set((*polymers[i])[p], static_cast<int>(i), static_cast<int>(p));
  return occ;
}

}  // namespace

std::optional<std::uint32_t> PolymerCatalog::find(std::span<const VertexId> c) const {
  const Polymer key = canonical_orientation(c);
  const auto it = std::lower_bound(polymers.begin(), polymers.end(), key);
  if (it == polymers.end() || *it != key) return std::nullopt;
  return static_cast<std::uint32_t>(it - polymers.begin());
}

PolymerCatalog polymer_catalog(const LatticeConfig& cfg, int length) {
  guard_lattice(cfg);
  if (length < 2) throw std::invalid_argument("polymer length must be >= 2");
  const Lattice lattice(cfg);
  PolymerCatalog catalog;
  catalog.lattice = cfg;
  catalog.length = length;
  Polymer path;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(path.size()) == length) {
      if (path.front() < path.back()) catalog.polymers.push_back(path);
      return;
    }
    for (VertexId u : lattice.neighbors(path.back())) {
      if (std::find(path.begin(), path.end(), u) != path.end()) continue;
      path.push_back(u);
      self(self);
      path.pop_back();
    }
  };
  for (VertexId v = 0; v < lattice.vertex_count(); ++v) {
    path.assign(1, v);
    rec(rec);
  }
  std::sort(catalog.polymers.begin(), catalog.polymers.end());
  catalog.polymers.erase(std::unique(catalog.polymers.begin(), catalog.polymers.end()), catalog.polymers.end());
  for (const auto& c : catalog.polymers) catalog.masks.push_back(mask_of(c));
  return catalog;
}

StateSpace::StateSpace(PolymerCatalog catalog, int n) : catalog_(std::move(catalog)), n_(n) {}

SystemState StateSpace::state(std::size_t s) const {
  std::vector<Polymer> polymers;
  for (std::uint32_t id : ids(s)) polymers.push_back(catalog_.polymers[id]);
  return SystemState(catalog_.lattice, std::move(polymers));
}

CanonicalKey StateSpace::key(std::size_t s) const {
  std::vector<Polymer> polymers;
  for (std::uint32_t id : ids(s)) polymers.push_back(catalog_.polymers[id]);
  return canonical_key(polymers);
}

std::optional<std::size_t> StateSpace::find(const CanonicalKey& key) const {
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> StateSpace::find_ids(std::vector<std::uint32_t> ids) const {
  std::vector<Polymer> polymers;
  for (std::uint32_t id : ids) polymers.push_back(catalog_.polymers.at(id));
  return find(canonical_key(polymers));
}

StateSpace enumerate_states(const LatticeConfig& cfg, int n, int length, std::size_t max_states) {
  guard_lattice(cfg);
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  if (static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(length) > cfg.vertex_count())
    throw OracleRefused("N*L exceeds a^d");
  StateSpace space(polymer_catalog(cfg, length), n);
  for_each_state(space.catalog_, n, [&](std::span<const std::uint32_t> ids) {
    if (space.size() >= max_states) throw OracleRefused("state space exceeds " + std::to_string(max_states) + " states");
    space.states_.insert(space.states_.end(), ids.begin(), ids.end());
  });
  space.index_.reserve(space.size());
  for (std::size_t s = 0; s < space.size(); ++s) {
    const bool fresh = space.index_.emplace(space.key(s), s).second;
    if (!fresh) throw std::logic_error("duplicate canonical state in enumeration");
  }
  return space;
}

void for_each_underlying_graph(const Lattice& lattice, const Occupancy& occ, const DegreeLaw& law,
                               const std::function<void(const UnderlyingGraph&, const Rational&)>& f,
                               std::span<const VertexId> compatible_with, std::size_t max_graphs) {
  if (lattice.vertex_count() > kMaxOracleVertices) throw OracleRefused("lattice too large for graph enumeration");
  const int q = lattice.coordination();
  const std::uint32_t n = lattice.vertex_count();
  std::vector<int> degree(n, -1);
  std::vector<VertexId> edges(static_cast<std::size_t>(n) * q);
  std::vector<char> queued(n, 0);
  std::vector<VertexId> queue;
  std::vector<VertexId> forced(n, static_cast<VertexId>(-1));
  UnderlyingGraph leaf(lattice);
  std::size_t produced = 0;

  auto emit = [&](const Rational& pr) {
    if (++produced > max_graphs) throw OracleRefused("underlying-graph support exceeds " + std::to_string(max_graphs));
    leaf.reset(queue.front());
    for (VertexId v : queue)
      leaf.assign(v, std::span<const VertexId>(edges.data() + static_cast<std::size_t>(v) * q,
                                               static_cast<std::size_t>(degree[v])));
    f(leaf, pr);
  };

  auto rec = [&](auto&& self, std::size_t head, const Rational& pr) -> void {
    if (head == queue.size()) {
      emit(pr);
      return;
    }
    const VertexId v = queue[head];
    const auto nb = lattice.neighbors(v);
    const bool has_forced = forced[v] != static_cast<VertexId>(-1);
    std::vector<VertexId> pool;
    for (VertexId u : nb)
      if (!has_forced || u != forced[v]) pool.push_back(u);
    for (int kappa = 1; kappa <= q; ++kappa) {
      const Rational pk = law.p_exact(kappa);
      if (pk == 0) continue;
      const int choose = has_forced ? kappa - 1 : kappa;
      if (choose > static_cast<int>(pool.size())) continue;
      const Rational factor = pk / Rational(binomial(static_cast<int>(pool.size()), choose));
      // iterate choose-subsets of pool by a selection bitmask in increasing order
      std::vector<char> pick(pool.size(), 0);
      std::fill(pick.begin(), pick.begin() + choose, 1);
      do {
        VertexId* out = edges.data() + static_cast<std::size_t>(v) * q;
        int t = 0;
        if (has_forced) out[t++] = forced[v];
        for (std::size_t j = 0; j < pool.size(); ++j)
          if (pick[j]) out[t++] = pool[j];
        degree[v] = t;
        const std::size_t before = queue.size();
        for (int j = 0; j < t; ++j)
          if (!queued[out[j]]) {
            queued[out[j]] = 1;
            queue.push_back(out[j]);
          }
        self(self, head + 1, pr * factor);
        while (queue.size() > before) {
          queued[queue.back()] = 0;
          queue.pop_back();
        }
        degree[v] = -1;
      } while (std::prev_permutation(pick.begin(), pick.end()));
    }
  };

  auto from_root = [&](VertexId root, const Rational& pr) {
    queue.assign(1, root);
    queued[root] = 1;
    rec(rec, 0, pr);
    queued[root] = 0;
    queue.clear();
  };

  if (compatible_with.empty()) {
    const std::uint32_t gamma = occ.free_count();
    if (gamma == 0) throw InfeasibleError("no free vertex for the underlying-graph root");
    const Rational root_pr = Rational(1) / Rational(gamma);
    for (VertexId r = 0; r < n; ++r)
      if (occ.free(r)) from_root(r, root_pr);
    return;
  }
  if (compatible_with.size() < 2) throw std::invalid_argument("compatible graphs need a polymer of length >= 2");
  for (int orientation = 0; orientation < 2; ++orientation) {
    Polymer oriented(compatible_with.begin(), compatible_with.end());
    if (orientation == 1) std::reverse(oriented.begin(), oriented.end());
    for (std::size_t i = 0; i + 1 < oriented.size(); ++i) forced[oriented[i]] = oriented[i + 1];
    from_root(oriented.front(), Rational(1) / 2);
    for (std::size_t i = 0; i + 1 < oriented.size(); ++i) forced[oriented[i]] = static_cast<VertexId>(-1);
  }
}

std::vector<EnumeratedGraph> enumerate_underlying_graphs(const Lattice& lattice, const Occupancy& occ,
                                                         const DegreeLaw& law, std::size_t max_graphs) {
  std::vector<EnumeratedGraph> out;
  for_each_underlying_graph(
      lattice, occ, law, [&](const UnderlyingGraph& g, const Rational& pr) { out.push_back({g, pr}); }, {},
      max_graphs);
  return out;
}

std::vector<EnumeratedGraph> enumerate_compatible_graphs(const Lattice& lattice, std::span<const VertexId> c,
                                                         const DegreeLaw& law, std::size_t max_graphs) {
  std::vector<EnumeratedGraph> out;
  const Occupancy none(lattice.vertex_count());
  for_each_underlying_graph(
      lattice, none, law, [&](const UnderlyingGraph& g, const Rational& pr) { out.push_back({g, pr}); }, c,
      max_graphs);
  return out;
}

namespace {

// Calls f(target state, C_o, C_n, occupancy of the n-1 others) for every one-polymer replacement.
template <class F>
void for_each_move(const StateSpace& space, std::size_t s, F&& f) {
  const auto& catalog = space.catalog();
  const auto ids = space.ids(s);
  const auto n = ids.size();
  const std::uint32_t vertices = static_cast<std::uint32_t>(space.lattice().vertex_count());
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t others = 0;
    std::vector<const Polymer*> rest;
    std::vector<std::uint32_t> rest_ids;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) {
        others |= catalog.masks[ids[j]];
        rest.push_back(&catalog.polymers[ids[j]]);
        rest_ids.push_back(ids[j]);
      }
    const Occupancy occ = occupancy_of(vertices, rest);
    for (std::uint32_t c = 0; c < catalog.size(); ++c) {
      if (c == ids[i] || (catalog.masks[c] & others)) continue;
      auto target_ids = rest_ids;
      target_ids.push_back(c);
      const auto t = space.find_ids(std::move(target_ids));
      if (!t) throw std::logic_error("replacement produced a state outside the enumeration");
      f(*t, catalog.polymers[ids[i]], catalog.polymers[c], occ);
    }
  }
}

std::vector<Weight> end_weights(const Lattice& lattice, const Occupancy& occ, const Polymer& c, int feeler) {
  std::vector<Weight> w;
  for (VertexId r : {c.front(), c.back()}) {
    FullGraph g(lattice, r);
    w.push_back(weight(g, occ, c, feeler));
  }
  return w;
}

template <class Scalar>
Scalar to_scalar(const BigInt& x) {
  if constexpr (std::is_same_v<Scalar, Rational>)
    return Rational(x);
  else
    return x.template convert_to<Scalar>();
}

template <class Scalar, class AcceptFn>
Kernel<Scalar> build_kernel(const StateSpace& space, int feeler, AcceptFn&& accept, std::vector<double> log_q) {
  const Lattice lattice(space.lattice());
  const int n = space.polymer_count();
  Kernel<Scalar> kernel;
  kernel.rows.resize(space.size());
  kernel.log_q = std::move(log_q);
  for (std::size_t s = 0; s < space.size(); ++s) {
    auto& row = kernel.rows[s];
    Scalar off = 0;
    for_each_move(space, s, [&](std::size_t t, const Polymer& c_old, const Polymer& c_new, const Occupancy& occ) {
      const auto gamma = occ.free_count();
      const auto wn = end_weights(lattice, occ, c_new, feeler);
      const auto wo = end_weights(lattice, occ, c_old, feeler);
      Scalar p = 0;
      for (const auto& w_new : wn) {
        Scalar inner = 0;
        for (const auto& w_old : wo) inner += accept(w_new, w_old, c_old, c_new, occ) / Scalar(2);
        p += inner / (Scalar(gamma) * to_scalar<Scalar>(w_new.exact()));
      }
      p /= Scalar(n);
      row[t] += p;
      off += p;
    });
    row[s] += Scalar(1) - off;
  }
  return kernel;
}

}  // namespace

ExactKernel exact_kernel_kQ(const StateSpace& space, int feeler) {
  if (feeler < 0 || feeler > space.length()) throw std::invalid_argument("feeler length must lie in [0, L]");
  auto accept = [](const Weight& wn, const Weight& wo, const Polymer&, const Polymer&, const Occupancy&) {
    const Rational r = Rational(wn.exact()) / Rational(wo.exact());
    return r < 1 ? r : Rational(1);
  };
  return build_kernel<Rational>(space, feeler, accept, std::vector<double>(space.size(), 0.0));
}

FloatKernel float_kernel_kQ(const StateSpace& space, int feeler, const EnergyModel& energy) {
  if (feeler < 0 || feeler > space.length()) throw std::invalid_argument("feeler length must lie in [0, L]");
  const Lattice lattice(space.lattice());
  auto accept = [&](const Weight& wn, const Weight& wo, const Polymer& c_old, const Polymer& c_new,
                    const Occupancy& occ) {
    const double lq = energy.log_q_ratio(contacts_with(lattice, occ, c_old), contacts_with(lattice, occ, c_new));
    const long double r = std::exp(static_cast<long double>(lq)) * static_cast<long double>(wn.value()) /
                          static_cast<long double>(wo.value());
    return r < 1.0L ? r : 1.0L;
  };
  std::vector<double> log_q(space.size());
  for (std::size_t s = 0; s < space.size(); ++s) log_q[s] = -energy.energy(space.state(s));
  return build_kernel<long double>(space, feeler, accept, std::move(log_q));
}

namespace {

template <class Scalar>
BalanceReport balance_impl(const StateSpace& space, const Kernel<Scalar>& kernel, bool exact) {
  BalanceReport rep;
  rep.exact = exact;
  const double top = *std::max_element(kernel.log_q.begin(), kernel.log_q.end());
  auto q = [&](std::size_t s) { return static_cast<long double>(std::exp(kernel.log_q[s] - top)); };
  for (std::size_t s = 0; s < space.size(); ++s) {
    Scalar sum = 0;
    for (const auto& [t, p] : kernel.rows[s]) {
      sum += p;
      if (t == s) {
        rep.min_diagonal = std::min(rep.min_diagonal, static_cast<double>(p));
        continue;
      }
      if (p > 0) ++rep.pairs;
      const auto back = kernel.rows[t].find(s);
      const Scalar p_back = back == kernel.rows[t].end() ? Scalar(0) : back->second;
      double violation = 0.0;
      if constexpr (std::is_same_v<Scalar, Rational>) {
        // uniform q: balance means symmetry, checked exactly
        const Rational diff = p - p_back;
        violation = std::abs(diff.template convert_to<double>());
      } else {
        violation = static_cast<double>(std::fabs(q(s) * p - q(t) * p_back));
      }
      rep.max_violation = std::max(rep.max_violation, violation);
    }
    rep.max_row_error = std::max(rep.max_row_error, std::abs(static_cast<double>(sum) - 1.0));
    for_each_move(space, s, [&](std::size_t t, const Polymer&, const Polymer&, const Occupancy&) {
      ++rep.one_move_pairs;
      const auto it = kernel.rows[s].find(t);
      if (it == kernel.rows[s].end() || !(it->second > 0)) ++rep.zero_one_move;
    });
  }
  return rep;
}

}  // namespace

BalanceReport check_detailed_balance(const StateSpace& space, const ExactKernel& kernel) {
  for (double lq : kernel.log_q)
    if (lq != 0.0) throw std::invalid_argument("exact balance check needs a uniform energy");
  return balance_impl(space, kernel, true);
}

BalanceReport check_detailed_balance(const StateSpace& space, const FloatKernel& kernel) {
  return balance_impl(space, kernel, false);
}

FloatKernel to_float(const ExactKernel& kernel) {
  FloatKernel out;
  out.log_q = kernel.log_q;
  out.rows.resize(kernel.rows.size());
  for (std::size_t s = 0; s < kernel.rows.size(); ++s)
    for (const auto& [t, p] : kernel.rows[s]) out.rows[s][t] = p.convert_to<long double>();
  return out;
}

std::vector<double> stationary_vector(const FloatKernel& kernel, double tolerance, std::size_t max_iterations) {
  const std::size_t m = kernel.rows.size();
  std::vector<long double> pi(m, 1.0L / static_cast<long double>(m));
  std::vector<long double> next(m);
  for (std::size_t it = 0; it < max_iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0L);
    for (std::size_t s = 0; s < m; ++s) {
      next[s] += 0.5L * pi[s];
      for (const auto& [t, p] : kernel.rows[s]) next[t] += 0.5L * pi[s] * p;
    }
    long double change = 0.0L;
    for (std::size_t s = 0; s < m; ++s) change = std::max(change, std::fabs(next[s] - pi[s]));
    pi.swap(next);
    if (change < tolerance) break;
  }
  return {pi.begin(), pi.end()};
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::uint32_t{0}); }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t x, std::uint32_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent_[std::max(x, y)] = std::min(x, y);
  }

 private:
  std::vector<std::uint32_t> parent_;
};

// Rank of an increasing id tuple in the combinatorial number system.
std::uint64_t subset_rank(std::span<const std::uint32_t> ids, std::size_t skip) {
  std::uint64_t rank = 0;
  int j = 1;
  for (std::size_t t = 0; t < ids.size(); ++t) {
    if (t == skip) continue;
    rank += binomial(static_cast<int>(ids[t]), j++);
  }
  return rank;
}

struct Components {
  std::size_t count = 0;
  std::uint64_t states = 0;
  UnionFind uf{0};
  std::vector<std::uint32_t> first_ids;
  std::vector<std::uint32_t> other_ids;
};

Components components(const PolymerCatalog& catalog, int n) {
  const std::uint64_t subsets = binomial(static_cast<int>(catalog.size()), n - 1);
  if (subsets > 200'000'000) throw OracleRefused("move graph too large: " + std::to_string(subsets) + " (N-1)-sets");
  Components out;
  out.uf = UnionFind(static_cast<std::size_t>(subsets));
  for_each_state(catalog, n, [&](std::span<const std::uint32_t> ids) {
    ++out.states;
    const auto base = static_cast<std::uint32_t>(subset_rank(ids, 0));
    for (std::size_t skip = 1; skip < ids.size(); ++skip)
      out.uf.unite(base, static_cast<std::uint32_t>(subset_rank(ids, skip)));
  });
  std::optional<std::uint32_t> first_root;
  std::vector<char> seen(static_cast<std::size_t>(subsets), 0);
  for_each_state(catalog, n, [&](std::span<const std::uint32_t> ids) {
    const std::uint32_t root = out.uf.find(static_cast<std::uint32_t>(subset_rank(ids, 0)));
    if (!seen[root]) {
      seen[root] = 1;
      ++out.count;
    }
    if (!first_root) {
      first_root = root;
      out.first_ids.assign(ids.begin(), ids.end());
    } else if (root != *first_root && out.other_ids.empty()) {
      out.other_ids.assign(ids.begin(), ids.end());
    }
  });
  return out;
}

std::vector<Polymer> polymers_of(const PolymerCatalog& catalog, std::span<const std::uint32_t> ids) {
  std::vector<Polymer> out;
  for (std::uint32_t id : ids) out.push_back(catalog.polymers[id]);
  return out;
}

}  // namespace

ReachabilityReport check_irreducibility(const LatticeConfig& cfg, int n, int length) {
  guard_lattice(cfg);
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  if (static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(length) > cfg.vertex_count())
    throw OracleRefused("N*L exceeds a^d");
  const auto catalog = polymer_catalog(cfg, length);
  auto comp = components(catalog, n);
  ReachabilityReport rep;
  rep.states = comp.states;
  rep.components = comp.count;
  rep.irreducible = comp.count == 1;
  if (!comp.other_ids.empty())
    rep.witness = std::make_pair(polymers_of(catalog, comp.first_ids), polymers_of(catalog, comp.other_ids));
  return rep;
}

bool reachable_from_all(const LatticeConfig& cfg, int n, int length, const SystemState& target) {
  if (validate(target) || target.size() != static_cast<std::size_t>(n)) return false;
  for (const auto& c : target.polymers())
    if (static_cast<int>(c.size()) != length) return false;
  // the move relation is symmetric, so target reaches every state iff there is one component
  return check_irreducibility(cfg, n, length).irreducible;
}

SystemState straight_box_state(const LatticeConfig& cfg, int n, int length) {
  cfg.validate();
  if (length < 2) throw std::invalid_argument("polymer length must be >= 2");
  const int per_line = cfg.a / length;
  const std::uint64_t lines = cfg.vertex_count() / static_cast<std::uint64_t>(cfg.a);
  if (per_line == 0 || static_cast<std::uint64_t>(n) > lines * static_cast<std::uint64_t>(per_line))
    throw InfeasibleError("straight packing holds at most floor(a/L) polymers per line");
  std::vector<Polymer> polymers;
  for (int j = 0; j < n; ++j) {
    const auto line = static_cast<VertexId>(j / per_line);
    const auto slot = static_cast<VertexId>(j % per_line);
    Polymer c;
    for (int t = 0; t < length; ++t)
      c.push_back(line * static_cast<VertexId>(cfg.a) + slot * static_cast<VertexId>(length) + static_cast<VertexId>(t));
    polymers.push_back(std::move(c));
  }
  return SystemState(cfg, std::move(polymers));
}

namespace {

// Self-avoiding paths of `length` vertices whose vertices all satisfy allowed(v).
template <class Allowed, class F>
void for_each_path(const Lattice& lattice, int length, Allowed&& allowed, F&& f) {
  Polymer path;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(path.size()) == length) {
      f(path);
      return;
    }
    for (VertexId u : lattice.neighbors(path.back())) {
      if (!allowed(u) || std::find(path.begin(), path.end(), u) != path.end()) continue;
      path.push_back(u);
      self(self);
      path.pop_back();
    }
  };
  for (VertexId v = 0; v < lattice.vertex_count(); ++v) {
    if (!allowed(v)) continue;
    path.assign(1, v);
    rec(rec);
  }
}

}  // namespace

FrozenReport check_locally_frozen(const SystemState& state) {
  const Lattice lattice(state.lattice());
  const auto& occ = state.occupancy();
  FrozenReport rep;
  rep.polymers = state.size();
  for (std::size_t i = 0; i < state.size(); ++i) {
    const auto& c = state.polymer(i);
    std::vector<VertexId> own(c.begin(), c.end());
    std::sort(own.begin(), own.end());
    auto allowed = [&](VertexId v) { return occ.free(v) || occ.owner(v) == static_cast<int>(i); };
    for_each_path(lattice, static_cast<int>(c.size()), allowed, [&](const Polymer& p) {
      ++rep.replacements;
      std::vector<VertexId> set(p.begin(), p.end());
      std::sort(set.begin(), set.end());
      if (set != own && rep.frozen) {
        rep.frozen = false;
        rep.moving_polymer = i;
      }
    });
  }
  return rep;
}

SystemState trapped_configuration() {
  const LatticeConfig cfg{2, 9};
  const Lattice lattice(cfg);
  constexpr int kLength = 5;
  auto at = [&](int x, int y) {
    const int xy[2] = {x, y};
    return lattice.to_index(xy);
  };
  // a pinwheel of four bent polymers around the free vertex (3, 3)
  const int arms[4][kLength][2] = {
      {{0, 3}, {1, 3}, {2, 3}, {2, 4}, {2, 5}},
      {{3, 6}, {3, 5}, {3, 4}, {4, 4}, {5, 4}},
      {{6, 3}, {5, 3}, {4, 3}, {4, 2}, {4, 1}},
      {{3, 0}, {3, 1}, {3, 2}, {2, 2}, {1, 2}},
  };
  std::vector<Polymer> polymers;
  std::vector<char> covered(lattice.vertex_count(), 0);
  covered[at(3, 3)] = 1;
  for (const auto& arm : arms) {
    Polymer c;
    for (const auto& p : arm) {
      c.push_back(at(p[0], p[1]));
      covered[c.back()] = 1;
    }
    polymers.push_back(std::move(c));
  }

  // tile the remaining vertices with length-5 paths: the smallest uncovered vertex
  // must lie on some path, so branch over the paths through it
  std::vector<Polymer> tiles;
  std::size_t nodes = 0;
  auto solve = [&](auto&& self) -> bool {
    if (++nodes > 5'000'000) throw std::runtime_error("tiling search exhausted its budget");
    const auto first = std::find(covered.begin(), covered.end(), 0);
    if (first == covered.end()) return true;
    const auto v = static_cast<VertexId>(first - covered.begin());
    std::vector<Polymer> options;
    for_each_path(lattice, kLength, [&](VertexId u) { return !covered[u]; }, [&](const Polymer& p) {
      if (p.front() < p.back() && std::find(p.begin(), p.end(), v) != p.end()) options.push_back(p);
    });
    for (const auto& p : options) {
      for (VertexId u : p) covered[u] = 1;
      tiles.push_back(p);
      if (self(self)) return true;
      tiles.pop_back();
      for (VertexId u : p) covered[u] = 0;
    }
    return false;
  };
  if (!solve(solve)) throw std::logic_error("no tiling of the trapped configuration exists");
  polymers.insert(polymers.end(), tiles.begin(), tiles.end());
  SystemState state(cfg, std::move(polymers));
  if (auto err = validate(state)) throw std::logic_error("trapped configuration is invalid: " + *err);
  return state;
}

void StateHistogram::add(const SystemState& state) {
  const auto s = space_->find(state);
  if (!s) throw std::logic_error("state not in the enumerated state space: " + snapshot_string(state));
  add_index(*s);
}

double chi_square_p_value(double statistic, double dof) {
  if (dof <= 0.0) return 1.0;
  const boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, std::max(0.0, statistic)));
}

DistanceReport distribution_distance(std::span<const std::uint64_t> counts, std::span<const double> target) {
  if (counts.size() != target.size()) throw std::invalid_argument("histogram and target differ in size");
  const double n = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  if (n == 0.0) throw std::invalid_argument("empty histogram");
  DistanceReport rep;
  for (std::size_t s = 0; s < counts.size(); ++s) {
    const double p = static_cast<double>(counts[s]) / n;
    rep.tv += std::abs(p - target[s]);
    if (target[s] > 0.0) {
      const double e = n * target[s];
      rep.chi2 += (static_cast<double>(counts[s]) - e) * (static_cast<double>(counts[s]) - e) / e;
    } else if (counts[s] > 0) {
      rep.chi2 = std::numeric_limits<double>::infinity();
    }
  }
  rep.tv *= 0.5;
  rep.dof = counts.empty() ? 0 : counts.size() - 1;
  rep.p_value = chi_square_p_value(rep.chi2, static_cast<double>(rep.dof));
  return rep;
}

DistanceReport distance_to_uniform(std::span<const std::uint64_t> counts) {
  const std::vector<double> target(counts.size(), 1.0 / static_cast<double>(counts.size()));
  return distribution_distance(counts, target);
}

DistanceReport two_sample_chi_square(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("histograms differ in size");
  const double na = static_cast<double>(std::accumulate(a.begin(), a.end(), std::uint64_t{0}));
  const double nb = static_cast<double>(std::accumulate(b.begin(), b.end(), std::uint64_t{0}));
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("empty histogram");
  DistanceReport rep;
  std::size_t bins = 0;
  for (std::size_t s = 0; s < a.size(); ++s) {
    const double x = static_cast<double>(a[s]);
    const double y = static_cast<double>(b[s]);
    rep.tv += std::abs(x / na - y / nb);
    if (x + y == 0.0) continue;
    ++bins;
    const double ea = (x + y) * na / (na + nb);
    const double eb = (x + y) * nb / (na + nb);
    rep.chi2 += (x - ea) * (x - ea) / ea + (y - eb) * (y - eb) / eb;
  }
  rep.tv *= 0.5;
  rep.dof = bins > 0 ? bins - 1 : 0;
  rep.p_value = chi_square_p_value(rep.chi2, static_cast<double>(rep.dof));
  return rep;
}

}  // namespace rgstar
