#include "rgstar/underlying_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

namespace rgstar {

DegreeLaw DegreeLaw::fixed(int k, int q) {
  if (q < 2) throw std::invalid_argument("coordination number must be >= 2");
  if (k < 1 || k > q)
    throw std::invalid_argument("out-degree k must lie in [1, Q=" + std::to_string(q) + "], got " + std::to_string(k));
  DegreeLaw law;
  law.q_ = q;
  law.fixed_k_ = k;
  law.p_.assign(static_cast<std::size_t>(q) + 1, 0.0);
  law.p_[k] = 1.0;
  return law;
}

DegreeLaw DegreeLaw::extended(std::vector<double> p) {
  if (p.size() < 2) throw std::invalid_argument("degree distribution needs Q >= 2 entries p_1..p_Q");
  double total = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw std::invalid_argument("degree probabilities must be non-negative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("degree probabilities must sum to 1");
  DegreeLaw law;
  law.q_ = static_cast<int>(p.size());
  law.p_.assign(1, 0.0);
  law.p_.insert(law.p_.end(), p.begin(), p.end());
  return law;
}

double DegreeLaw::p(int kappa) const {
  if (kappa < 1 || kappa > q_) return 0.0;
  return p_[kappa];
}

Rational DegreeLaw::p_exact(int kappa) const {
  const double x = p(kappa);
  if (x == 0.0) return Rational(0);
  if (x == 1.0) return Rational(1);
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  Rational r(scaled);
  const int shift = 53 - exponent;
  BigInt den = 1;
  den <<= shift;
  return r / Rational(den);
}

double DegreeLaw::mean_degree() const {
  double m = 0.0;
  for (int kappa = 1; kappa <= q_; ++kappa) m += kappa * p_[kappa];
  return m;
}

bool DegreeLaw::degenerate() const {
  if (is_fixed()) return true;
  return std::count_if(p_.begin(), p_.end(), [](double x) { return x > 0.0; }) == 1;
}

UnderlyingGraph::UnderlyingGraph(const Lattice& lattice)
    : q_(lattice.coordination()),
      degree_(lattice.vertex_count(), -1),
      edges_(static_cast<std::size_t>(lattice.vertex_count()) * lattice.coordination()) {}

void UnderlyingGraph::reset(VertexId root) {
  for (VertexId v : order_) degree_[v] = -1;
  order_.clear();
  root_ = root;
}

void UnderlyingGraph::assign(VertexId v, std::span<const VertexId> targets) {
  if (degree_[v] >= 0) throw std::logic_error("vertex already has out-edges");
  if (static_cast<int>(targets.size()) > q_) throw std::logic_error("too many out-edges");
  std::copy(targets.begin(), targets.end(), edges_.begin() + static_cast<std::ptrdiff_t>(v) * q_);
  degree_[v] = static_cast<int>(targets.size());
  order_.push_back(v);
}

bool UnderlyingGraph::has_edge(VertexId from, VertexId to) const {
  const auto e = out_edges(from);
  return std::find(e.begin(), e.end(), to) != e.end();
}

std::vector<std::size_t> UnderlyingGraph::degree_counts() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(q_) + 1, 0);
  for (VertexId v : order_) ++counts[degree_[v]];
  return counts;
}

std::vector<VertexId> UnderlyingGraph::canonical_form() const {
  std::vector<VertexId> vs = order_;
  std::sort(vs.begin(), vs.end());
  std::vector<VertexId> out{root_};
  for (VertexId v : vs) {
    out.push_back(v);
    out.push_back(static_cast<VertexId>(degree_[v]));
    const auto e = out_edges(v);
    std::vector<VertexId> sorted(e.begin(), e.end());
    std::sort(sorted.begin(), sorted.end());
    out.insert(out.end(), sorted.begin(), sorted.end());
  }
  return out;
}

bool UnderlyingGraph::is_complete() const {
  if (order_.empty() || degree_[root_] < 0) return false;
  std::vector<char> seen(degree_.size(), 0);
  std::vector<VertexId> stack{root_};
  seen[root_] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    if (degree_[v] < 0) return false;
    ++reached;
    for (VertexId u : out_edges(v))
      if (!seen[u]) {
        seen[u] = 1;
        stack.push_back(u);
      }
  }
  return reached == order_.size();
}

Polymer orient_from_root(VertexId root, std::span<const VertexId> c) {
  if (c.empty()) return {};
  if (c.front() == root) return Polymer(c.begin(), c.end());
  if (c.back() == root) return Polymer(c.rbegin(), c.rend());
  return {};
}

std::uint64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  std::uint64_t b = 1;
  for (int i = 1; i <= r; ++i) b = b * static_cast<std::uint64_t>(n - r + i) / static_cast<std::uint64_t>(i);
  return b;
}

CombinatorialConstants CombinatorialConstants::make(int q, int k, int length, std::uint64_t gamma) {
  CombinatorialConstants c;
  c.q = q;
  c.k = k;
  c.length = length;
  c.gamma = gamma;
  c.alpha_i.assign(static_cast<std::size_t>(q) + 1, Rational(0));
  c.beta_i.assign(static_cast<std::size_t>(q) + 1, Rational(0));
  for (int i = 1; i <= q; ++i) {
    c.alpha_i[i] = Rational(1) / Rational(binomial(q, i));
    c.beta_i[i] = Rational(1) / Rational(binomial(q - 1, i - 1));
  }
  if (k >= 1) {
    c.alpha = c.alpha_i[k];
    c.beta = c.beta_i[k];
    Rational ratio = 1;
    for (int i = 0; i + 1 < length; ++i) ratio *= c.beta / c.alpha;
    c.eta = Rational(gamma) / 2 * ratio;
  }
  return c;
}

double log_prob_u(const UnderlyingGraph& graph, const DegreeLaw& law, std::uint64_t gamma) {
  const int q = law.coordination();
  double lp = -std::log(static_cast<double>(gamma));
  const auto counts = graph.degree_counts();
  for (int i = 0; i <= q && i < static_cast<int>(counts.size()); ++i) {
    if (counts[i] == 0) continue;
    const double pi = law.p(i);
    if (pi <= 0.0) return -std::numeric_limits<double>::infinity();
    lp += static_cast<double>(counts[i]) * (std::log(pi) - std::log(static_cast<double>(binomial(q, i))));
  }
  return lp;
}

Rational prob_u_exact(const UnderlyingGraph& graph, const DegreeLaw& law, std::uint64_t gamma) {
  const int q = law.coordination();
  Rational pr = Rational(1) / Rational(gamma);
  const auto counts = graph.degree_counts();
  for (int i = 0; i < static_cast<int>(counts.size()); ++i) {
    if (counts[i] == 0) continue;
    const Rational factor = law.p_exact(i) / Rational(binomial(q, i));
    if (factor == 0) return Rational(0);
    for (std::size_t t = 0; t < counts[i]; ++t) pr *= factor;
  }
  return pr;
}

double log_prob_c(const UnderlyingGraph& graph, std::span<const VertexId> c, const DegreeLaw& law,
                  std::uint64_t gamma) {
  if (!is_compatible(graph, c)) return -std::numeric_limits<double>::infinity();
  const int q = law.coordination();
  const auto l = static_cast<double>(c.size());
  if (law.is_fixed()) {
    const int k = law.fixed_k();
    const double log_alpha = -std::log(static_cast<double>(binomial(q, k)));
    const double log_beta = -std::log(static_cast<double>(binomial(q - 1, k - 1)));
    return (static_cast<double>(graph.size()) - l + 1) * log_alpha + (l - 1) * log_beta - std::log(2.0);
  }
  const double lpu = log_prob_u(graph, law, gamma);
  return std::log(static_cast<double>(gamma)) + (l - 1) * std::log(static_cast<double>(q)) - std::log(2.0) + lpu -
         std::log(static_cast<double>(weight_w0(graph, c)));
}

Rational prob_c_exact(const UnderlyingGraph& graph, std::span<const VertexId> c, const DegreeLaw& law,
                      std::uint64_t gamma) {
  if (!is_compatible(graph, c)) return Rational(0);
  const int q = law.coordination();
  const std::size_t l = c.size();
  if (law.is_fixed()) {
    const auto k = CombinatorialConstants::make(q, law.fixed_k(), static_cast<int>(l), gamma);
    Rational pr = Rational(1) / 2;
    for (std::size_t t = 0; t + l - 1 < graph.size(); ++t) pr *= k.alpha;
    for (std::size_t t = 0; t + 1 < l; ++t) pr *= k.beta;
    return pr;
  }
  Rational scale = Rational(gamma) / 2;
  for (std::size_t t = 0; t + 1 < l; ++t) scale *= q;
  return scale * prob_u_exact(graph, law, gamma) / Rational(weight_w0(graph, c));
}

Rational prob_c_direct(const UnderlyingGraph& graph, std::span<const VertexId> c, const DegreeLaw& law) {
  const Polymer oriented = orient_from_root(graph.root(), c);
  if (oriented.empty() || !is_compatible(graph, c)) return Rational(0);
  const int q = law.coordination();
  std::vector<char> on_path(graph.lattice_size(), 0);
  for (std::size_t i = 0; i + 1 < oriented.size(); ++i) on_path[oriented[i]] = 1;
  Rational pr = Rational(1) / 2;
  for (VertexId v : graph.vertices()) {
    const int d = graph.out_degree(v);
    const std::uint64_t ways = on_path[v] ? binomial(q - 1, d - 1) : binomial(q, d);
    pr *= law.p_exact(d) / Rational(ways);
  }
  return pr;
}

void write_graph_dump(std::ostream& out, const UnderlyingGraph& graph) {
  for (VertexId v : graph.vertices()) {
    out << v << (v == graph.root() ? "*" : "") << ':';
    for (VertexId u : graph.out_edges(v)) out << ' ' << u;
    out << '\n';
  }
}

}  // namespace rgstar
