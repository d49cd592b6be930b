#include "graphflow/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "graphflow/rng.hpp"

namespace graphflow {

CategoricalGraph::CategoricalGraph(int n_nodes, int x_card, int e_card)
    : n_(n_nodes), x_card_(x_card), e_card_(e_card) {
  if (n_nodes < 0) throw std::invalid_argument("graph: negative node count");
  if (x_card < 1 || e_card < 1)
    throw std::invalid_argument("graph: cardinalities must be >= 1");
  node_states_.assign(n_, 0);
  edge_states_.assign(static_cast<std::size_t>(n_) * (n_ - 1) / 2, 0);
}

int CategoricalGraph::node(int i) const {
  if (i < 0 || i >= n_) throw std::out_of_range("graph: node index");
  return node_states_[i];
}

void CategoricalGraph::set_node(int i, int state) {
  if (i < 0 || i >= n_) throw std::out_of_range("graph: node index");
  if (state < 0 || state >= x_card_)
    throw std::invalid_argument("graph: node state out of range");
  node_states_[i] = state;
}

int CategoricalGraph::edge_slot(int i, int j) const {
  if (i == j) throw std::invalid_argument("graph: no (i,i) edge slot exists");
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n_) throw std::out_of_range("graph: edge index");
  // Row-major upper triangle: row i holds n-1-i slots.
  return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> CategoricalGraph::slot_pair(int slot) const {
  if (slot < 0 || slot >= n_edge_slots())
    throw std::out_of_range("graph: edge slot");
  int i = 0;
  while (slot >= n_ - 1 - i) {
    slot -= n_ - 1 - i;
    ++i;
  }
  return {i, i + 1 + slot};
}

int CategoricalGraph::edge(int i, int j) const {
  return edge_states_[edge_slot(i, j)];
}

void CategoricalGraph::set_edge(int i, int j, int state) {
  if (state < 0 || state >= e_card_)
    throw std::invalid_argument("graph: edge state out of range");
  edge_states_[edge_slot(i, j)] = state;
}

int CategoricalGraph::dim_state(int d) const {
  if (d < 0 || d >= dims()) throw std::out_of_range("graph: dimension index");
  return d < n_ ? node_states_[d] : edge_states_[d - n_];
}

void CategoricalGraph::set_dim_state(int d, int state) {
  if (d < 0 || d >= dims()) throw std::out_of_range("graph: dimension index");
  if (state < 0 || state >= dim_card(d))
    throw std::invalid_argument("graph: state out of range");
  if (d < n_)
    node_states_[d] = state;
  else
    edge_states_[d - n_] = state;
}

int CategoricalGraph::skeleton_degree(int i, int mask_state) const {
  int deg = 0;
  for (int j = 0; j < n_; ++j) {
    if (j == i) continue;
    const int s = edge(i, j);
    if (s != 0 && s != mask_state) ++deg;
  }
  return deg;
}

Permutation::Permutation(std::vector<int> mapping) : map_(std::move(mapping)) {
  std::vector<bool> seen(map_.size(), false);
  for (int v : map_) {
    if (v < 0 || v >= size() || seen[v])
      throw std::invalid_argument("permutation: mapping is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  return Permutation(std::move(m));
}

Permutation Permutation::random(int n, Rng& rng) {
  std::vector<int> m(n);
  std::iota(m.begin(), m.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(m[i], m[rng.uniform_int(i + 1)]);
  return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(map_.size());
  for (int i = 0; i < size(); ++i) inv[map_[i]] = i;
  return Permutation(std::move(inv));
}

void GraphDataset::validate() const {
  for (const auto& g : graphs) {
    if (g.x_card() != x_card || g.e_card() != e_card)
      throw std::invalid_argument("dataset: graphs disagree on cardinalities");
  }
  if (labels && labels->size() != graphs.size())
    throw std::invalid_argument("dataset: labels do not align with graphs");
}

std::vector<int> GraphDataset::node_counts() const {
  std::vector<int> counts;
  counts.reserve(graphs.size());
  for (const auto& g : graphs) counts.push_back(g.n_nodes());
  return counts;
}

ProbGraph ProbGraph::uniform(int n_nodes, int x_card, int e_card) {
  ProbGraph p;
  p.n_nodes = n_nodes;
  p.x_card = x_card;
  p.e_card = e_card;
  p.node_probs.assign(n_nodes, std::vector<double>(x_card, 1.0 / x_card));
  p.edge_probs.assign(static_cast<std::size_t>(n_nodes) * (n_nodes - 1) / 2,
                      std::vector<double>(e_card, 1.0 / e_card));
  return p;
}

std::span<const double> ProbGraph::dim_probs(int d) const {
  return d < n_nodes ? std::span<const double>(node_probs[d])
                     : std::span<const double>(edge_probs[d - n_nodes]);
}

std::vector<double>& ProbGraph::mutable_dim_probs(int d) {
  return d < n_nodes ? node_probs[d] : edge_probs[d - n_nodes];
}

void ProbGraph::validate(double tol) const {
  for (int d = 0; d < dims(); ++d) {
    double sum = 0.0;
    for (double v : dim_probs(d)) {
      if (v < 0.0) throw std::invalid_argument("prob graph: negative entry");
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
      throw std::invalid_argument("prob graph: simplex does not sum to 1");
  }
}

CategoricalGraph permute(const CategoricalGraph& g, const Permutation& sigma) {
  if (sigma.size() != g.n_nodes())
    throw std::invalid_argument("permute: size mismatch");
  const Permutation inv = sigma.inverse();
  CategoricalGraph out(g.n_nodes(), g.x_card(), g.e_card());
  for (int n = 0; n < g.n_nodes(); ++n) out.set_node(n, g.node(inv(n)));
  for (int i = 0; i < g.n_nodes(); ++i)
    for (int j = i + 1; j < g.n_nodes(); ++j)
      out.set_edge(i, j, g.edge(inv(i), inv(j)));
  return out;
}

ProbGraph permute(const ProbGraph& p, const Permutation& sigma) {
  if (sigma.size() != p.n_nodes)
    throw std::invalid_argument("permute: size mismatch");
  const Permutation inv = sigma.inverse();
  ProbGraph out = p;
  // Reuse the slot arithmetic of a throwaway graph with matching n.
  CategoricalGraph idx(p.n_nodes, 1, 1);
  for (int n = 0; n < p.n_nodes; ++n) out.node_probs[n] = p.node_probs[inv(n)];
  for (int i = 0; i < p.n_nodes; ++i)
    for (int j = i + 1; j < p.n_nodes; ++j)
      out.edge_probs[idx.edge_slot(i, j)] =
          p.edge_probs[idx.edge_slot(inv(i), inv(j))];
  return out;
}

namespace {

// Iterated 1-WL style refinement over (node state, incident relation
// profile), treating "no edge" as one more relation label so that edge
// states participate fully. Ids are assigned jointly across both graphs so
// they stay comparable.
std::pair<std::vector<long long>, std::vector<long long>> refine_colors(
    const CategoricalGraph& a, const CategoricalGraph& b) {
  const int na = a.n_nodes();
  const int nb = b.n_nodes();
  std::vector<long long> ca(na), cb(nb);
  for (int i = 0; i < na; ++i) ca[i] = a.node(i);
  for (int i = 0; i < nb; ++i) cb[i] = b.node(i);

  auto signature = [](const CategoricalGraph& g,
                      const std::vector<long long>& color, int i) {
    std::vector<long long> sig{color[i]};
    std::vector<std::pair<int, long long>> rel;
    rel.reserve(g.n_nodes() - 1);
    for (int j = 0; j < g.n_nodes(); ++j)
      if (j != i) rel.emplace_back(g.edge(i, j), color[j]);
    std::sort(rel.begin(), rel.end());
    for (auto& [es, c] : rel) {
      sig.push_back(es);
      sig.push_back(c);
    }
    return sig;
  };

  for (int round = 0; round < na + 1; ++round) {
    std::map<std::vector<long long>, long long> ids;
    auto id_of = [&ids](std::vector<long long> sig) {
      auto [it, _] = ids.emplace(std::move(sig), static_cast<long long>(ids.size()));
      return it->second;
    };
    std::vector<long long> next_a(na), next_b(nb);
    for (int i = 0; i < na; ++i) next_a[i] = id_of(signature(a, ca, i));
    for (int i = 0; i < nb; ++i) next_b[i] = id_of(signature(b, cb, i));
    if (next_a == ca && next_b == cb) break;
    ca = std::move(next_a);
    cb = std::move(next_b);
  }
  return {ca, cb};
}

bool extend_mapping(const CategoricalGraph& a, const CategoricalGraph& b,
                    const std::vector<long long>& ca,
                    const std::vector<long long>& cb, std::vector<int>& image,
                    std::vector<bool>& used, int v) {
  const int n = a.n_nodes();
  if (v == n) return true;
  for (int u = 0; u < n; ++u) {
    if (used[u] || cb[u] != ca[v]) continue;
    bool ok = a.node(v) == b.node(u);
    for (int w = 0; ok && w < v; ++w)
      ok = a.edge(v, w) == b.edge(u, image[w]);
    if (!ok) continue;
    image[v] = u;
    used[u] = true;
    if (extend_mapping(a, b, ca, cb, image, used, v + 1)) return true;
    used[u] = false;
  }
  return false;
}

}  // namespace

bool are_isomorphic(const CategoricalGraph& a, const CategoricalGraph& b,
                    int cap) {
  if (a.x_card() != b.x_card() || a.e_card() != b.e_card())
    throw std::invalid_argument("are_isomorphic: cardinality mismatch");
  if (a.n_nodes() > cap || b.n_nodes() > cap)
    throw std::invalid_argument("are_isomorphic: graph too large (cap " +
                                std::to_string(cap) + ")");
  if (a.n_nodes() != b.n_nodes()) return false;

  const auto [ca, cb] = refine_colors(a, b);
  auto hist = [](std::vector<long long> c) {
    std::sort(c.begin(), c.end());
    return c;
  };
  if (hist(ca) != hist(cb)) return false;

  std::vector<int> image(a.n_nodes(), -1);
  std::vector<bool> used(a.n_nodes(), false);
  return extend_mapping(a, b, ca, cb, image, used, 0);
}

}  // namespace graphflow
