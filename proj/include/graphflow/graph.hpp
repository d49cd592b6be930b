#pragma once

#include <optional>
#include <span>
#include <vector>

namespace graphflow {

class Rng;

/// Undirected graph over categorical states: node states in [0, X), edge
/// states in [0, E) stored strictly upper-triangular, with edge state 0
/// reserved for "no edge". Total dimension count D = N + N(N-1)/2.
class CategoricalGraph {
 public:
  CategoricalGraph(int n_nodes, int x_card, int e_card);

  int n_nodes() const { return n_; }
  int x_card() const { return x_card_; }
  int e_card() const { return e_card_; }
  int n_edge_slots() const { return static_cast<int>(edge_states_.size()); }
  int dims() const { return n_ + n_edge_slots(); }

  int node(int i) const;
  void set_node(int i, int state);

  /// Edge state between distinct nodes i and j, in either index order.
  int edge(int i, int j) const;
  void set_edge(int i, int j, int state);

  /// Upper-triangular slot index of the unordered pair {i, j}.
  int edge_slot(int i, int j) const;
  /// Inverse of edge_slot: the pair (i, j) with i < j stored at `slot`.
  std::pair<int, int> slot_pair(int slot) const;

  // Flat view over all D dimensions: d < N addresses node d, the rest
  // address edge slots in upper-triangular order.
  int dim_state(int d) const;
  void set_dim_state(int d, int state);
  int dim_card(int d) const { return d < n_ ? x_card_ : e_card_; }

  std::span<const int> node_states() const { return node_states_; }
  std::span<const int> edge_states() const { return edge_states_; }

  /// Degree in the binary skeleton (edge state != 0, optionally also
  /// excluding `mask_state`).
  int skeleton_degree(int i, int mask_state = -1) const;

  bool operator==(const CategoricalGraph&) const = default;

 private:
  int n_;
  int x_card_;
  int e_card_;
  std::vector<int> node_states_;
  std::vector<int> edge_states_;
};

/// Bijection on [0, N).
class Permutation {
 public:
  explicit Permutation(std::vector<int> mapping);
  static Permutation identity(int n);
  static Permutation random(int n, Rng& rng);

  int size() const { return static_cast<int>(map_.size()); }
  int operator()(int i) const { return map_[i]; }
  Permutation inverse() const;

 private:
  std::vector<int> map_;
};

struct GraphDataset {
  int x_card = 0;
  int e_card = 0;
  std::vector<CategoricalGraph> graphs;
  std::optional<std::vector<int>> labels;

  /// Throws if cardinalities disagree or labels do not align 1:1.
  void validate() const;
  std::vector<int> node_counts() const;
};

/// Per-dimension probability simplexes, the shape of p_{1|t} predictions.
/// Simplex cardinalities may be narrower than the carrier graph's when a
/// masking source state is in play (the mask is never predicted).
struct ProbGraph {
  int n_nodes = 0;
  int x_card = 0;
  int e_card = 0;
  std::vector<std::vector<double>> node_probs;
  std::vector<std::vector<double>> edge_probs;

  static ProbGraph uniform(int n_nodes, int x_card, int e_card);

  int n_edge_slots() const { return static_cast<int>(edge_probs.size()); }
  int dims() const { return n_nodes + n_edge_slots(); }
  std::span<const double> dim_probs(int d) const;
  std::vector<double>& mutable_dim_probs(int d);

  /// Throws unless every simplex is non-negative and sums to 1 within tol.
  void validate(double tol = 1e-9) const;
};

/// Relabels nodes: node n of the output is node sigma^{-1}(n) of the input.
CategoricalGraph permute(const CategoricalGraph& g, const Permutation& sigma);
ProbGraph permute(const ProbGraph& p, const Permutation& sigma);

/// Exact isomorphism over node and edge labels, by color refinement plus
/// backtracking. Throws for graphs larger than `cap` nodes rather than
/// risking a wrong answer.
bool are_isomorphic(const CategoricalGraph& a, const CategoricalGraph& b,
                    int cap = 12);

}  // namespace graphflow
