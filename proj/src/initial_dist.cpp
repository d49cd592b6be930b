#include "graphflow/initial_dist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphflow {

InitKind init_kind_from_string(const std::string& name) {
  if (name == "uniform") return InitKind::kUniform;
  if (name == "masking") return InitKind::kMasking;
  if (name == "marginal") return InitKind::kMarginal;
  if (name == "absorbing") return InitKind::kAbsorbing;
  throw std::invalid_argument("unknown initial distribution: " + name);
}

std::string to_string(InitKind kind) {
  switch (kind) {
    case InitKind::kUniform: return "uniform";
    case InitKind::kMasking: return "masking";
    case InitKind::kMarginal: return "marginal";
    case InitKind::kAbsorbing: return "absorbing";
  }
  return "?";
}

void InitialDistribution::validate() const {
  for (const auto* v : {&node_p0, &edge_p0}) {
    double sum = 0.0;
    for (double p : *v) {
      if (p < 0.0) throw std::invalid_argument("p0: negative entry");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw std::invalid_argument("p0: simplex does not sum to 1");
  }
}

namespace {

std::vector<double> marginal_counts_nodes(const GraphDataset& ds) {
  std::vector<double> counts(ds.x_card, 0.0);
  for (const auto& g : ds.graphs)
    for (int s : g.node_states()) counts[s] += 1.0;
  return counts;
}

std::vector<double> marginal_counts_edges(const GraphDataset& ds) {
  std::vector<double> counts(ds.e_card, 0.0);
  for (const auto& g : ds.graphs)
    for (int s : g.edge_states()) counts[s] += 1.0;
  return counts;
}

std::vector<double> normalize(std::vector<double> v) {
  double total = 0.0;
  for (double x : v) total += x;
  if (!(total > 0.0))
    throw std::invalid_argument("build_initial: empty dataset");
  for (double& x : v) x /= total;
  return v;
}

std::vector<double> one_hot(int size, int index) {
  std::vector<double> v(size, 0.0);
  v[index] = 1.0;
  return v;
}

int argmax_lowest_tie(const std::vector<double>& v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

InitialDistribution build_initial(InitKind kind, int x_card, int e_card,
                                  const GraphDataset* dataset) {
  if (x_card < 1 || e_card < 1)
    throw std::invalid_argument("build_initial: cardinalities must be >= 1");
  InitialDistribution dist;
  dist.kind = kind;
  dist.x_card = x_card;
  dist.e_card = e_card;
  switch (kind) {
    case InitKind::kUniform:
      dist.node_p0.assign(x_card, 1.0 / x_card);
      dist.edge_p0.assign(e_card, 1.0 / e_card);
      break;
    case InitKind::kMasking:
      dist.node_p0 = one_hot(x_card + 1, x_card);
      dist.edge_p0 = one_hot(e_card + 1, e_card);
      break;
    case InitKind::kMarginal: {
      if (!dataset || dataset->graphs.empty())
        throw std::invalid_argument("build_initial: marginal needs a dataset");
      dist.node_p0 = normalize(marginal_counts_nodes(*dataset));
      dist.edge_p0 = normalize(marginal_counts_edges(*dataset));
      break;
    }
    case InitKind::kAbsorbing: {
      if (!dataset || dataset->graphs.empty())
        throw std::invalid_argument("build_initial: absorbing needs a dataset");
      // std::max_element keeps the first maximum, so ties break low.
      dist.node_p0 = one_hot(x_card, argmax_lowest_tie(marginal_counts_nodes(*dataset)));
      dist.edge_p0 = one_hot(e_card, argmax_lowest_tie(marginal_counts_edges(*dataset)));
      break;
    }
  }
  dist.validate();
  return dist;
}

CategoricalGraph sample_initial(const InitialDistribution& dist, int n_nodes,
                                Rng& rng) {
  if (n_nodes < 1) throw std::invalid_argument("sample_initial: n_nodes >= 1");
  dist.validate();
  CategoricalGraph g(n_nodes, dist.node_state_count(), dist.edge_state_count());
  for (int i = 0; i < n_nodes; ++i) g.set_node(i, rng.categorical(dist.node_p0));
  for (int i = 0; i < n_nodes; ++i)
    for (int j = i + 1; j < n_nodes; ++j)
      g.set_edge(i, j, rng.categorical(dist.edge_p0));
  return g;
}

}  // namespace graphflow
