#include "graphflow/enumerate.hpp"

#include <cmath>
#include <stdexcept>

#include "graphflow/ctmc.hpp"
#include "graphflow/distortion.hpp"

namespace graphflow {

std::size_t encode_graph(const CategoricalGraph& g) {
  std::size_t code = 0;
  for (int d = g.dims() - 1; d >= 0; --d)
    code = code * g.dim_card(d) + g.dim_state(d);
  return code;
}

CategoricalGraph decode_graph(std::size_t code, int n_nodes, int x_card,
                              int e_card) {
  CategoricalGraph g(n_nodes, x_card, e_card);
  for (int d = 0; d < g.dims(); ++d) {
    const int card = g.dim_card(d);
    g.set_dim_state(d, static_cast<int>(code % card));
    code /= card;
  }
  return g;
}

EnumeratedDistribution exact_generated_distribution(
    const Denoiser& denoiser, const InitialDistribution& dist, int n_nodes,
    const GraphDataset& dataset, const SampleConfig& cfg) {
  const int xc = dist.node_state_count();
  const int ec = dist.edge_state_count();
  const int n_edges = n_nodes * (n_nodes - 1) / 2;
  double size = 1.0;
  for (int i = 0; i < n_nodes; ++i) size *= xc;
  for (int i = 0; i < n_edges; ++i) size *= ec;
  if (size > 65536.0)
    throw std::invalid_argument("exact enumeration: state space too large");
  const std::size_t n_states = static_cast<std::size_t>(size);
  const int dims = n_nodes + n_edges;

  EnumeratedDistribution result;
  result.n_nodes = n_nodes;
  result.x_card = xc;
  result.e_card = ec;

  // Exact product law of p0.
  std::vector<double> probs(n_states, 0.0);
  for (std::size_t s = 0; s < n_states; ++s) {
    const CategoricalGraph g = decode_graph(s, n_nodes, xc, ec);
    double p = 1.0;
    for (int d = 0; d < dims; ++d) {
      const auto& p0 = d < n_nodes ? dist.node_p0 : dist.edge_p0;
      p *= p0[g.dim_state(d)];
    }
    probs[s] = p;
  }

  RateConfig rate = cfg.rate;
  rate.exact_expectation = true;  // the kernel itself, not a draw from it

  const auto schedule = step_schedule(cfg.sample_distortion, cfg.n_steps);
  std::vector<double> next(n_states, 0.0);
  std::vector<std::vector<double>> vecs(dims);
  for (const auto& [t, dt] : schedule) {
    const bool final_step = t + dt >= 1.0 - 1e-12;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t s = 0; s < n_states; ++s) {
      if (probs[s] <= 0.0) continue;
      const CategoricalGraph g = decode_graph(s, n_nodes, xc, ec);
      ProbGraph posterior = denoiser.posterior(g, t, cfg.label);
      if (cfg.label && cfg.gamma != 1.0)
        posterior = guided_posterior(posterior, denoiser.posterior(g, t, {}),
                                     cfg.gamma);
      for (int d = 0; d < dims; ++d) {
        const auto post = posterior.dim_probs(d);
        if (final_step) {
          // Last step lands on the clean prediction; embed the posterior
          // into the carrier space (mask entries stay zero).
          auto& v = vecs[d];
          v.assign(g.dim_card(d), 0.0);
          for (int z = 0; z < static_cast<int>(post.size()); ++z)
            v[z] = post[z];
        } else {
          const auto& p0 = d < n_nodes ? dist.node_p0 : dist.edge_p0;
          vecs[d] = euler_transition_vector(g.dim_state(d), post, p0, t, dt,
                                            rate, nullptr);
        }
      }
      // Distribute p[s] over all successor states, one dimension at a time.
      std::vector<std::pair<std::size_t, double>> frontier{{0, probs[s]}};
      std::vector<std::pair<std::size_t, double>> grown;
      std::size_t radix = 1;
      for (int d = 0; d < dims; ++d) {
        grown.clear();
        for (const auto& [code, mass] : frontier)
          for (int z = 0; z < static_cast<int>(vecs[d].size()); ++z) {
            if (vecs[d][z] <= 0.0) continue;
            grown.emplace_back(code + radix * z, mass * vecs[d][z]);
          }
        frontier.swap(grown);
        radix *= vecs[d].size();
      }
      for (const auto& [code, mass] : frontier) next[code] += mass;
    }
    probs.swap(next);
  }

  // Empirical law of the dataset slice with this node count.
  std::vector<double> data_probs(n_states, 0.0);
  int atoms = 0;
  for (const auto& g1 : dataset.graphs) {
    if (g1.n_nodes() != n_nodes) continue;
    // Base states embed into the carrier space unchanged.
    CategoricalGraph carrier(n_nodes, xc, ec);
    for (int d = 0; d < g1.dims(); ++d)
      carrier.set_dim_state(d, g1.dim_state(d));
    data_probs[encode_graph(carrier)] += 1.0;
    ++atoms;
  }
  if (atoms == 0)
    throw std::invalid_argument("exact enumeration: no dataset graph with matching size");
  for (double& p : data_probs) p /= atoms;

  double tv = 0.0;
  for (std::size_t s = 0; s < n_states; ++s)
    tv += std::abs(probs[s] - data_probs[s]);
  result.probs = std::move(probs);
  result.tv_to_dataset = 0.5 * tv;
  return result;
}

}  // namespace graphflow
