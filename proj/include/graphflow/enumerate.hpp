#pragma once

#include <vector>

#include "graphflow/denoiser.hpp"
#include "graphflow/graph.hpp"
#include "graphflow/initial_dist.hpp"
#include "graphflow/sampling.hpp"

namespace graphflow {

/// The full generated distribution over every joint graph state, pushed
/// through the exact per-dimension Euler kernels (no Monte Carlo anywhere),
/// plus its total variation distance to the dataset's empirical law.
struct EnumeratedDistribution {
  int n_nodes = 0;
  int x_card = 0;  // carrier cardinalities (mask included when masking)
  int e_card = 0;
  std::vector<double> probs;  // indexed by joint code, see encode/decode
  double tv_to_dataset = 0.0;
};

/// Mixed-radix coding of joint states: nodes first, then edge slots, least
/// significant dimension first.
std::size_t encode_graph(const CategoricalGraph& g);
CategoricalGraph decode_graph(std::size_t code, int n_nodes, int x_card,
                              int e_card);

/// Starts from the exact p0 product distribution and multiplies by the
/// per-dimension Euler transition kernel of every scheduled step, with the
/// posterior expectation computed exactly. The state space
/// x_card^N * e_card^(N(N-1)/2) must not exceed 2^16. The dataset slice
/// with matching node count provides the reference law for the TV.
EnumeratedDistribution exact_generated_distribution(
    const Denoiser& denoiser, const InitialDistribution& dist, int n_nodes,
    const GraphDataset& dataset, const SampleConfig& cfg);

}  // namespace graphflow
