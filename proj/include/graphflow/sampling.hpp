#pragma once

#include <optional>
#include <span>
#include <vector>

#include "graphflow/ctmc.hpp"
#include "graphflow/denoiser.hpp"
#include "graphflow/distortion.hpp"
#include "graphflow/graph.hpp"
#include "graphflow/initial_dist.hpp"

namespace graphflow {

struct SampleConfig {
  int n_steps = 256;
  DistortionKind sample_distortion = DistortionKind::kIdentity;
  RateConfig rate;
  double gamma = 1.0;            // guidance weight for conditional runs
  std::optional<int> label;      // conditioning class, if any
  std::uint64_t seed = 0;
};

/// Geometric composition of conditional and unconditional predictions,
/// per-dimension: entries ~ cond^gamma * uncond^(1-gamma), renormalized.
/// gamma=1 returns cond, gamma=0 returns uncond; zeros stay zero.
ProbGraph guided_posterior(const ProbGraph& cond, const ProbGraph& uncond,
                           double gamma);

/// One full denoising trajectory: G_0 ~ p0, then an Euler step per schedule
/// entry, with the posterior re-predicted at every step.
CategoricalGraph sample_one(const Denoiser& denoiser,
                            const InitialDistribution& dist, int n_nodes,
                            const SampleConfig& cfg, Rng& rng);

/// Draws node counts from the empirical histogram `train_node_counts` and
/// generates `n_graphs` independently. Per-graph rng substreams are derived
/// from cfg.seed, so results do not depend on generation order.
std::vector<CategoricalGraph> sample(const Denoiser& denoiser,
                                     const InitialDistribution& dist,
                                     std::span<const int> train_node_counts,
                                     const SampleConfig& cfg, int n_graphs);

}  // namespace graphflow
