#include "graphflow/sampling.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace graphflow {

namespace {

std::vector<double> guided_simplex(std::span<const double> cond,
                                   std::span<const double> uncond,
                                   double gamma) {
  const int n = static_cast<int>(cond.size());
  std::vector<double> out(n, 0.0);
  bool any_inf = false;
  for (int i = 0; i < n; ++i) {
    // log-space blend; 0^0 counts as 1 so the gamma in {0,1} endpoints are
    // exact even on zero entries.
    double lg = 0.0;
    if (gamma != 0.0)
      lg += gamma * (cond[i] > 0.0 ? std::log(cond[i])
                                   : -std::numeric_limits<double>::infinity());
    if (gamma != 1.0)
      lg += (1.0 - gamma) *
            (uncond[i] > 0.0 ? std::log(uncond[i])
                             : -std::numeric_limits<double>::infinity());
    if (std::isnan(lg)) lg = -std::numeric_limits<double>::infinity();
    out[i] = lg;
    if (lg == std::numeric_limits<double>::infinity()) any_inf = true;
  }
  if (any_inf) {
    // gamma > 1 against a zero unconditional entry: mass collapses there.
    double count = 0.0;
    for (double& v : out) {
      v = (v == std::numeric_limits<double>::infinity()) ? 1.0 : 0.0;
      count += v;
    }
    for (double& v : out) v /= count;
    return out;
  }
  double max_lg = -std::numeric_limits<double>::infinity();
  for (double v : out) max_lg = std::max(max_lg, v);
  if (max_lg == -std::numeric_limits<double>::infinity())
    throw std::invalid_argument(
        "guided_posterior: some dimension is zero everywhere");
  double total = 0.0;
  for (double& v : out) {
    v = std::exp(v - max_lg);
    total += v;
  }
  for (double& v : out) v /= total;
  return out;
}

}  // namespace

ProbGraph guided_posterior(const ProbGraph& cond, const ProbGraph& uncond,
                           double gamma) {
  if (cond.n_nodes != uncond.n_nodes || cond.x_card != uncond.x_card ||
      cond.e_card != uncond.e_card)
    throw std::invalid_argument("guided_posterior: shape mismatch");
  if (gamma < 0.0) throw std::invalid_argument("guided_posterior: gamma < 0");
  if (gamma == 1.0) return cond;
  if (gamma == 0.0) return uncond;
  ProbGraph out = cond;
  for (int d = 0; d < cond.dims(); ++d)
    out.mutable_dim_probs(d) =
        guided_simplex(cond.dim_probs(d), uncond.dim_probs(d), gamma);
  return out;
}

CategoricalGraph sample_one(const Denoiser& denoiser,
                            const InitialDistribution& dist, int n_nodes,
                            const SampleConfig& cfg, Rng& rng) {
  CategoricalGraph g = sample_initial(dist, n_nodes, rng);
  const auto schedule = step_schedule(cfg.sample_distortion, cfg.n_steps);
  for (const auto& [t, dt] : schedule) {
    ProbGraph posterior = denoiser.posterior(g, t, cfg.label);
    if (cfg.label && cfg.gamma != 1.0)
      posterior = guided_posterior(posterior, denoiser.posterior(g, t, {}),
                                   cfg.gamma);
    g = euler_step(g, posterior, dist, t, dt, cfg.rate, rng);
  }
  if (!dist.masking()) return g;
  // Re-card to the base state space; the final posterior draw cannot land
  // on the mask state.
  CategoricalGraph out(n_nodes, dist.x_card, dist.e_card);
  for (int d = 0; d < g.dims(); ++d) out.set_dim_state(d, g.dim_state(d));
  return out;
}

std::vector<CategoricalGraph> sample(const Denoiser& denoiser,
                                     const InitialDistribution& dist,
                                     std::span<const int> train_node_counts,
                                     const SampleConfig& cfg, int n_graphs) {
  if (train_node_counts.empty())
    throw std::invalid_argument("sample: empty node-count histogram");
  Rng master(cfg.seed);
  std::vector<CategoricalGraph> out;
  out.reserve(n_graphs);
  for (int i = 0; i < n_graphs; ++i) {
    Rng rng = master.substream(i);
    const int n = train_node_counts[rng.uniform_int(
        static_cast<int>(train_node_counts.size()))];
    out.push_back(sample_one(denoiser, dist, n, cfg, rng));
  }
  return out;
}

}  // namespace graphflow
