#include "graphflow/training.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "graphflow/ctmc.hpp"

namespace graphflow {

double ce_lambda(const CategoricalGraph& g1, const ProbGraph& pred,
                 double lambda) {
  if (pred.n_nodes != g1.n_nodes() || pred.dims() != g1.dims())
    throw std::invalid_argument("ce_lambda: shape mismatch");
  double ce = 0.0;
  for (int n = 0; n < g1.n_nodes(); ++n)
    ce -= std::log(std::max(pred.node_probs[n][g1.node(n)], 1e-30));
  for (int slot = 0; slot < g1.n_edge_slots(); ++slot) {
    const auto [i, j] = g1.slot_pair(slot);
    ce -= lambda * std::log(std::max(pred.edge_probs[slot][g1.edge(i, j)], 1e-30));
  }
  return ce;
}

TrainResult train(const GraphDataset& dataset, const TrainConfig& cfg,
                  Rng& rng) {
  dataset.validate();
  if (dataset.graphs.empty()) throw std::invalid_argument("train: empty dataset");
  if (cfg.conditional && !dataset.labels)
    throw std::invalid_argument("train: conditional run needs labels");
  if (cfg.label_drop < 0.0 || cfg.label_drop > 1.0)
    throw std::invalid_argument("train: label_drop outside [0,1]");

  TrainResult result;
  result.initial = build_initial(cfg.initial_distribution, dataset.x_card,
                                 dataset.e_card, &dataset);

  DenoiserParams::Dims dims;
  dims.x_card = dataset.x_card;
  dims.e_card = dataset.e_card;
  dims.label_card = 0;
  if (cfg.conditional)
    dims.label_card =
        1 + *std::max_element(dataset.labels->begin(), dataset.labels->end());
  dims.rrwp_depth = cfg.rrwp_depth;
  dims.hidden = cfg.hidden;
  dims.masking = result.initial.masking();

  DenoiserParams params(dims);
  {
    // Separate init stream: label blocks sit at the tail of theta, so an
    // unconditional run and a conditional one share the same prefix draws.
    Rng init_rng = rng.substream(0x1817);
    params.init_random(init_rng, cfg.init_scale);
  }
  DenoiserParams grads(dims);
  std::vector<double> velocity(params.size(), 0.0);

  if (cfg.draws_per_graph < 1)
    throw std::invalid_argument("train: draws_per_graph >= 1");
  const int n_graphs = static_cast<int>(dataset.graphs.size());
  // One epoch visits every graph draws_per_graph times, each visit with a
  // freshly drawn t' and noised view.
  std::vector<int> order;
  for (int rep = 0; rep < cfg.draws_per_graph; ++rep)
    for (int g = 0; g < n_graphs; ++g) order.push_back(g);
  const int n_visits = static_cast<int>(order.size());

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (int i = n_visits - 1; i > 0; --i)
      std::swap(order[i], order[rng.uniform_int(i + 1)]);
    double epoch_ce = 0.0;
    int epoch_count = 0;
    for (int start = 0; start < n_visits; start += cfg.batch_size) {
      std::vector<TrainBatchItem> batch;
      const int stop = std::min(start + cfg.batch_size, n_visits);
      for (int b = start; b < stop; ++b) {
        const auto& g1 = dataset.graphs[order[b]];
        const double t = distort(cfg.train_distortion, rng.uniform());
        result.sampled_times.push_back(t);
        TrainBatchItem item{g1, noise_graph(g1, result.initial, t, rng), t, {}};
        // The drop draw is consumed in every mode so conditional and
        // unconditional runs see identical rng streams.
        const double drop_u = rng.uniform();
        if (cfg.conditional && drop_u >= cfg.label_drop)
          item.label = (*dataset.labels)[order[b]];
        batch.push_back(std::move(item));
      }
      const double loss = loss_and_grad(params, batch, cfg.lambda, grads);
      epoch_ce += loss * static_cast<double>(batch.size());
      epoch_count += static_cast<int>(batch.size());
      auto theta = params.theta();
      const auto g = grads.theta();
      for (std::size_t k = 0; k < theta.size(); ++k) {
        velocity[k] = cfg.momentum * velocity[k] - cfg.learning_rate * g[k];
        theta[k] += velocity[k];
      }
    }
    result.epoch_loss.push_back(epoch_ce / epoch_count);
  }
  result.params = std::move(params);
  return result;
}

std::vector<std::pair<double, double>> loss_vs_time(
    const Denoiser& denoiser, const GraphDataset& dataset,
    const InitialDistribution& dist, std::span<const double> t_grid,
    int n_draws, double lambda, Rng& rng) {
  dataset.validate();
  if (n_draws < 1) throw std::invalid_argument("loss_vs_time: n_draws >= 1");
  std::vector<std::pair<double, double>> curve;
  curve.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t >= 0.0 && t < 1.0))
      throw std::invalid_argument("loss_vs_time: grid point outside [0,1)");
    double total = 0.0;
    for (int k = 0; k < n_draws; ++k) {
      const auto& g1 =
          dataset.graphs[rng.uniform_int(static_cast<int>(dataset.graphs.size()))];
      const CategoricalGraph g_t = noise_graph(g1, dist, t, rng);
      total += ce_lambda(g1, denoiser.posterior(g_t, t), lambda);
    }
    curve.emplace_back(t, total / n_draws);
  }
  return curve;
}

}  // namespace graphflow
