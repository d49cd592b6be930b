#pragma once

#include <span>
#include <utility>
#include <vector>

#include "graphflow/denoiser.hpp"
#include "graphflow/distortion.hpp"
#include "graphflow/graph.hpp"
#include "graphflow/initial_dist.hpp"
#include "graphflow/rng.hpp"

namespace graphflow {

struct TrainConfig {
  double lambda = 5.0;  // edge term weight in CE_lambda
  DistortionKind train_distortion = DistortionKind::kIdentity;
  InitKind initial_distribution = InitKind::kMarginal;
  int epochs = 200;
  int batch_size = 8;
  int draws_per_graph = 16;  // fresh (t', G_t) views of each graph per epoch
  double learning_rate = 0.001;
  double momentum = 0.9;
  std::uint64_t seed = 0;
  bool conditional = false;
  double label_drop = 0.1;  // probability of masking the label per sample
  int hidden = 64;
  int rrwp_depth = 12;
  double init_scale = 0.1;  // half-width of the uniform weight init
};

/// Node/edge weighted cross entropy of a prediction against the clean graph:
///   -sum_n log p^n(x1^n) - lambda sum_{i<j} log p^ij(e1^ij),
/// probabilities floored at 1e-30 before the log.
double ce_lambda(const CategoricalGraph& g1, const ProbGraph& pred,
                 double lambda);

struct TrainResult {
  DenoiserParams params;
  InitialDistribution initial;
  std::vector<double> epoch_loss;     // mean CE_lambda per epoch
  std::vector<double> sampled_times;  // every distorted t' consumed
};

/// Plain SGD (optional momentum) over the featurized predictor: per sample,
/// draw t' = f(U), noise the graph, predict, score with CE_lambda, step.
/// Conditional mode drops each label independently with `label_drop`.
TrainResult train(const GraphDataset& dataset, const TrainConfig& cfg,
                  Rng& rng);

/// Mean CE_lambda at each grid time over `n_draws` freshly noised samples;
/// the prediction-difficulty curve.
std::vector<std::pair<double, double>> loss_vs_time(
    const Denoiser& denoiser, const GraphDataset& dataset,
    const InitialDistribution& dist, std::span<const double> t_grid,
    int n_draws, double lambda, Rng& rng);

}  // namespace graphflow
