#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphflow/graph.hpp"
#include "graphflow/initial_dist.hpp"
#include "graphflow/rng.hpp"

namespace graphflow {

/// Random-walk structural features: diagonal entries of the powers
/// [I, M, ..., M^{K-1}] of the degree-normalized adjacency M = D^-1 A per
/// node, symmetrized off-diagonal entries per edge slot. A is the binary
/// skeleton (edge state != 0, mask edges treated as absent); degree-0 rows
/// of M are zero rows.
struct RrwpFeatures {
  int depth = 0;
  std::vector<std::vector<double>> node_feats;  // N x K
  std::vector<std::vector<double>> edge_feats;  // slots x K
};

RrwpFeatures rrwp(const CategoricalGraph& g, int depth,
                  int mask_edge_state = -1);

/// Anything that can predict clean-state marginals from a noisy graph.
class Denoiser {
 public:
  virtual ~Denoiser() = default;
  virtual ProbGraph posterior(const CategoricalGraph& g_t, double t,
                              std::optional<int> label = {}) const = 0;
  virtual int x_card() const = 0;
  virtual int e_card() const = 0;
};

/// Exact Bayes posterior over a finite dataset:
///   p(z1^d = v | G_t) ~ sum_{G1 : G1^d = v} prod_d' p_{t|1}(G_t^d' | G1^d').
/// Zero estimation error by construction; the reference predictor for every
/// numerical check. A label restricts the posterior to atoms of that class.
ProbGraph oracle_posterior(const CategoricalGraph& g_t, double t,
                           const GraphDataset& dataset,
                           const InitialDistribution& dist,
                           std::optional<int> label = {});

class OracleDenoiser final : public Denoiser {
 public:
  OracleDenoiser(GraphDataset dataset, InitialDistribution dist);

  ProbGraph posterior(const CategoricalGraph& g_t, double t,
                      std::optional<int> label = {}) const override;
  int x_card() const override { return dist_.x_card; }
  int e_card() const override { return dist_.e_card; }
  const GraphDataset& dataset() const { return dataset_; }
  const InitialDistribution& initial() const { return dist_; }

 private:
  GraphDataset dataset_;
  InitialDistribution dist_;
};

/// Weights of the featurized per-dimension predictor: one hidden tanh layer
/// from (one-hot state, RRWP features, t, optional label one-hot) to clean
/// state logits, separately for nodes and edges. Endpoint features enter
/// edge inputs summed, which keeps the whole map permutation equivariant.
/// Label columns are stored in a trailing block of the flat buffer, so an
/// unconditional parameter vector is a prefix of a conditional one.
class DenoiserParams {
 public:
  struct Dims {
    int x_card = 0;
    int e_card = 0;
    int label_card = 0;  // 0 = unconditional
    int rrwp_depth = 12;
    int hidden = 64;
    bool masking = false;

    // Label-free input widths; the label one-hot has its own weight block.
    int node_in() const { return x_card + (masking ? 1 : 0) + rrwp_depth + 1; }
    int edge_in() const { return e_card + (masking ? 1 : 0) + 2 * rrwp_depth + 1; }
    bool operator==(const Dims&) const = default;
  };

  DenoiserParams() = default;
  explicit DenoiserParams(const Dims& dims);

  const Dims& dims() const { return dims_; }
  std::span<double> theta() { return theta_; }
  std::span<const double> theta() const { return theta_; }
  std::size_t size() const { return theta_.size(); }

  void fill(double value);
  void init_random(Rng& rng, double scale);

  /// Views into the flat buffer. Matrices are row-major [rows x cols];
  /// w1_label is [hidden x label_card] (empty when unconditional).
  template <typename T>
  struct ViewsT {
    std::span<T> w1, b1, w2, b2, w1_label;
  };
  ViewsT<double> node_views();
  ViewsT<double> edge_views();
  ViewsT<const double> node_views() const;
  ViewsT<const double> edge_views() const;

 private:
  Dims dims_;
  std::vector<double> theta_;
};

/// Forward pass; softmax per dimension, so outputs are valid simplexes over
/// the original (unmasked) cardinalities.
ProbGraph predict(const DenoiserParams& params, const CategoricalGraph& g_t,
                  double t, std::optional<int> label = {});

struct TrainBatchItem {
  CategoricalGraph g1;
  CategoricalGraph g_t;
  double t = 0.0;
  std::optional<int> label;
};

/// Mean CE_lambda over the batch and its exact analytic gradient.
/// `grads` must be shaped like `params`; it is overwritten.
double loss_and_grad(const DenoiserParams& params,
                     std::span<const TrainBatchItem> batch, double lambda,
                     DenoiserParams& grads);

/// Versioned JSON checkpoint; round-trips bit-exactly.
void save_params(const DenoiserParams& params, const std::string& path);
DenoiserParams load_params(const std::string& path);
std::string params_to_json(const DenoiserParams& params);
DenoiserParams params_from_json(const std::string& text);

class FeaturizedDenoiser final : public Denoiser {
 public:
  explicit FeaturizedDenoiser(DenoiserParams params)
      : params_(std::move(params)) {}

  ProbGraph posterior(const CategoricalGraph& g_t, double t,
                      std::optional<int> label = {}) const override {
    return predict(params_, g_t, t, label);
  }
  int x_card() const override { return params_.dims().x_card; }
  int e_card() const override { return params_.dims().e_card; }
  const DenoiserParams& params() const { return params_; }

 private:
  DenoiserParams params_;
};

}  // namespace graphflow
