#pragma once

#include <memory>
#include <string>
#include <vector>

#include "graphflow/denoiser.hpp"
#include "graphflow/graph.hpp"
#include "graphflow/initial_dist.hpp"

namespace graphflow {

/// Self-contained sampling bundle: the denoiser (trained weights, or the
/// dataset when running the exact Bayes oracle), the source distribution it
/// was fitted against, and the train-set node-count histogram.
struct Checkpoint {
  enum class Kind { kFeaturized, kOracle };
  Kind kind = Kind::kFeaturized;
  DenoiserParams params;   // featurized only
  GraphDataset dataset;    // oracle only
  InitialDistribution initial;
  std::vector<int> node_counts;

  std::unique_ptr<Denoiser> make_denoiser() const;
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace graphflow
