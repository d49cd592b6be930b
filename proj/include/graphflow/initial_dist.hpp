#pragma once

#include <string>
#include <vector>

#include "graphflow/graph.hpp"
#include "graphflow/rng.hpp"

namespace graphflow {

/// The factorized source distributions p0: all probability mass layouts the
/// denoising process can start from. Masking appends one virtual state that
/// carries all mass, so its vectors have length X+1 / E+1.
enum class InitKind { kUniform, kMasking, kMarginal, kAbsorbing };

InitKind init_kind_from_string(const std::string& name);
std::string to_string(InitKind kind);

struct InitialDistribution {
  InitKind kind = InitKind::kUniform;
  int x_card = 0;  // base cardinalities, mask excluded
  int e_card = 0;
  std::vector<double> node_p0;
  std::vector<double> edge_p0;

  bool masking() const { return kind == InitKind::kMasking; }
  /// State-space sizes seen by the noising process (X+1/E+1 for masking).
  int node_state_count() const { return static_cast<int>(node_p0.size()); }
  int edge_state_count() const { return static_cast<int>(edge_p0.size()); }

  /// Throws unless both vectors are simplexes within 1e-12.
  void validate() const;
};

/// Builds p0 for the given kind. `dataset` is required for the marginal and
/// absorbing kinds and ignored otherwise.
InitialDistribution build_initial(InitKind kind, int x_card, int e_card,
                                  const GraphDataset* dataset = nullptr);

/// Draws every node and edge state independently from p0. For masking the
/// returned graph reports the enlarged cardinalities X+1 / E+1.
CategoricalGraph sample_initial(const InitialDistribution& dist, int n_nodes,
                                Rng& rng);

}  // namespace graphflow
