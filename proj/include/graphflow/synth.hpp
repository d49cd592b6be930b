#pragma once

#include <string>

#include "graphflow/graph.hpp"
#include "graphflow/rng.hpp"

namespace graphflow {

enum class SynthFamily { kTree, kPlanar, kSbmLike, kToyEnumerable };

SynthFamily synth_family_from_string(const std::string& name);
std::string to_string(SynthFamily family);

struct SynthSpec {
  SynthFamily family = SynthFamily::kTree;
  int n_graphs = 64;
  int n_min = 6;
  int n_max = 12;
  std::uint64_t seed = 0;
  bool with_labels = false;  // deterministic edge-density split
};

/// Deterministic generators with constructive validity: trees by uniform
/// random attachment, planar graphs as Delaunay triangulations of random
/// points, a two-block sbm-like family, and the fixed 2-node toy multiset
/// used by the enumeration checks.
GraphDataset generate(const SynthSpec& spec, Rng& rng);

/// The toy fixture: X=2, E=2, graphs {([0,0], edge 1), ([1,1], edge 0)}
/// with equal weights.
GraphDataset toy_enumerable_dataset();

}  // namespace graphflow
