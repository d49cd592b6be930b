#pragma once

#include "graphflow/graph.hpp"

namespace graphflow {

/// Left-right planarity test (de Fraysseix--Rosenstiehl criterion, Brandes'
/// formulation) on the non-zero-edge skeleton. Linear-time; boolean only,
/// no embedding is produced.
bool is_planar(const CategoricalGraph& g);

}  // namespace graphflow
