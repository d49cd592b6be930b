#pragma once

#include <string>

#include "graphflow/graph.hpp"

namespace graphflow {

// Dataset file format:
//   { "x_card": int, "e_card": int,
//     "graphs": [ { "n": int, "nodes": [int...],
//                   "edges": [[i, j, state]...], "label": int|null } ] }
// Pairs absent from "edges" carry edge state 0.
GraphDataset read_dataset(const std::string& path);
void write_dataset(const GraphDataset& dataset, const std::string& path);

std::string dataset_to_json(const GraphDataset& dataset);
GraphDataset dataset_from_json(const std::string& text);

}  // namespace graphflow
