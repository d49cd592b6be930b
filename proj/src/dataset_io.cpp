#include "graphflow/dataset_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace graphflow {

using nlohmann::json;

namespace {

json dataset_to_value(const GraphDataset& dataset) {
  dataset.validate();
  json out;
  out["x_card"] = dataset.x_card;
  out["e_card"] = dataset.e_card;
  json graphs = json::array();
  for (std::size_t gi = 0; gi < dataset.graphs.size(); ++gi) {
    const auto& g = dataset.graphs[gi];
    json jg;
    jg["n"] = g.n_nodes();
    jg["nodes"] = std::vector<int>(g.node_states().begin(), g.node_states().end());
    json edges = json::array();
    for (int i = 0; i < g.n_nodes(); ++i)
      for (int j = i + 1; j < g.n_nodes(); ++j)
        if (g.edge(i, j) != 0) edges.push_back({i, j, g.edge(i, j)});
    jg["edges"] = std::move(edges);
    if (dataset.labels)
      jg["label"] = (*dataset.labels)[gi];
    else
      jg["label"] = nullptr;
    graphs.push_back(std::move(jg));
  }
  out["graphs"] = std::move(graphs);
  return out;
}

GraphDataset dataset_from_value(const json& v) {
  GraphDataset ds;
  ds.x_card = v.at("x_card").get<int>();
  ds.e_card = v.at("e_card").get<int>();
  bool any_label = false;
  std::vector<int> labels;
  for (const auto& jg : v.at("graphs")) {
    const int n = jg.at("n").get<int>();
    CategoricalGraph g(n, ds.x_card, ds.e_card);
    const auto& nodes = jg.at("nodes");
    if (static_cast<int>(nodes.size()) != n)
      throw std::invalid_argument("dataset json: node list length mismatch");
    for (int i = 0; i < n; ++i) g.set_node(i, nodes[i].get<int>());
    if (jg.contains("edges"))
      for (const auto& e : jg.at("edges")) {
        if (e.size() != 3)
          throw std::invalid_argument("dataset json: edge triple expected");
        g.set_edge(e[0].get<int>(), e[1].get<int>(), e[2].get<int>());
      }
    ds.graphs.push_back(std::move(g));
    if (jg.contains("label") && !jg.at("label").is_null()) {
      any_label = true;
      labels.push_back(jg.at("label").get<int>());
    } else {
      labels.push_back(0);
    }
  }
  if (any_label) ds.labels = std::move(labels);
  ds.validate();
  return ds;
}

}  // namespace

GraphDataset read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  json v;
  in >> v;
  return dataset_from_value(v);
}

void write_dataset(const GraphDataset& dataset, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  out << dataset_to_value(dataset).dump(2) << "\n";
}

std::string dataset_to_json(const GraphDataset& dataset) {
  return dataset_to_value(dataset).dump(2);
}

GraphDataset dataset_from_json(const std::string& text) {
  return dataset_from_value(json::parse(text));
}

}  // namespace graphflow
