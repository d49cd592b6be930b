#include "graphflow/checkpoint.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "graphflow/dataset_io.hpp"

namespace graphflow {

using nlohmann::json;

std::unique_ptr<Denoiser> Checkpoint::make_denoiser() const {
  if (kind == Kind::kOracle)
    return std::make_unique<OracleDenoiser>(dataset, initial);
  return std::make_unique<FeaturizedDenoiser>(params);
}

namespace {

json initial_to_json(const InitialDistribution& dist) {
  return json{{"kind", to_string(dist.kind)},
              {"x_card", dist.x_card},
              {"e_card", dist.e_card},
              {"node_p0", dist.node_p0},
              {"edge_p0", dist.edge_p0}};
}

InitialDistribution initial_from_json(const json& v) {
  InitialDistribution dist;
  dist.kind = init_kind_from_string(v.at("kind").get<std::string>());
  dist.x_card = v.at("x_card").get<int>();
  dist.e_card = v.at("e_card").get<int>();
  dist.node_p0 = v.at("node_p0").get<std::vector<double>>();
  dist.edge_p0 = v.at("edge_p0").get<std::vector<double>>();
  dist.validate();
  return dist;
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::string& path) {
  json out;
  out["format"] = 1;
  out["kind"] = ckpt.kind == Checkpoint::Kind::kOracle ? "oracle" : "featurized";
  out["initial"] = initial_to_json(ckpt.initial);
  out["node_counts"] = ckpt.node_counts;
  if (ckpt.kind == Checkpoint::Kind::kOracle)
    out["dataset"] = json::parse(dataset_to_json(ckpt.dataset));
  else
    out["params"] = json::parse(params_to_json(ckpt.params));
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write checkpoint: " + path);
  f << out.dump() << "\n";
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open checkpoint: " + path);
  json v;
  f >> v;
  if (v.at("format").get<int>() != 1)
    throw std::runtime_error("checkpoint: unknown format version");
  Checkpoint ckpt;
  const std::string kind = v.at("kind").get<std::string>();
  ckpt.kind = kind == "oracle" ? Checkpoint::Kind::kOracle
                               : Checkpoint::Kind::kFeaturized;
  ckpt.initial = initial_from_json(v.at("initial"));
  ckpt.node_counts = v.at("node_counts").get<std::vector<int>>();
  if (ckpt.kind == Checkpoint::Kind::kOracle)
    ckpt.dataset = dataset_from_json(v.at("dataset").dump());
  else
    ckpt.params = params_from_json(v.at("params").dump());
  return ckpt;
}

}  // namespace graphflow
