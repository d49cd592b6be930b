// graphflow: discrete-flow-matching engine for graph generation.
//
// Subcommands: gen-data, train, sample, eval, verify. Config files are flat
// key = value text; command-line flags override config keys.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphflow/checkpoint.hpp"
#include "graphflow/config.hpp"
#include "graphflow/ctmc.hpp"
#include "graphflow/dataset_io.hpp"
#include "graphflow/denoiser.hpp"
#include "graphflow/distortion.hpp"
#include "graphflow/eval.hpp"
#include "graphflow/planarity.hpp"
#include "graphflow/sampling.hpp"
#include "graphflow/synth.hpp"
#include "graphflow/training.hpp"
#include "graphflow/verify.hpp"

namespace {

using namespace graphflow;
using nlohmann::json;

double wall_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

struct GenDataArgs {
  std::string family = "tree";
  int n_graphs = 64;
  int n_min = 6;
  int n_max = 12;
  std::uint64_t seed = 0;
  bool labels = false;
  std::string out;
};

int cmd_gen_data(const GenDataArgs& args) {
  SynthSpec spec;
  spec.family = synth_family_from_string(args.family);
  spec.n_graphs = args.n_graphs;
  spec.n_min = args.n_min;
  spec.n_max = args.n_max;
  spec.seed = args.seed;
  spec.with_labels = args.labels;
  Rng rng(args.seed);
  const GraphDataset ds = generate(spec, rng);
  write_dataset(ds, args.out);
  std::cout << "wrote " << ds.graphs.size() << " " << args.family
            << " graphs to " << args.out << "\n";
  return 0;
}

struct TrainArgs {
  std::string config_path;
  std::string dataset_path;
  std::string out = "checkpoint.json";
  std::string loss_csv;
  bool oracle = false;
  std::optional<double> lambda, lr, momentum, label_drop, init_scale;
  std::optional<int> epochs, batch_size, draws_per_graph, hidden, rrwp_depth;
  std::optional<std::string> train_distortion, initial_distribution;
  std::optional<std::uint64_t> seed;
  std::optional<bool> conditional;
};

TrainConfig resolve_train_config(const TrainArgs& args) {
  Config file;
  if (!args.config_path.empty()) file = Config::from_file(args.config_path);
  TrainConfig cfg;
  cfg.lambda = args.lambda.value_or(file.get_double("lambda", cfg.lambda));
  cfg.train_distortion = distortion_from_string(args.train_distortion.value_or(
      file.get_string("train_distortion", to_string(cfg.train_distortion))));
  cfg.initial_distribution = init_kind_from_string(
      args.initial_distribution.value_or(file.get_string(
          "initial_distribution", to_string(cfg.initial_distribution))));
  cfg.epochs = args.epochs.value_or(file.get_int("epochs", cfg.epochs));
  cfg.batch_size =
      args.batch_size.value_or(file.get_int("batch_size", cfg.batch_size));
  cfg.draws_per_graph = args.draws_per_graph.value_or(
      file.get_int("draws_per_graph", cfg.draws_per_graph));
  cfg.learning_rate =
      args.lr.value_or(file.get_double("learning_rate", cfg.learning_rate));
  cfg.momentum =
      args.momentum.value_or(file.get_double("momentum", cfg.momentum));
  cfg.seed = args.seed.value_or(file.get_u64("seed", cfg.seed));
  cfg.conditional =
      args.conditional.value_or(file.get_bool("conditional", cfg.conditional));
  cfg.label_drop =
      args.label_drop.value_or(file.get_double("label_drop", cfg.label_drop));
  cfg.hidden = args.hidden.value_or(file.get_int("hidden", cfg.hidden));
  cfg.rrwp_depth =
      args.rrwp_depth.value_or(file.get_int("rrwp_depth", cfg.rrwp_depth));
  cfg.init_scale =
      args.init_scale.value_or(file.get_double("init_scale", cfg.init_scale));
  return cfg;
}

int cmd_train(const TrainArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const GraphDataset ds = read_dataset(args.dataset_path);
  const TrainConfig cfg = resolve_train_config(args);

  Checkpoint ckpt;
  ckpt.node_counts = ds.node_counts();
  if (args.oracle) {
    ckpt.kind = Checkpoint::Kind::kOracle;
    ckpt.dataset = ds;
    ckpt.initial =
        build_initial(cfg.initial_distribution, ds.x_card, ds.e_card, &ds);
    save_checkpoint(ckpt, args.out);
    std::cout << "wrote oracle checkpoint to " << args.out << "\n";
    return 0;
  }

  Rng rng(cfg.seed);
  TrainResult result = train(ds, cfg, rng);
  ckpt.kind = Checkpoint::Kind::kFeaturized;
  ckpt.params = std::move(result.params);
  ckpt.initial = result.initial;
  save_checkpoint(ckpt, args.out);
  if (!args.loss_csv.empty()) {
    std::ofstream csv(args.loss_csv);
    if (!csv) throw std::runtime_error("cannot write " + args.loss_csv);
    csv << "epoch,mean_ce\n";
    for (std::size_t e = 0; e < result.epoch_loss.size(); ++e)
      csv << e << "," << result.epoch_loss[e] << "\n";
  }
  std::cout << "trained " << cfg.epochs << " epochs; first-epoch CE "
            << (result.epoch_loss.empty() ? 0.0 : result.epoch_loss.front())
            << ", last "
            << (result.epoch_loss.empty() ? 0.0 : result.epoch_loss.back())
            << "; checkpoint " << args.out << " (" << wall_seconds(start)
            << " s)\n";
  return 0;
}

struct SampleArgs {
  std::string checkpoint_path;
  std::string out = "samples.json";
  std::string manifest;
  int n_graphs = 100;
  int steps = 256;
  std::string sample_distortion = "identity";
  double omega = 0.0;
  double eta = 0.0;
  std::string db_design = "general";
  bool exact_expectation = false;
  double gamma = 1.0;
  std::optional<int> label;
  std::uint64_t seed = 0;
};

int cmd_sample(const SampleArgs& args) {
  const auto start = std::chrono::steady_clock::now();
  const Checkpoint ckpt = load_checkpoint(args.checkpoint_path);
  const auto denoiser = ckpt.make_denoiser();

  SampleConfig cfg;
  cfg.n_steps = args.steps;
  cfg.sample_distortion = distortion_from_string(args.sample_distortion);
  cfg.rate.omega = args.omega;
  cfg.rate.eta = args.eta;
  cfg.rate.db_design = db_design_from_string(args.db_design);
  cfg.rate.exact_expectation = args.exact_expectation;
  cfg.gamma = args.gamma;
  cfg.label = args.label;
  cfg.seed = args.seed;

  const auto graphs =
      sample(*denoiser, ckpt.initial, ckpt.node_counts, cfg, args.n_graphs);
  GraphDataset out;
  out.x_card = ckpt.initial.x_card;
  out.e_card = ckpt.initial.e_card;
  out.graphs = graphs;
  write_dataset(out, args.out);

  if (!args.manifest.empty()) {
    json manifest;
    manifest["command"] = "sample";
    manifest["checkpoint"] = args.checkpoint_path;
    manifest["n_graphs"] = args.n_graphs;
    manifest["steps"] = args.steps;
    manifest["sample_distortion"] = args.sample_distortion;
    manifest["omega"] = args.omega;
    manifest["eta"] = args.eta;
    manifest["db_design"] = args.db_design;
    manifest["exact_expectation"] = args.exact_expectation;
    manifest["gamma"] = args.gamma;
    if (args.label) manifest["label"] = *args.label;
    manifest["seed"] = args.seed;
    manifest["wall_time_s"] = wall_seconds(start);
    std::ofstream f(args.manifest);
    if (!f) throw std::runtime_error("cannot write " + args.manifest);
    f << manifest.dump(2) << "\n";
  }
  std::cout << "sampled " << graphs.size() << " graphs to " << args.out << " ("
            << wall_seconds(start) << " s)\n";
  return 0;
}

struct EvalArgs {
  std::string samples_path, train_path, test_path;
  std::string validity = "none";
  std::string out = "report.json";
  std::string csv;
  int iso_cap = 12;
};

int cmd_eval(const EvalArgs& args) {
  const GraphDataset samples = read_dataset(args.samples_path);
  const GraphDataset train = read_dataset(args.train_path);
  const GraphDataset test = read_dataset(args.test_path);

  std::function<bool(const CategoricalGraph&)> validity;
  if (args.validity == "tree")
    validity = [](const CategoricalGraph& g) { return is_tree(g); };
  else if (args.validity == "planar")
    validity = [](const CategoricalGraph& g) { return is_planar(g); };
  else if (args.validity == "none")
    validity = [](const CategoricalGraph&) { return true; };
  else
    throw std::runtime_error("unknown validity predicate: " + args.validity);

  const VunReport v = vun(samples.graphs, train, validity, args.iso_cap);
  const MmdReport m = mmd_report(samples.graphs, test.graphs, train.graphs);

  json report;
  report["valid"] = v.valid_frac;
  report["unique"] = v.unique_frac;
  report["novel"] = v.novel_frac;
  report["vun"] = v.vun_frac;
  report["degree_mmd2"] = m.degree_mmd2;
  report["clustering_mmd2"] = m.clustering_mmd2;
  report["spectral_mmd2"] = m.spectral_mmd2;
  report["ratio"] = m.ratio;
  std::ofstream f(args.out);
  if (!f) throw std::runtime_error("cannot write " + args.out);
  f << report.dump(2) << "\n";

  if (!args.csv.empty()) {
    std::ofstream csv(args.csv);
    if (!csv) throw std::runtime_error("cannot write " + args.csv);
    csv << "metric,value\n";
    for (const auto& [key, value] : report.items())
      csv << key << "," << value.dump() << "\n";
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

struct VerifyArgs {
  int tuples = 1000;
  double omega = 0.1;
  std::uint64_t seed = 5;
  std::string tv_sweep_csv;
};

int cmd_verify(const VerifyArgs& args) {
  std::vector<VerifyReport::Line> lines;
  for (const auto& report :
       {verify_kolmogorov(args.tuples, args.seed),
        verify_target_guidance(args.tuples, args.omega, args.seed + 1),
        verify_detailed_balance(args.tuples, args.seed + 2),
        verify_tv_scaling()})
    lines.insert(lines.end(), report.lines.begin(), report.lines.end());

  bool all_pass = true;
  for (const auto& l : lines) {
    std::printf("[%s] %-50s value %.3e bound %.3e\n", l.pass ? "pass" : "FAIL",
                l.name.c_str(), l.value, l.bound);
    all_pass &= l.pass;
  }
  if (!args.tv_sweep_csv.empty()) {
    std::ofstream csv(args.tv_sweep_csv);
    if (!csv) throw std::runtime_error("cannot write " + args.tv_sweep_csv);
    csv << "steps,tv\n";
    for (const auto& [n, tv] : tv_sweep({16, 32, 64, 128, 256, 512, 1024}))
      csv << n << "," << tv << "\n";
    std::cout << "wrote TV sweep to " << args.tv_sweep_csv << "\n";
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"discrete-flow-matching engine for graph generation"};
  app.require_subcommand(1);

  GenDataArgs gen_args;
  auto* gen = app.add_subcommand("gen-data", "generate a synthetic dataset");
  gen->add_option("--family", gen_args.family,
                  "tree | planar | sbm-like | toy-enumerable");
  gen->add_option("--n", gen_args.n_graphs, "number of graphs");
  gen->add_option("--n-min", gen_args.n_min, "minimum node count");
  gen->add_option("--n-max", gen_args.n_max, "maximum node count");
  gen->add_option("--seed", gen_args.seed, "rng seed");
  gen->add_flag("--labels", gen_args.labels, "attach edge-density labels");
  gen->add_option("--out", gen_args.out, "output dataset path")->required();

  TrainArgs train_args;
  auto* tr = app.add_subcommand(
      "train", "fit the featurized denoiser (flags override config keys)");
  tr->add_option("--config", train_args.config_path, "flat key=value config");
  tr->add_option("--dataset", train_args.dataset_path, "training dataset")
      ->required();
  tr->add_option("--out", train_args.out, "checkpoint path");
  tr->add_option("--loss-csv", train_args.loss_csv, "per-epoch loss CSV");
  tr->add_flag("--oracle", train_args.oracle,
               "skip training; checkpoint the exact Bayes oracle");
  tr->add_option("--lambda", train_args.lambda, "edge weight in CE");
  tr->add_option("--epochs", train_args.epochs);
  tr->add_option("--batch-size", train_args.batch_size);
  tr->add_option("--draws-per-graph", train_args.draws_per_graph);
  tr->add_option("--lr", train_args.lr, "learning rate");
  tr->add_option("--momentum", train_args.momentum);
  tr->add_option("--seed", train_args.seed);
  tr->add_option("--conditional", train_args.conditional);
  tr->add_option("--label-drop", train_args.label_drop);
  tr->add_option("--hidden", train_args.hidden);
  tr->add_option("--rrwp-depth", train_args.rrwp_depth);
  tr->add_option("--init-scale", train_args.init_scale);
  tr->add_option("--train-distortion", train_args.train_distortion,
                 "polyinc | cos | identity | revcos | polydec");
  tr->add_option("--initial-distribution", train_args.initial_distribution,
                 "uniform | masking | marginal | absorbing");

  SampleArgs sample_args;
  auto* sa = app.add_subcommand("sample", "run the denoising sampler");
  sa->add_option("--checkpoint", sample_args.checkpoint_path)->required();
  sa->add_option("--out", sample_args.out, "samples dataset path");
  sa->add_option("--manifest", sample_args.manifest, "run manifest path");
  sa->add_option("--n", sample_args.n_graphs, "number of graphs");
  sa->add_option("--steps", sample_args.steps, "Euler steps");
  sa->add_option("--sample-distortion", sample_args.sample_distortion);
  sa->add_option("--omega", sample_args.omega, "target guidance weight");
  sa->add_option("--eta", sample_args.eta, "stochasticity level");
  sa->add_option("--db-design", sample_args.db_design,
                 "general | column_max_marginal | column_x1 | "
                 "column_argmax_pt | entry_max_marginal");
  sa->add_flag("--exact-expectation", sample_args.exact_expectation);
  sa->add_option("--gamma", sample_args.gamma, "guidance weight");
  sa->add_option("--label", sample_args.label, "conditioning label");
  sa->add_option("--seed", sample_args.seed);

  EvalArgs eval_args;
  auto* ev = app.add_subcommand("eval", "score samples against train/test");
  ev->add_option("--samples", eval_args.samples_path)->required();
  ev->add_option("--train", eval_args.train_path)->required();
  ev->add_option("--test", eval_args.test_path)->required();
  ev->add_option("--validity", eval_args.validity, "tree | planar | none");
  ev->add_option("--out", eval_args.out, "report JSON path");
  ev->add_option("--csv", eval_args.csv, "report CSV path");
  ev->add_option("--iso-cap", eval_args.iso_cap, "isomorphism size cap");

  VerifyArgs verify_args;
  auto* vf = app.add_subcommand("verify", "run the rate-matrix and TV checks");
  vf->add_option("--tuples", verify_args.tuples, "random probes per battery");
  vf->add_option("--omega", verify_args.omega, "guidance violation weight");
  vf->add_option("--seed", verify_args.seed);
  vf->add_option("--tv-sweep", verify_args.tv_sweep_csv,
                 "write a steps,tv CSV of the exact enumerator");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_data(gen_args);
    if (tr->parsed()) return cmd_train(train_args);
    if (sa->parsed()) return cmd_sample(sample_args);
    if (ev->parsed()) return cmd_eval(eval_args);
    if (vf->parsed()) return cmd_verify(verify_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
