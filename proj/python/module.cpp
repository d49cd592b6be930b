// Python bindings for the graphflow core: graph types, the CTMC kernel,
// denoisers, training/sampling, metrics, and the exact enumerator.

#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "graphflow/checkpoint.hpp"
#include "graphflow/ctmc.hpp"
#include "graphflow/dataset_io.hpp"
#include "graphflow/denoiser.hpp"
#include "graphflow/distortion.hpp"
#include "graphflow/enumerate.hpp"
#include "graphflow/eval.hpp"
#include "graphflow/planarity.hpp"
#include "graphflow/sampling.hpp"
#include "graphflow/synth.hpp"
#include "graphflow/training.hpp"
#include "graphflow/verify.hpp"

namespace py = pybind11;
using namespace graphflow;

namespace {

std::vector<double> row_values(const RateRow& row) { return row.rates; }

}  // namespace

PYBIND11_MODULE(graphflow, m) {
  m.doc() = "discrete-flow-matching engine for graph generation";

  py::class_<CategoricalGraph>(m, "CategoricalGraph")
      .def(py::init<int, int, int>(), py::arg("n_nodes"), py::arg("x_card"),
           py::arg("e_card"))
      .def_property_readonly("n_nodes", &CategoricalGraph::n_nodes)
      .def_property_readonly("x_card", &CategoricalGraph::x_card)
      .def_property_readonly("e_card", &CategoricalGraph::e_card)
      .def_property_readonly("dims", &CategoricalGraph::dims)
      .def("node", &CategoricalGraph::node)
      .def("set_node", &CategoricalGraph::set_node)
      .def("edge", &CategoricalGraph::edge)
      .def("set_edge", &CategoricalGraph::set_edge)
      .def("dim_state", &CategoricalGraph::dim_state)
      .def("set_dim_state", &CategoricalGraph::set_dim_state)
      .def("node_states",
           [](const CategoricalGraph& g) {
             return std::vector<int>(g.node_states().begin(),
                                     g.node_states().end());
           })
      .def("edge_states",
           [](const CategoricalGraph& g) {
             return std::vector<int>(g.edge_states().begin(),
                                     g.edge_states().end());
           })
      .def(py::self == py::self)
      .def("__repr__", [](const CategoricalGraph& g) {
        return "CategoricalGraph(n=" + std::to_string(g.n_nodes()) +
               ", x_card=" + std::to_string(g.x_card()) +
               ", e_card=" + std::to_string(g.e_card()) + ")";
      });

  py::class_<Permutation>(m, "Permutation")
      .def(py::init<std::vector<int>>())
      .def_static("identity", &Permutation::identity)
      .def("inverse", &Permutation::inverse)
      .def("__call__", &Permutation::operator())
      .def("__len__", &Permutation::size);

  py::class_<GraphDataset>(m, "GraphDataset")
      .def(py::init<>())
      .def_readwrite("x_card", &GraphDataset::x_card)
      .def_readwrite("e_card", &GraphDataset::e_card)
      .def_readwrite("graphs", &GraphDataset::graphs)
      .def_readwrite("labels", &GraphDataset::labels)
      .def("node_counts", &GraphDataset::node_counts);

  py::class_<ProbGraph>(m, "ProbGraph")
      .def_readonly("n_nodes", &ProbGraph::n_nodes)
      .def_readonly("x_card", &ProbGraph::x_card)
      .def_readonly("e_card", &ProbGraph::e_card)
      .def_readonly("node_probs", &ProbGraph::node_probs)
      .def_readonly("edge_probs", &ProbGraph::edge_probs)
      .def("validate", &ProbGraph::validate, py::arg("tol") = 1e-9);

  m.def(
      "permute",
      [](const CategoricalGraph& g, const Permutation& sigma) {
        return permute(g, sigma);
      },
      py::arg("graph"), py::arg("sigma"));
  m.def("are_isomorphic", &are_isomorphic, py::arg("a"), py::arg("b"),
        py::arg("cap") = 12);

  m.def("read_dataset", &read_dataset);
  m.def("write_dataset", &write_dataset);

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>())
      .def("uniform", py::overload_cast<>(&Rng::uniform))
      .def("uniform_int", &Rng::uniform_int)
      .def("substream", &Rng::substream);

  py::class_<InitialDistribution>(m, "InitialDistribution")
      .def_property_readonly(
          "kind", [](const InitialDistribution& d) { return to_string(d.kind); })
      .def_readonly("node_p0", &InitialDistribution::node_p0)
      .def_readonly("edge_p0", &InitialDistribution::edge_p0)
      .def_readonly("x_card", &InitialDistribution::x_card)
      .def_readonly("e_card", &InitialDistribution::e_card)
      .def("masking", &InitialDistribution::masking);

  m.def(
      "build_initial",
      [](const std::string& kind, int x_card, int e_card,
         const GraphDataset* dataset) {
        return build_initial(init_kind_from_string(kind), x_card, e_card,
                             dataset);
      },
      py::arg("kind"), py::arg("x_card"), py::arg("e_card"),
      py::arg("dataset") = nullptr);
  m.def("sample_initial", &sample_initial);

  m.def("distort", [](const std::string& kind, double t) {
    return distort(distortion_from_string(kind), t);
  });
  m.def("distort_inverse", [](const std::string& kind, double u) {
    return distort_inverse(distortion_from_string(kind), u);
  });
  m.def("distortion_pdf", [](const std::string& kind, double u) {
    return distortion_pdf(distortion_from_string(kind), u);
  });
  m.def("step_schedule", [](const std::string& kind, int n_steps) {
    std::vector<std::pair<double, double>> out;
    for (const auto& s : step_schedule(distortion_from_string(kind), n_steps))
      out.emplace_back(s.t, s.dt);
    return out;
  });

  py::class_<RateConfig>(m, "RateConfig")
      .def(py::init([](double omega, double eta, const std::string& db_design,
                       bool exact_expectation) {
             RateConfig cfg;
             cfg.omega = omega;
             cfg.eta = eta;
             cfg.db_design = db_design_from_string(db_design);
             cfg.exact_expectation = exact_expectation;
             return cfg;
           }),
           py::arg("omega") = 0.0, py::arg("eta") = 0.0,
           py::arg("db_design") = "general",
           py::arg("exact_expectation") = false)
      .def_readwrite("omega", &RateConfig::omega)
      .def_readwrite("eta", &RateConfig::eta)
      .def_readwrite("exact_expectation", &RateConfig::exact_expectation);

  m.def("interp_prob", [](int z1, const std::vector<double>& p0, double t) {
    return interp_prob(z1, p0, t);
  });
  m.def("interp_deriv", [](int z1, const std::vector<double>& p0) {
    return interp_deriv(z1, p0);
  });
  m.def("support_count", [](int z1, const std::vector<double>& p0, double t) {
    return support_count(z1, p0, t);
  });
  m.def("rstar_row",
        [](int z_t, int z1, const std::vector<double>& p0, double t) {
          return row_values(rstar_row(z_t, z1, p0, t));
        });
  m.def("guidance_row", [](int z_t, int z1, const std::vector<double>& p0,
                           double t, double omega) {
    return row_values(guidance_row(z_t, z1, p0, t, omega));
  });
  m.def("db_row", [](int z_t, int z1, const std::vector<double>& p0, double t,
                     const std::string& design) {
    return row_values(db_row(z_t, z1, p0, t, db_design_from_string(design)));
  });
  m.def("combined_row", [](int z_t, int z1, const std::vector<double>& p0,
                           double t, const RateConfig& cfg) {
    return row_values(combined_row(z_t, z1, p0, t, cfg));
  });
  m.def(
      "kolmogorov_residual",
      [](const std::function<std::vector<double>(int)>& rate_row_of, int z1,
         const std::vector<double>& p0, double t) {
        return kolmogorov_residual(
            [&](int z) {
              RateRow row(static_cast<int>(p0.size()));
              row.rates = rate_row_of(z);
              return row;
            },
            z1, p0, t);
      },
      py::arg("rate_row_of"), py::arg("z1"), py::arg("p0"), py::arg("t"));

  m.def("noise_graph", &noise_graph);
  m.def("euler_step", &euler_step);

  m.def("rrwp", &rrwp, py::arg("graph"), py::arg("depth"),
        py::arg("mask_edge_state") = -1);
  py::class_<RrwpFeatures>(m, "RrwpFeatures")
      .def_readonly("depth", &RrwpFeatures::depth)
      .def_readonly("node_feats", &RrwpFeatures::node_feats)
      .def_readonly("edge_feats", &RrwpFeatures::edge_feats);

  py::class_<Denoiser>(m, "Denoiser")
      .def("posterior", &Denoiser::posterior, py::arg("g_t"), py::arg("t"),
           py::arg("label") = std::nullopt);
  py::class_<OracleDenoiser, Denoiser>(m, "OracleDenoiser")
      .def(py::init<GraphDataset, InitialDistribution>());
  py::class_<FeaturizedDenoiser, Denoiser>(m, "FeaturizedDenoiser")
      .def(py::init<DenoiserParams>());

  py::class_<DenoiserParams>(m, "DenoiserParams")
      .def("size", &DenoiserParams::size)
      .def("to_json", &params_to_json);
  m.def("params_from_json", &params_from_json);
  m.def("oracle_posterior", &oracle_posterior, py::arg("g_t"), py::arg("t"),
        py::arg("dataset"), py::arg("initial"),
        py::arg("label") = std::nullopt);
  m.def("predict", &predict, py::arg("params"), py::arg("g_t"), py::arg("t"),
        py::arg("label") = std::nullopt);
  m.def("ce_lambda", &ce_lambda, py::arg("g1"), py::arg("pred"),
        py::arg("lambda_"));

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("lambda_", &TrainConfig::lambda)
      .def_property(
          "train_distortion",
          [](const TrainConfig& c) { return to_string(c.train_distortion); },
          [](TrainConfig& c, const std::string& s) {
            c.train_distortion = distortion_from_string(s);
          })
      .def_property(
          "initial_distribution",
          [](const TrainConfig& c) { return to_string(c.initial_distribution); },
          [](TrainConfig& c, const std::string& s) {
            c.initial_distribution = init_kind_from_string(s);
          })
      .def_readwrite("epochs", &TrainConfig::epochs)
      .def_readwrite("batch_size", &TrainConfig::batch_size)
      .def_readwrite("draws_per_graph", &TrainConfig::draws_per_graph)
      .def_readwrite("learning_rate", &TrainConfig::learning_rate)
      .def_readwrite("momentum", &TrainConfig::momentum)
      .def_readwrite("seed", &TrainConfig::seed)
      .def_readwrite("conditional", &TrainConfig::conditional)
      .def_readwrite("label_drop", &TrainConfig::label_drop)
      .def_readwrite("hidden", &TrainConfig::hidden)
      .def_readwrite("rrwp_depth", &TrainConfig::rrwp_depth)
      .def_readwrite("init_scale", &TrainConfig::init_scale);

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("params", &TrainResult::params)
      .def_readonly("initial", &TrainResult::initial)
      .def_readonly("epoch_loss", &TrainResult::epoch_loss)
      .def_readonly("sampled_times", &TrainResult::sampled_times);

  m.def("train", [](const GraphDataset& ds, const TrainConfig& cfg) {
    Rng rng(cfg.seed);
    return train(ds, cfg, rng);
  });
  m.def(
      "loss_vs_time",
      [](const Denoiser& denoiser, const GraphDataset& ds,
         const InitialDistribution& dist, const std::vector<double>& grid,
         int n_draws, double lambda, std::uint64_t seed) {
        Rng rng(seed);
        return loss_vs_time(denoiser, ds, dist, grid, n_draws, lambda, rng);
      },
      py::arg("denoiser"), py::arg("dataset"), py::arg("initial"),
      py::arg("t_grid"), py::arg("n_draws"), py::arg("lambda_"),
      py::arg("seed") = 0);

  py::class_<SampleConfig>(m, "SampleConfig")
      .def(py::init<>())
      .def_readwrite("n_steps", &SampleConfig::n_steps)
      .def_property(
          "sample_distortion",
          [](const SampleConfig& c) { return to_string(c.sample_distortion); },
          [](SampleConfig& c, const std::string& s) {
            c.sample_distortion = distortion_from_string(s);
          })
      .def_readwrite("rate", &SampleConfig::rate)
      .def_readwrite("gamma", &SampleConfig::gamma)
      .def_readwrite("label", &SampleConfig::label)
      .def_readwrite("seed", &SampleConfig::seed);

  m.def("guided_posterior", &guided_posterior);
  m.def(
      "sample",
      [](const Denoiser& denoiser, const InitialDistribution& dist,
         const std::vector<int>& node_counts, const SampleConfig& cfg,
         int n_graphs) {
        return sample(denoiser, dist, node_counts, cfg, n_graphs);
      },
      py::arg("denoiser"), py::arg("initial"), py::arg("node_counts"),
      py::arg("config"), py::arg("n_graphs"));

  m.def("is_tree", &is_tree);
  m.def("is_planar", &is_planar);
  py::class_<VunReport>(m, "VunReport")
      .def_readonly("valid_frac", &VunReport::valid_frac)
      .def_readonly("unique_frac", &VunReport::unique_frac)
      .def_readonly("novel_frac", &VunReport::novel_frac)
      .def_readonly("vun_frac", &VunReport::vun_frac);
  m.def("vun", &vun, py::arg("generated"), py::arg("train"),
        py::arg("validity"), py::arg("iso_cap") = 12);
  py::class_<GraphStats>(m, "GraphStats")
      .def_readonly("degrees", &GraphStats::degrees)
      .def_readonly("clustering", &GraphStats::clustering)
      .def_readonly("laplacian_eigs", &GraphStats::laplacian_eigs);
  m.def("graph_stats", &graph_stats);
  m.def("mmd2", &mmd2, py::arg("a"), py::arg("b"), py::arg("bandwidth"),
        py::arg("biased") = false);
  m.def("median_bandwidth", &median_bandwidth);
  py::class_<MmdReport>(m, "MmdReport")
      .def_readonly("degree_mmd2", &MmdReport::degree_mmd2)
      .def_readonly("clustering_mmd2", &MmdReport::clustering_mmd2)
      .def_readonly("spectral_mmd2", &MmdReport::spectral_mmd2)
      .def_readonly("ratio", &MmdReport::ratio);
  m.def("mmd_report", &mmd_report);
  m.def("ratio_metric", &ratio_metric);

  py::class_<EnumeratedDistribution>(m, "EnumeratedDistribution")
      .def_readonly("n_nodes", &EnumeratedDistribution::n_nodes)
      .def_readonly("x_card", &EnumeratedDistribution::x_card)
      .def_readonly("e_card", &EnumeratedDistribution::e_card)
      .def_readonly("probs", &EnumeratedDistribution::probs)
      .def_readonly("tv_to_dataset", &EnumeratedDistribution::tv_to_dataset);
  m.def("exact_generated_distribution", &exact_generated_distribution);
  m.def("encode_graph", &encode_graph);
  m.def("decode_graph", &decode_graph);

  m.def(
      "generate",
      [](const std::string& family, int n_graphs, int n_min, int n_max,
         std::uint64_t seed, bool with_labels) {
        SynthSpec spec;
        spec.family = synth_family_from_string(family);
        spec.n_graphs = n_graphs;
        spec.n_min = n_min;
        spec.n_max = n_max;
        spec.seed = seed;
        spec.with_labels = with_labels;
        Rng rng(seed);
        return generate(spec, rng);
      },
      py::arg("family"), py::arg("n_graphs"), py::arg("n_min"),
      py::arg("n_max"), py::arg("seed") = 0, py::arg("with_labels") = false);
  m.def("toy_enumerable_dataset", &toy_enumerable_dataset);

  py::class_<VerifyReport::Line>(m, "VerifyLine")
      .def_readonly("name", &VerifyReport::Line::name)
      .def_readonly("ok", &VerifyReport::Line::pass)
      .def_readonly("value", &VerifyReport::Line::value)
      .def_readonly("bound", &VerifyReport::Line::bound);
  py::class_<VerifyReport>(m, "VerifyReport")
      .def_readonly("lines", &VerifyReport::lines)
      .def("all_pass", &VerifyReport::all_pass);
  m.def("verify_kolmogorov", &verify_kolmogorov);
  m.def("verify_target_guidance", &verify_target_guidance);
  m.def("verify_detailed_balance", &verify_detailed_balance);
  m.def("verify_tv_scaling", &verify_tv_scaling);
  m.def("tv_sweep", &tv_sweep, py::arg("steps"), py::arg("omega") = 0.0);
}
