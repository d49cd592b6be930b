#include "graphflow/denoiser.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "graphflow/ctmc.hpp"

namespace graphflow {

using nlohmann::json;

RrwpFeatures rrwp(const CategoricalGraph& g, int depth, int mask_edge_state) {
  if (depth < 1) throw std::invalid_argument("rrwp: depth must be >= 1");
  const int n = g.n_nodes();
  RrwpFeatures feats;
  feats.depth = depth;
  feats.node_feats.assign(n, std::vector<double>(depth, 0.0));
  feats.edge_feats.assign(g.n_edge_slots(), std::vector<double>(depth, 0.0));

  // M = D^-1 A over the binary skeleton; isolated nodes keep zero rows.
  std::vector<double> m(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    const int deg = g.skeleton_degree(i, mask_edge_state);
    if (deg == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const int s = g.edge(i, j);
      if (s != 0 && s != mask_edge_state) m[i * n + j] = 1.0 / deg;
    }
  }

  // power = M^k, accumulated iteratively starting from I.
  std::vector<double> power(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) power[i * n + i] = 1.0;
  std::vector<double> next(power.size());
  for (int k = 0; k < depth; ++k) {
    for (int i = 0; i < n; ++i) feats.node_feats[i][k] = power[i * n + i];
    for (int slot = 0; slot < g.n_edge_slots(); ++slot) {
      const auto [i, j] = g.slot_pair(slot);
      feats.edge_feats[slot][k] = 0.5 * (power[i * n + j] + power[j * n + i]);
    }
    if (k + 1 == depth) break;
    std::fill(next.begin(), next.end(), 0.0);
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        const double pil = power[i * n + l];
        if (pil == 0.0) continue;
        for (int j = 0; j < n; ++j) next[i * n + j] += pil * m[l * n + j];
      }
    power.swap(next);
  }
  return feats;
}

ProbGraph oracle_posterior(const CategoricalGraph& g_t, double t,
                           const GraphDataset& dataset,
                           const InitialDistribution& dist,
                           std::optional<int> label) {
  if (dataset.x_card != dist.x_card || dataset.e_card != dist.e_card)
    throw std::invalid_argument("oracle: dataset/p0 cardinality mismatch");
  if (label && !dataset.labels)
    throw std::invalid_argument("oracle: dataset carries no labels");

  std::vector<const CategoricalGraph*> atoms;
  for (std::size_t i = 0; i < dataset.graphs.size(); ++i) {
    if (dataset.graphs[i].n_nodes() != g_t.n_nodes()) continue;
    if (label && (*dataset.labels)[i] != *label) continue;
    atoms.push_back(&dataset.graphs[i]);
  }
  if (atoms.empty())
    throw std::invalid_argument("oracle: no dataset graph with matching size");

  // Joint likelihood of G_t under each atom, in log space.
  std::vector<double> logw(atoms.size(), 0.0);
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    for (int d = 0; d < g_t.dims(); ++d) {
      const auto& p0 = d < g_t.n_nodes() ? dist.node_p0 : dist.edge_p0;
      const double p =
          interp_prob_at(g_t.dim_state(d), atoms[a]->dim_state(d), p0, t);
      logw[a] += p > 0.0 ? std::log(p)
                         : -std::numeric_limits<double>::infinity();
    }
  }
  const double lw_max = *std::max_element(logw.begin(), logw.end());
  std::vector<double> w(atoms.size(), 0.0);
  double total = 0.0;
  if (std::isfinite(lw_max)) {
    for (std::size_t a = 0; a < atoms.size(); ++a) {
      w[a] = std::exp(logw[a] - lw_max);
      total += w[a];
    }
  }

  ProbGraph post = ProbGraph::uniform(g_t.n_nodes(), dist.x_card, dist.e_card);
  if (total <= 0.0) return post;  // G_t impossible under every atom
  for (int d = 0; d < g_t.dims(); ++d) {
    auto& probs = post.mutable_dim_probs(d);
    std::fill(probs.begin(), probs.end(), 0.0);
    for (std::size_t a = 0; a < atoms.size(); ++a)
      probs[atoms[a]->dim_state(d)] += w[a] / total;
  }
  return post;
}

OracleDenoiser::OracleDenoiser(GraphDataset dataset, InitialDistribution dist)
    : dataset_(std::move(dataset)), dist_(std::move(dist)) {
  dataset_.validate();
  dist_.validate();
}

ProbGraph OracleDenoiser::posterior(const CategoricalGraph& g_t, double t,
                                    std::optional<int> label) const {
  return oracle_posterior(g_t, t, dataset_, dist_, label);
}

DenoiserParams::DenoiserParams(const Dims& dims) : dims_(dims) {
  if (dims.x_card < 1 || dims.e_card < 1 || dims.rrwp_depth < 1 ||
      dims.hidden < 1 || dims.label_card < 0)
    throw std::invalid_argument("denoiser params: bad dimensions");
  const std::size_t n_in = dims.node_in(), e_in = dims.edge_in();
  const std::size_t h = dims.hidden;
  theta_.assign(h * n_in + h + dims.x_card * h + dims.x_card +  //
                    h * e_in + h + dims.e_card * h + dims.e_card +
                    2 * h * dims.label_card,
                0.0);
}

void DenoiserParams::fill(double value) {
  std::fill(theta_.begin(), theta_.end(), value);
}

void DenoiserParams::init_random(Rng& rng, double scale) {
  for (double& v : theta_) v = scale * (2.0 * rng.uniform() - 1.0);
}

namespace {

// Flat layout: node W1,b1,W2,b2, edge W1,b1,W2,b2, then both label blocks.
template <typename T, typename Span>
std::pair<DenoiserParams::ViewsT<T>, DenoiserParams::ViewsT<T>> carve(
    Span theta, const DenoiserParams::Dims& d) {
  std::size_t off = 0;
  auto take = [&](std::size_t len) {
    auto s = theta.subspan(off, len);
    off += len;
    return s;
  };
  const std::size_t h = d.hidden;
  DenoiserParams::ViewsT<T> node{take(h * d.node_in()), take(h),
                                 take(d.x_card * h), take(d.x_card), {}};
  DenoiserParams::ViewsT<T> edge{take(h * d.edge_in()), take(h),
                                 take(d.e_card * h), take(d.e_card), {}};
  node.w1_label = take(h * d.label_card);
  edge.w1_label = take(h * d.label_card);
  return {node, edge};
}

}  // namespace

DenoiserParams::ViewsT<double> DenoiserParams::node_views() {
  return carve<double>(std::span<double>(theta_), dims_).first;
}
DenoiserParams::ViewsT<double> DenoiserParams::edge_views() {
  return carve<double>(std::span<double>(theta_), dims_).second;
}
DenoiserParams::ViewsT<const double> DenoiserParams::node_views() const {
  return carve<const double>(std::span<const double>(theta_), dims_).first;
}
DenoiserParams::ViewsT<const double> DenoiserParams::edge_views() const {
  return carve<const double>(std::span<const double>(theta_), dims_).second;
}

namespace {

struct Forward {
  std::vector<double> input;
  std::vector<double> hidden;   // tanh activations
  std::vector<double> probs;    // softmax output
};

void softmax(std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  double total = 0.0;
  for (double& x : v) {
    x = std::exp(x - m);
    total += x;
  }
  for (double& x : v) x /= total;
}

using Views = DenoiserParams::ViewsT<const double>;
using MutViews = DenoiserParams::ViewsT<double>;

Forward run_layer(const Views& v, std::vector<double> input,
                  std::optional<int> label, int hidden, int out,
                  int label_card) {
  Forward f;
  f.input = std::move(input);
  const int in = static_cast<int>(f.input.size());
  f.hidden.assign(hidden, 0.0);
  for (int h = 0; h < hidden; ++h) {
    double z = v.b1[h];
    for (int i = 0; i < in; ++i) z += v.w1[h * in + i] * f.input[i];
    if (label) z += v.w1_label[h * label_card + *label];
    f.hidden[h] = std::tanh(z);
  }
  f.probs.assign(out, 0.0);
  for (int o = 0; o < out; ++o) {
    double z = v.b2[o];
    for (int h = 0; h < hidden; ++h) z += v.w2[o * hidden + h] * f.hidden[h];
    f.probs[o] = z;
  }
  softmax(f.probs);
  return f;
}

// Backprop of weight * CE(target) through softmax + the hidden layer.
void backprop_layer(const Forward& f, int target, double weight,
                    std::optional<int> label, int label_card, const Views& v,
                    MutViews& grad) {
  const int out = static_cast<int>(f.probs.size());
  const int hidden = static_cast<int>(f.hidden.size());
  const int in = static_cast<int>(f.input.size());
  std::vector<double> dlogits(f.probs);
  dlogits[target] -= 1.0;
  for (double& d : dlogits) d *= weight;
  std::vector<double> dhidden(hidden, 0.0);
  for (int o = 0; o < out; ++o) {
    grad.b2[o] += dlogits[o];
    for (int h = 0; h < hidden; ++h) {
      grad.w2[o * hidden + h] += dlogits[o] * f.hidden[h];
      dhidden[h] += v.w2[o * hidden + h] * dlogits[o];
    }
  }
  for (int h = 0; h < hidden; ++h) {
    const double dz = dhidden[h] * (1.0 - f.hidden[h] * f.hidden[h]);
    grad.b1[h] += dz;
    for (int i = 0; i < in; ++i) grad.w1[h * in + i] += dz * f.input[i];
    if (label) grad.w1_label[h * label_card + *label] += dz;
  }
}

std::vector<double> node_input(const DenoiserParams::Dims& dims,
                               const CategoricalGraph& g_t,
                               const RrwpFeatures& feats, int n, double t) {
  std::vector<double> x;
  x.reserve(dims.node_in());
  const int onehot = dims.x_card + (dims.masking ? 1 : 0);
  for (int s = 0; s < onehot; ++s) x.push_back(g_t.node(n) == s ? 1.0 : 0.0);
  for (double v : feats.node_feats[n]) x.push_back(v);
  x.push_back(t);
  return x;
}

std::vector<double> edge_input(const DenoiserParams::Dims& dims,
                               const CategoricalGraph& g_t,
                               const RrwpFeatures& feats, int slot, double t) {
  std::vector<double> x;
  x.reserve(dims.edge_in());
  const auto [i, j] = g_t.slot_pair(slot);
  const int onehot = dims.e_card + (dims.masking ? 1 : 0);
  const int state = g_t.edge(i, j);
  for (int s = 0; s < onehot; ++s) x.push_back(state == s ? 1.0 : 0.0);
  for (int k = 0; k < dims.rrwp_depth; ++k)
    x.push_back(feats.node_feats[i][k] + feats.node_feats[j][k]);
  for (double v : feats.edge_feats[slot]) x.push_back(v);
  x.push_back(t);
  return x;
}

void check_input_graph(const DenoiserParams::Dims& dims,
                       const CategoricalGraph& g_t) {
  const int expect_x = dims.x_card + (dims.masking ? 1 : 0);
  const int expect_e = dims.e_card + (dims.masking ? 1 : 0);
  if (g_t.x_card() != expect_x || g_t.e_card() != expect_e)
    throw std::invalid_argument("denoiser: graph cardinality mismatch");
}

}  // namespace

ProbGraph predict(const DenoiserParams& params, const CategoricalGraph& g_t,
                  double t, std::optional<int> label) {
  const auto& dims = params.dims();
  check_input_graph(dims, g_t);
  if (label && (*label < 0 || *label >= dims.label_card))
    throw std::invalid_argument("denoiser: label out of range");
  const int mask_edge = dims.masking ? dims.e_card : -1;
  const RrwpFeatures feats = rrwp(g_t, dims.rrwp_depth, mask_edge);

  ProbGraph out;
  out.n_nodes = g_t.n_nodes();
  out.x_card = dims.x_card;
  out.e_card = dims.e_card;
  const auto nv = params.node_views();
  const auto ev = params.edge_views();
  for (int n = 0; n < g_t.n_nodes(); ++n)
    out.node_probs.push_back(run_layer(nv, node_input(dims, g_t, feats, n, t),
                                       label, dims.hidden, dims.x_card,
                                       dims.label_card)
                                 .probs);
  for (int slot = 0; slot < g_t.n_edge_slots(); ++slot)
    out.edge_probs.push_back(
        run_layer(ev, edge_input(dims, g_t, feats, slot, t), label,
                  dims.hidden, dims.e_card, dims.label_card)
            .probs);
  return out;
}

double loss_and_grad(const DenoiserParams& params,
                     std::span<const TrainBatchItem> batch, double lambda,
                     DenoiserParams& grads) {
  if (batch.empty()) throw std::invalid_argument("loss_and_grad: empty batch");
  if (!(lambda > 0.0)) throw std::invalid_argument("loss_and_grad: lambda <= 0");
  if (!(grads.dims() == params.dims()))
    throw std::invalid_argument("loss_and_grad: grad shape mismatch");
  grads.fill(0.0);

  const auto& dims = params.dims();
  const auto nv = params.node_views();
  const auto ev = params.edge_views();
  auto gn = grads.node_views();
  auto ge = grads.edge_views();
  const double inv_batch = 1.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  for (const auto& item : batch) {
    check_input_graph(dims, item.g_t);
    const int mask_edge = dims.masking ? dims.e_card : -1;
    const RrwpFeatures feats = rrwp(item.g_t, dims.rrwp_depth, mask_edge);
    for (int n = 0; n < item.g_t.n_nodes(); ++n) {
      const Forward f =
          run_layer(nv, node_input(dims, item.g_t, feats, n, item.t),
                    item.label, dims.hidden, dims.x_card, dims.label_card);
      const int target = item.g1.node(n);
      loss -= inv_batch * std::log(std::max(f.probs[target], 1e-30));
      backprop_layer(f, target, inv_batch, item.label, dims.label_card, nv, gn);
    }
    for (int slot = 0; slot < item.g_t.n_edge_slots(); ++slot) {
      const Forward f =
          run_layer(ev, edge_input(dims, item.g_t, feats, slot, item.t),
                    item.label, dims.hidden, dims.e_card, dims.label_card);
      const auto [i, j] = item.g1.slot_pair(slot);
      const int target = item.g1.edge(i, j);
      loss -= lambda * inv_batch * std::log(std::max(f.probs[target], 1e-30));
      backprop_layer(f, target, lambda * inv_batch, item.label,
                     dims.label_card, ev, ge);
    }
  }
  return loss;
}

std::string params_to_json(const DenoiserParams& params) {
  const auto& d = params.dims();
  json out;
  out["format"] = 1;
  out["dims"] = {{"x_card", d.x_card},       {"e_card", d.e_card},
                 {"label_card", d.label_card}, {"rrwp_depth", d.rrwp_depth},
                 {"hidden", d.hidden},       {"masking", d.masking}};
  out["theta"] = std::vector<double>(params.theta().begin(),
                                     params.theta().end());
  return out.dump();
}

DenoiserParams params_from_json(const std::string& text) {
  const json v = json::parse(text);
  if (v.at("format").get<int>() != 1)
    throw std::invalid_argument("checkpoint: unknown format version");
  const auto& jd = v.at("dims");
  DenoiserParams::Dims dims;
  dims.x_card = jd.at("x_card").get<int>();
  dims.e_card = jd.at("e_card").get<int>();
  dims.label_card = jd.at("label_card").get<int>();
  dims.rrwp_depth = jd.at("rrwp_depth").get<int>();
  dims.hidden = jd.at("hidden").get<int>();
  dims.masking = jd.at("masking").get<bool>();
  DenoiserParams params(dims);
  const auto& theta = v.at("theta");
  if (theta.size() != params.size())
    throw std::invalid_argument("checkpoint: theta length mismatch");
  for (std::size_t i = 0; i < params.size(); ++i)
    params.theta()[i] = theta[i].get<double>();
  return params;
}

void save_params(const DenoiserParams& params, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint: " + path);
  out << params_to_json(params) << "\n";
}

DenoiserParams load_params(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return params_from_json(text);
}

}  // namespace graphflow
