#include "graphflow/ctmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphflow {

namespace {

// Positivity threshold for p_{t|1} support membership.
constexpr double kSupportEps = 1e-15;

bool in_support(double p) { return p > kSupportEps; }

int argmax_index(std::span<const double> v) {
  return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
}

}  // namespace

DbDesign db_design_from_string(const std::string& name) {
  if (name == "general") return DbDesign::kGeneral;
  if (name == "column_max_marginal") return DbDesign::kColumnMaxMarginal;
  if (name == "column_x1") return DbDesign::kColumnX1;
  if (name == "column_argmax_pt") return DbDesign::kColumnArgmaxPt;
  if (name == "entry_max_marginal") return DbDesign::kEntryMaxMarginal;
  throw std::invalid_argument("unknown db design: " + name);
}

std::string to_string(DbDesign design) {
  switch (design) {
    case DbDesign::kGeneral: return "general";
    case DbDesign::kColumnMaxMarginal: return "column_max_marginal";
    case DbDesign::kColumnX1: return "column_x1";
    case DbDesign::kColumnArgmaxPt: return "column_argmax_pt";
    case DbDesign::kEntryMaxMarginal: return "entry_max_marginal";
  }
  return "?";
}

void RateRow::rebalance(int diagonal_state) {
  rates[diagonal_state] = 0.0;
  double off = 0.0;
  for (int j = 0; j < size(); ++j)
    if (j != diagonal_state) off += rates[j];
  rates[diagonal_state] = -off;
}

double interp_prob_at(int z, int z1, std::span<const double> p0, double t) {
  return (z == z1 ? t : 0.0) + (1.0 - t) * p0[z];
}

std::vector<double> interp_prob(int z1, std::span<const double> p0, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("interp_prob: t outside [0,1]");
  std::vector<double> p(p0.size());
  for (int z = 0; z < static_cast<int>(p0.size()); ++z)
    p[z] = interp_prob_at(z, z1, p0, t);
  return p;
}

std::vector<double> interp_deriv(int z1, std::span<const double> p0) {
  std::vector<double> d(p0.size());
  for (int z = 0; z < static_cast<int>(p0.size()); ++z)
    d[z] = (z == z1 ? 1.0 : 0.0) - p0[z];
  return d;
}

int support_count(int z1, std::span<const double> p0, double t) {
  int count = 0;
  for (int z = 0; z < static_cast<int>(p0.size()); ++z)
    if (in_support(interp_prob_at(z, z1, p0, t))) ++count;
  return count;
}

RateRow rstar_row(int z_t, int z1, std::span<const double> p0, double t) {
  const int n = static_cast<int>(p0.size());
  RateRow row(n);
  const double p_zt = interp_prob_at(z_t, z1, p0, t);
  if (!in_support(p_zt)) return row;  // dead states cannot act
  const auto deriv = interp_deriv(z1, p0);
  const double denom = support_count(z1, p0, t) * p_zt;
  for (int j = 0; j < n; ++j) {
    if (j == z_t) continue;
    if (!in_support(interp_prob_at(j, z1, p0, t))) continue;  // nor resurrect
    row[j] = std::max(0.0, deriv[j] - deriv[z_t]) / denom;
  }
  row.rebalance(z_t);
  return row;
}

RateRow guidance_row(int z_t, int z1, std::span<const double> p0, double t,
                     double omega) {
  const int n = static_cast<int>(p0.size());
  RateRow row(n);
  if (omega < 0.0) throw std::invalid_argument("guidance_row: omega < 0");
  const double p_zt = interp_prob_at(z_t, z1, p0, t);
  if (omega == 0.0 || z_t == z1 || !in_support(p_zt)) return row;
  row[z1] = omega / (support_count(z1, p0, t) * p_zt);
  row.rebalance(z_t);
  return row;
}

RateRow db_row(int z_t, int z1, std::span<const double> p0, double t,
               DbDesign design) {
  const int n = static_cast<int>(p0.size());
  RateRow row(n);
  const auto p = interp_prob(z1, p0, t);
  if (!in_support(p[z_t])) return row;

  // Pattern membership: which off-diagonal entries (z_t -> j) survive.
  // Keeping a column also keeps its mirrored row so the balance identity
  // stays entrywise.
  auto keep = [&](int j) {
    switch (design) {
      case DbDesign::kGeneral:
        return true;
      case DbDesign::kColumnMaxMarginal: {
        const int c = argmax_index(p0);
        return z_t == c || j == c;
      }
      case DbDesign::kColumnX1:
        return z_t == z1 || j == z1;
      case DbDesign::kColumnArgmaxPt: {
        const int c = argmax_index(p);
        return z_t == c || j == c;
      }
      case DbDesign::kEntryMaxMarginal: {
        const int c = argmax_index(p0);
        return (z_t == c && j == z1) || (z_t == z1 && j == c);
      }
    }
    return false;
  };

  // R(a, b) = p_{t|1}(b|z1) on the retained pattern satisfies the balance
  // identity p(a) R(a,b) = p(b) R(b,a) identically.
  for (int j = 0; j < n; ++j) {
    if (j == z_t || !keep(j)) continue;
    row[j] = p[j];
  }
  row.rebalance(z_t);
  return row;
}

RateRow combined_row(int z_t, int z1, std::span<const double> p0, double t,
                     const RateConfig& cfg) {
  RateRow row = rstar_row(z_t, z1, p0, t);
  if (cfg.eta != 0.0) {
    const RateRow db = db_row(z_t, z1, p0, t, cfg.db_design);
    for (int j = 0; j < row.size(); ++j) row[j] += cfg.eta * db[j];
  }
  if (cfg.omega != 0.0) {
    const RateRow tg = guidance_row(z_t, z1, p0, t, cfg.omega);
    for (int j = 0; j < row.size(); ++j) row[j] += tg[j];
  }
  row.rebalance(z_t);
  return row;
}

std::vector<double> kolmogorov_residual(
    const std::function<RateRow(int)>& rate_row_of, int z1,
    std::span<const double> p0, double t) {
  const int n = static_cast<int>(p0.size());
  const auto p = interp_prob(z1, p0, t);
  const auto deriv = interp_deriv(z1, p0);
  std::vector<RateRow> rows;
  rows.reserve(n);
  for (int z = 0; z < n; ++z) rows.push_back(rate_row_of(z));
  std::vector<double> residual(n, 0.0);
  for (int z = 0; z < n; ++z) {
    double inflow = 0.0, outflow = 0.0;
    for (int zp = 0; zp < n; ++zp) {
      if (zp == z) continue;
      inflow += rows[zp][z] * p[zp];
      outflow += rows[z][zp] * p[z];
    }
    residual[z] = inflow - outflow - deriv[z];
  }
  return residual;
}

CategoricalGraph noise_graph(const CategoricalGraph& g1,
                             const InitialDistribution& dist, double t,
                             Rng& rng) {
  if (g1.x_card() != dist.x_card || g1.e_card() != dist.e_card)
    throw std::invalid_argument("noise_graph: cardinality mismatch");
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("noise_graph: t outside [0,1]");
  CategoricalGraph g_t(g1.n_nodes(), dist.node_state_count(),
                       dist.edge_state_count());
  for (int d = 0; d < g1.dims(); ++d) {
    const auto& p0 = d < g1.n_nodes() ? dist.node_p0 : dist.edge_p0;
    const auto probs = interp_prob(g1.dim_state(d), p0, t);
    g_t.set_dim_state(d, rng.categorical(probs));
  }
  return g_t;
}

std::vector<double> euler_transition_vector(int z_t,
                                            std::span<const double> posterior,
                                            std::span<const double> p0,
                                            double t, double dt,
                                            const RateConfig& cfg, Rng* rng) {
  const int n = static_cast<int>(p0.size());
  RateRow expected(n);
  if (cfg.exact_expectation) {
    for (int z1 = 0; z1 < static_cast<int>(posterior.size()); ++z1) {
      if (posterior[z1] <= 0.0) continue;
      const RateRow row = combined_row(z_t, z1, p0, t, cfg);
      for (int j = 0; j < n; ++j) expected[j] += posterior[z1] * row[j];
    }
  } else {
    if (!rng)
      throw std::invalid_argument("euler_transition_vector: rng required");
    const int z1 = rng->categorical(posterior);
    expected = combined_row(z_t, z1, p0, t, cfg);
  }

  std::vector<double> probs(n, 0.0);
  probs[z_t] = 1.0;
  for (int j = 0; j < n; ++j) probs[j] += expected[j] * dt;
  if (probs[z_t] < -0.1)
    throw std::runtime_error("euler step too large: self-transition " +
                             std::to_string(probs[z_t]));
  double total = 0.0;
  for (double& q : probs) {
    q = std::max(0.0, q);
    total += q;
  }
  if (!(total > 0.0)) {
    // Everything clamped away; fall back to staying put.
    probs[z_t] = 1.0;
    total = 1.0;
  }
  for (double& q : probs) q /= total;
  return probs;
}

CategoricalGraph euler_step(const CategoricalGraph& g_t,
                            const ProbGraph& posterior,
                            const InitialDistribution& dist, double t,
                            double dt, const RateConfig& cfg, Rng& rng) {
  if (posterior.n_nodes != g_t.n_nodes() ||
      posterior.dims() != g_t.dims())
    throw std::invalid_argument("euler_step: posterior shape mismatch");
  if (t + dt > 1.0 + 1e-12)
    throw std::invalid_argument("euler_step: t + dt exceeds 1");

  CategoricalGraph next = g_t;
  const bool final_step = t + dt >= 1.0 - 1e-12;
  for (int d = 0; d < g_t.dims(); ++d) {
    const auto post = posterior.dim_probs(d);
    if (final_step) {
      // The interpolation is one-hot at t=1; land on the clean prediction.
      next.set_dim_state(d, rng.categorical(post));
      continue;
    }
    const auto& p0 = d < g_t.n_nodes() ? dist.node_p0 : dist.edge_p0;
    const auto probs = euler_transition_vector(g_t.dim_state(d), post, p0, t,
                                               dt, cfg, &rng);
    next.set_dim_state(d, rng.categorical(probs));
  }
  return next;
}

}  // namespace graphflow
