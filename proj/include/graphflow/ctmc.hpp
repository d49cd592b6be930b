#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "graphflow/graph.hpp"
#include "graphflow/initial_dist.hpp"
#include "graphflow/rng.hpp"

namespace graphflow {

/// Shapes of the additive detailed-balance term R^DB. All satisfy
/// p_{t|1}(z) R(z,z') = p_{t|1}(z') R(z',z) entrywise; the sparse designs
/// zero entries outside their pattern symmetrically.
enum class DbDesign {
  kGeneral,
  kColumnMaxMarginal,
  kColumnX1,
  kColumnArgmaxPt,
  kEntryMaxMarginal,
};

DbDesign db_design_from_string(const std::string& name);
std::string to_string(DbDesign design);

struct RateConfig {
  double omega = 0.0;  // target-guidance weight
  double eta = 0.0;    // stochasticity level
  DbDesign db_design = DbDesign::kGeneral;
  bool exact_expectation = false;
};

/// One row of a rate matrix: off-diagonal entries >= 0, diagonal set so the
/// row sums to zero.
struct RateRow {
  explicit RateRow(int n_states) : rates(n_states, 0.0) {}
  std::vector<double> rates;

  int size() const { return static_cast<int>(rates.size()); }
  double& operator[](int i) { return rates[i]; }
  double operator[](int i) const { return rates[i]; }
  /// Recomputes the diagonal from the off-diagonal entries.
  void rebalance(int diagonal_state);
};

/// Linear interpolation p_{t|1}(z|z1) = t d(z,z1) + (1-t) p0(z).
std::vector<double> interp_prob(int z1, std::span<const double> p0, double t);
double interp_prob_at(int z, int z1, std::span<const double> p0, double t);

/// Time derivative of the interpolation: d(z,z1) - p0(z).
std::vector<double> interp_deriv(int z1, std::span<const double> p0);

/// Number of states with p_{t|1}(z|z1) above the positivity threshold.
int support_count(int z1, std::span<const double> p0, double t);

// Conditional rate rows at the current state z_t. Rows of dead states
// (p_{t|1}(z_t|z1) = 0) are identically zero, and no rate ever points into a
// dead state: the Kolmogorov accounting treats transitions within the
// support only.
RateRow rstar_row(int z_t, int z1, std::span<const double> p0, double t);
RateRow guidance_row(int z_t, int z1, std::span<const double> p0, double t,
                     double omega);
RateRow db_row(int z_t, int z1, std::span<const double> p0, double t,
               DbDesign design);
/// rstar + eta * db + guidance, diagonal rebalanced last.
RateRow combined_row(int z_t, int z1, std::span<const double> p0, double t,
                     const RateConfig& cfg);

/// Residual of the z1-conditioned Kolmogorov equation at every state:
///   sum_{z' != z} R(z',z) p(z') - sum_{z' != z} R(z,z') p(z) - d/dt p(z).
/// Vanishes exactly for valid rate matrices.
std::vector<double> kolmogorov_residual(
    const std::function<RateRow(int)>& rate_row_of, int z1,
    std::span<const double> p0, double t);

/// Draws G_t ~ p_{t|1}(.|g1): every dimension interpolated independently.
/// Masking sources return graphs over the enlarged state space.
CategoricalGraph noise_graph(const CategoricalGraph& g1,
                             const InitialDistribution& dist, double t,
                             Rng& rng);

/// Per-dimension categorical transition vector of the Euler step,
///   d(z_t, .) + E_{posterior}[R(z_t, .|z1)] dt,
/// clamped to non-negative entries and renormalized. With
/// `exact_expectation` the posterior expectation is summed analytically;
/// otherwise one z1 is drawn from the posterior (rng required).
std::vector<double> euler_transition_vector(int z_t,
                                            std::span<const double> posterior,
                                            std::span<const double> p0,
                                            double t, double dt,
                                            const RateConfig& cfg, Rng* rng);

/// One Euler step over all dimensions, independently. A step landing on
/// t + dt = 1 draws the destination directly from the posterior (the rate
/// kernel degenerates there). Throws "step too large" if dt drives any
/// self-transition probability below -0.1 before clamping.
CategoricalGraph euler_step(const CategoricalGraph& g_t,
                            const ProbGraph& posterior,
                            const InitialDistribution& dist, double t,
                            double dt, const RateConfig& cfg, Rng& rng);

}  // namespace graphflow
