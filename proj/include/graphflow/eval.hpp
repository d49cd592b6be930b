#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "graphflow/graph.hpp"

namespace graphflow {

/// Connected and exactly N-1 skeleton edges.
bool is_tree(const CategoricalGraph& g);

struct VunReport {
  double valid_frac = 0.0;
  double unique_frac = 0.0;  // isomorphism classes / generated count
  double novel_frac = 0.0;   // not isomorphic to any training graph
  double vun_frac = 0.0;     // valid, class representative, and novel at once
};

VunReport vun(const std::vector<CategoricalGraph>& generated,
              const GraphDataset& train,
              const std::function<bool(const CategoricalGraph&)>& validity,
              int iso_cap = 12);

struct GraphStats {
  std::vector<int> degrees;
  std::vector<double> clustering;      // per node, 0 for degree < 2
  std::vector<double> laplacian_eigs;  // normalized Laplacian, ascending
};

GraphStats graph_stats(const CategoricalGraph& g);

/// Eigenvalues of a dense symmetric matrix by cyclic Jacobi rotations,
/// ascending. `a` is row-major n x n.
std::vector<double> symmetric_eigenvalues(std::vector<double> a, int n,
                                          double off_tol = 1e-9);

/// Squared maximum mean discrepancy between two descriptor sets under a
/// Gaussian kernel exp(-|x-y|^2 / (2 bw^2)). Unbiased by default (biased
/// form never goes negative and is 0 for identical sets).
double mmd2(const std::vector<std::vector<double>>& a,
            const std::vector<std::vector<double>>& b, double bandwidth,
            bool biased = false);

/// Median pairwise L2 distance within the reference set; 1.0 when fewer
/// than two points or a zero median.
double median_bandwidth(const std::vector<std::vector<double>>& reference);

// Per-graph descriptors feeding the MMD statistics. Histograms are
// normalized to simplexes; eigenvalues are binned over [0, 2].
std::vector<double> degree_descriptor(const GraphStats& s, int max_degree);
std::vector<double> clustering_descriptor(const GraphStats& s, int bins = 10);
std::vector<double> spectral_descriptor(const GraphStats& s, int bins = 200);

struct MmdReport {
  double degree_mmd2 = 0.0;
  double clustering_mmd2 = 0.0;
  double spectral_mmd2 = 0.0;
  // Per-statistic MMD2 of train vs test (the ratio denominators).
  double degree_base = 0.0;
  double clustering_base = 0.0;
  double spectral_base = 0.0;
  double ratio = 0.0;
};

/// MMD2 of each statistic between generated and test sets, plus the mean of
/// per-statistic ratios against the train-test distance. Statistics whose
/// train-test MMD is zero are excluded from the mean; throws if none remain.
MmdReport mmd_report(const std::vector<CategoricalGraph>& generated,
                     const std::vector<CategoricalGraph>& test,
                     const std::vector<CategoricalGraph>& train);

double ratio_metric(const std::vector<CategoricalGraph>& generated,
                    const std::vector<CategoricalGraph>& test,
                    const std::vector<CategoricalGraph>& train);

}  // namespace graphflow
