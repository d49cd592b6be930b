#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "graphflow/distortion.hpp"

namespace graphflow::testsupport {

/// Chi-square upper critical value by the Wilson-Hilferty approximation.
inline double chi2_critical(int dof, double z_upper) {
  const double a = 2.0 / (9.0 * dof);
  const double w = 1.0 - a + z_upper * std::sqrt(a);
  return dof * w * w * w;
}

/// Chi-square statistic of draws against a distortion's PDF over
/// equal-probability bins (edges f(i/bins), expected count n/bins each).
inline double distortion_chi2(DistortionKind kind,
                              std::span<const double> draws, int bins) {
  std::vector<double> edges(bins + 1);
  for (int i = 0; i <= bins; ++i)
    edges[i] = distort(kind, static_cast<double>(i) / bins);
  std::vector<int> counts(bins, 0);
  for (double d : draws) {
    int lo = 0, hi = bins;  // find bin with edges[b] <= d < edges[b+1]
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      (edges[mid] <= d ? lo : hi) = mid;
    }
    ++counts[lo];
  }
  const double expected = static_cast<double>(draws.size()) / bins;
  double chi2 = 0.0;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  return chi2;
}

constexpr double kZ99 = 2.3263478740408408;  // 99th percentile of N(0,1)

}  // namespace graphflow::testsupport
