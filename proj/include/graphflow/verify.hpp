#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace graphflow {

/// Numerical checks of the rate-matrix identities and the Euler-kernel TV
/// behaviour, batched over randomized (z1, p0, t) probes across all four
/// source-distribution kinds. Each line is one named check with its
/// measured worst value against the pinned bound.
struct VerifyReport {
  struct Line {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double bound = 0.0;
  };
  std::vector<Line> lines;

  bool all_pass() const {
    for (const auto& l : lines)
      if (!l.pass) return false;
    return true;
  }
};

/// Kolmogorov residual of R* and of R* + eta R^DB for every design; bound
/// 1e-9 over `n_tuples` probes.
VerifyReport verify_kolmogorov(int n_tuples, std::uint64_t seed);

/// Residual of R* + R^omega against the closed-form violation
/// (-omega/Z>0 off the target, omega (Z>0 - 1)/Z>0 at it); bound 1e-9.
VerifyReport verify_target_guidance(int n_tuples, double omega,
                                    std::uint64_t seed);

/// Detailed balance identity entrywise for every design; bound 1e-12.
VerifyReport verify_detailed_balance(int n_tuples, std::uint64_t seed);

/// Exact-enumerator TV on the 2-node toy fixture with the oracle denoiser:
/// TV(1024) < 0.05 and TV(512)/TV(1024) in [1.5, 2.5].
VerifyReport verify_tv_scaling();

/// TV against the toy fixture for each step count (for CSV sweeps).
std::vector<std::pair<int, double>> tv_sweep(const std::vector<int>& steps,
                                             double omega = 0.0);

}  // namespace graphflow
