#include <doctest.h>

#include <cmath>
#include <limits>

#include "graphflow/distortion.hpp"
#include "graphflow/rng.hpp"
#include "support/stats.hpp"

using namespace graphflow;

namespace {
constexpr DistortionKind kAll[] = {DistortionKind::kPolyinc,
                                   DistortionKind::kCos,
                                   DistortionKind::kIdentity,
                                   DistortionKind::kRevcos,
                                   DistortionKind::kPolydec};
}

TEST_CASE("closed-form values") {
  CHECK(distort(DistortionKind::kIdentity, 0.3) == doctest::Approx(0.3));
  CHECK(distort(DistortionKind::kPolydec, 0.5) == doctest::Approx(0.75));
  CHECK(distort(DistortionKind::kCos, 0.5) == doctest::Approx(0.5));
  CHECK(distort(DistortionKind::kPolyinc, 0.5) == doctest::Approx(0.25));
  CHECK(distort(DistortionKind::kRevcos, 0.25) ==
        doctest::Approx(0.5 - 0.5 * (1.0 - std::cos(0.25 * 3.14159265358979323846))));
  CHECK_THROWS(distort(DistortionKind::kIdentity, -0.1));
  CHECK_THROWS(distort(DistortionKind::kIdentity, 1.1));
}

TEST_CASE("boundary pinning and monotonicity on a 1000-point grid") {
  for (auto kind : kAll) {
    CHECK(distort(kind, 0.0) == 0.0);
    CHECK(distort(kind, 1.0) == 1.0);
    double prev = 0.0;
    for (int i = 1; i <= 1000; ++i) {
      const double cur = distort(kind, i / 1000.0);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("inverse is accurate for every kind") {
  for (auto kind : kAll)
    for (double u : {0.001, 0.1, 0.37, 0.5, 0.73, 0.9, 0.999}) {
      const double t = distort_inverse(kind, u);
      CHECK(std::abs(distort(kind, t) - u) < 1e-10);
    }
}

TEST_CASE("pdf values and divergence markers") {
  CHECK(distortion_pdf(DistortionKind::kIdentity, 0.3) == doctest::Approx(1.0));
  // polydec: f^-1(u) = 1 - sqrt(1-u), derivative 1/(2 sqrt(1-u)) -> 0.5 at 0.
  CHECK(distortion_pdf(DistortionKind::kPolydec, 0.0) == doctest::Approx(0.5));
  CHECK(std::isinf(distortion_pdf(DistortionKind::kCos, 0.0)));
  CHECK(std::isinf(distortion_pdf(DistortionKind::kCos, 1.0)));
  CHECK(std::isinf(distortion_pdf(DistortionKind::kPolydec, 1.0)));
  CHECK(std::isinf(distortion_pdf(DistortionKind::kPolyinc, 0.0)));
  // revcos slope is bounded away from zero everywhere.
  CHECK(distortion_pdf(DistortionKind::kRevcos, 0.0) == doctest::Approx(0.5));
}

TEST_CASE("pdf integrates to 1 over (eps, 1-eps)") {
  // trapezoid over the interior; the integrable endpoint singularities
  // contribute O(sqrt(eps)).
  const double eps = 1e-6;
  const int n = 200000;
  for (auto kind : kAll) {
    double integral = 0.0;
    double prev = distortion_pdf(kind, eps);
    for (int i = 1; i <= n; ++i) {
      const double u = eps + (1.0 - 2.0 * eps) * i / n;
      const double cur = distortion_pdf(kind, u);
      integral += 0.5 * (prev + cur) * (1.0 - 2.0 * eps) / n;
      prev = cur;
    }
    CHECK(std::abs(integral - 1.0) < 1e-3);
  }
}

TEST_CASE("schedule identity n=4 and polydec n=2") {
  const auto id4 = step_schedule(DistortionKind::kIdentity, 4);
  REQUIRE(id4.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(id4[k].t == doctest::Approx(k * 0.25));
    CHECK(id4[k].dt == doctest::Approx(0.25));
  }
  const auto pd2 = step_schedule(DistortionKind::kPolydec, 2);
  REQUIRE(pd2.size() == 2);
  CHECK(pd2[0].t == 0.0);
  CHECK(pd2[0].dt == doctest::Approx(0.75));
  CHECK(pd2[1].t == doctest::Approx(0.75));
  CHECK(pd2[1].dt == doctest::Approx(0.25));
}

TEST_CASE("every schedule starts at 0, ends exactly on 1, sums exactly to 1") {
  for (auto kind : kAll)
    for (int n : {1, 2, 3, 17, 100, 1024}) {
      const auto sched = step_schedule(kind, n);
      REQUIRE(static_cast<int>(sched.size()) == n);
      CHECK(sched.front().t == 0.0);
      CHECK(sched.back().t + sched.back().dt == 1.0);
      // compensated (Neumaier) summation must hit 1 exactly
      double sum = 0.0, comp = 0.0;
      for (const auto& s : sched) {
        const double y = s.dt + comp;
        const double t = sum + y;
        comp = (std::abs(sum) >= std::abs(y)) ? (sum - t) + y : (y - t) + sum;
        sum = t;
      }
      CHECK(sum + comp == 1.0);
      for (const auto& s : sched) CHECK(s.dt > 0.0);
    }
}

TEST_CASE("sampled t' histograms match the pdf (chi-square at 1%)") {
  using namespace graphflow::testsupport;
  const int draws = 100000, bins = 50;
  for (auto kind : kAll) {
    Rng rng(2024 + static_cast<int>(kind));
    std::vector<double> ts(draws);
    for (double& t : ts) t = distort(kind, rng.uniform());
    const double chi2 = distortion_chi2(kind, ts, bins);
    CHECK(chi2 < chi2_critical(bins - 1, kZ99));
  }
}

TEST_CASE("distortion string round trip") {
  for (auto kind : kAll) CHECK(distortion_from_string(to_string(kind)) == kind);
  CHECK_THROWS(distortion_from_string("exp"));
}
