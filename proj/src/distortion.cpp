#include "graphflow/distortion.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace graphflow {

namespace {

constexpr double kPi = std::numbers::pi;

double check_unit(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument(std::string(what) + " outside [0,1]");
  return t;
}

// d/dt f(t); the pdf of f(U) at u is 1 / f'(f^{-1}(u)). sin(pi t) is pinned
// to 0 at the endpoints, where the floating-point sin is merely tiny.
double sin_pi(double t) {
  if (t == 0.0 || t == 1.0) return 0.0;
  return std::sin(kPi * t);
}

double slope(DistortionKind kind, double t) {
  switch (kind) {
    case DistortionKind::kPolyinc: return 2.0 * t;
    case DistortionKind::kCos: return 0.5 * kPi * sin_pi(t);
    case DistortionKind::kIdentity: return 1.0;
    case DistortionKind::kRevcos: return 2.0 - 0.5 * kPi * sin_pi(t);
    case DistortionKind::kPolydec: return 2.0 - 2.0 * t;
  }
  return 0.0;
}

double bisect_inverse(DistortionKind kind, double u) {
  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (distort(kind, mid) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

DistortionKind distortion_from_string(const std::string& name) {
  if (name == "polyinc") return DistortionKind::kPolyinc;
  if (name == "cos") return DistortionKind::kCos;
  if (name == "identity") return DistortionKind::kIdentity;
  if (name == "revcos") return DistortionKind::kRevcos;
  if (name == "polydec") return DistortionKind::kPolydec;
  throw std::invalid_argument("unknown distortion: " + name);
}

std::string to_string(DistortionKind kind) {
  switch (kind) {
    case DistortionKind::kPolyinc: return "polyinc";
    case DistortionKind::kCos: return "cos";
    case DistortionKind::kIdentity: return "identity";
    case DistortionKind::kRevcos: return "revcos";
    case DistortionKind::kPolydec: return "polydec";
  }
  return "?";
}

double distort(DistortionKind kind, double t) {
  check_unit(t, "distort: t");
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;
  switch (kind) {
    case DistortionKind::kPolyinc: return t * t;
    case DistortionKind::kCos: return 0.5 * (1.0 - std::cos(kPi * t));
    case DistortionKind::kIdentity: return t;
    case DistortionKind::kRevcos:
      return 2.0 * t - 0.5 * (1.0 - std::cos(kPi * t));
    case DistortionKind::kPolydec: return t * (2.0 - t);
  }
  return t;
}

double distort_inverse(DistortionKind kind, double u) {
  check_unit(u, "distort_inverse: u");
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  switch (kind) {
    case DistortionKind::kPolyinc: return std::sqrt(u);
    case DistortionKind::kIdentity: return u;
    case DistortionKind::kPolydec: return 1.0 - std::sqrt(1.0 - u);
    case DistortionKind::kCos:
    case DistortionKind::kRevcos: return bisect_inverse(kind, u);
  }
  return u;
}

double distortion_pdf(DistortionKind kind, double u) {
  check_unit(u, "distortion_pdf: u");
  const double s = slope(kind, distort_inverse(kind, u));
  if (s <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / s;
}

std::vector<ScheduleStep> step_schedule(DistortionKind kind, int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("step_schedule: n_steps >= 1");
  std::vector<double> knots(n_steps + 1);
  for (int k = 0; k <= n_steps; ++k)
    knots[k] = distort(kind, static_cast<double>(k) / n_steps);
  knots.back() = 1.0;
  std::vector<ScheduleStep> steps(n_steps);
  for (int k = 0; k < n_steps; ++k)
    steps[k] = {knots[k], knots[k + 1] - knots[k]};
  return steps;
}

}  // namespace graphflow
