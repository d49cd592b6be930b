#pragma once

#include <string>
#include <vector>

namespace graphflow {

/// Monotone time reparameterizations of [0,1] with f(0)=0, f(1)=1. They skew
/// either the training-time distribution (t' = f(U)) or the sampling step
/// sizes, depending on where they are applied.
enum class DistortionKind { kPolyinc, kCos, kIdentity, kRevcos, kPolydec };

DistortionKind distortion_from_string(const std::string& name);
std::string to_string(DistortionKind kind);

/// f(t); throws outside [0,1].
double distort(DistortionKind kind, double t);

/// f^{-1}(u); closed form for the polynomial kinds, bisection to 1e-12 for
/// cos and revcos.
double distort_inverse(DistortionKind kind, double u);

/// Density of t' = f(U[0,1]) at u in [0,1]. Returns +infinity at endpoints
/// where the density diverges (e.g. cos at 0 and 1).
double distortion_pdf(DistortionKind kind, double u);

struct ScheduleStep {
  double t;
  double dt;
};

/// t_k = f(k/n), dt_k = f((k+1)/n) - t_k, with the last step landing exactly
/// on 1. Step starts never include t = 1.
std::vector<ScheduleStep> step_schedule(DistortionKind kind, int n_steps);

}  // namespace graphflow
