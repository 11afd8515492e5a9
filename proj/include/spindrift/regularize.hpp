#pragma once

#include <deque>
#include <vector>

#include "spindrift/grid.hpp"

namespace spindrift {

// Smoothing lengths of the optional mollification applied to the Maxwell
// sources; zero means the identity operator.
struct RegParams {
  Real eps_x = 0.0;
  Real eps_t = 0.0;
};

// Separable triangle-kernel mollification of radius ceil(eps_x/h) cells per
// direction, reflecting at the domain boundary (wrapping on a periodic grid).
// Linear, positivity- and constant-preserving; identity when eps_x = 0.
Field smooth_space(const Field& u, Real eps_x, const Grid& g);
Vec3Field smooth_space(const Vec3Field& u, Real eps_x, const Grid& g);

// Causal moving average of a uniformly sampled series over the current plus
// ceil(eps_t/dt) past samples, reflecting at t = 0, together with the
// backward-difference derivative of the smoothed series (zero at the first
// sample).  eps_t = 0 reduces to the identity and the plain backward
// difference.
struct SmoothedSeries {
  std::vector<Real> value;
  std::vector<Real> deriv;
};
SmoothedSeries smooth_time(const std::vector<Real>& v, Real eps_t, Real dt);

// Streaming form of the time mollifier for field-valued series: push one
// sample per step; rate() is the backward difference of the smoothed stream.
// Early samples (fewer than the window) fold the reflected indices back into
// the available range, which keeps constants exact.  History is retained in
// full while the window is nontrivial.
class TimeSmoother {
 public:
  TimeSmoother(Real eps_t, Real dt);

  void push(const Vec3Field& sample);
  int window() const { return w_; }
  long long size() const { return static_cast<long long>(hist_.size()); }

  // Smoothed value at the newest sample.
  Vec3Field value() const;
  // Backward-difference rate of the smoothed stream; zero with one sample.
  Vec3Field rate() const;
  // Rate as if `next` were appended, without mutating the stream (the
  // fixed-point iteration probes candidate samples before accepting one).
  Vec3Field rate_with(const Vec3Field& next) const;

 private:
  Vec3Field window_mean(long long n) const;

  Real dt_ = 0.0;
  int w_ = 0;
  std::deque<Vec3Field> hist_;
};

// Discrete C1 norm max|u| + max|∇u| (one-sided closures), used to measure the
// operator constants of the mollifier.
Real c1_norm(const Field& u, const Grid& g);

// Measured operator norms of smooth_space over deterministic random fields:
// k0 bounds ‖Ru‖₂/‖u‖₂ (expected ≤ 1), k_eps bounds the C1 norm of Ru per
// unit ‖u‖₂.
struct RegConstants {
  Real k0 = 0.0;
  Real k_eps = 0.0;
};
RegConstants measure_reg_constants(const Grid& g, Real eps_x,
                                   unsigned long long seed, int samples);

}  // namespace spindrift
