#pragma once

#include <cmath>
#include <random>

#include "spindrift/grid.hpp"

namespace spindrift {

// Uniform double in [0,1) by the explicit 53-bit mapping, so streams are
// bit-identical across standard libraries.
inline Real uniform01(std::mt19937_64& rng) {
  return static_cast<Real>(rng() >> 11) * 0x1.0p-53;
}

inline Real uniform(std::mt19937_64& rng, Real lo, Real hi) {
  return lo + (hi - lo) * uniform01(rng);
}

inline Field random_field(int nx, int ny, std::mt19937_64& rng, Real lo = -1.0,
                          Real hi = 1.0) {
  Field f(nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) f(i, j) = uniform(rng, lo, hi);
  return f;
}

inline Vec3Field random_vec3(int nx, int ny, std::mt19937_64& rng,
                             Real lo = -1.0, Real hi = 1.0) {
  Vec3Field u;
  u.x = random_field(nx, ny, rng, lo, hi);
  u.y = random_field(nx, ny, rng, lo, hi);
  u.z = random_field(nx, ny, rng, lo, hi);
  return u;
}

// Random low-order trigonometric series: smooth on the closed domain, with
// amplitudes decaying in the mode number.  Deterministic in the draw order.
inline Field random_smooth_field(const Grid& g, std::mt19937_64& rng,
                                 int modes = 3) {
  Field f = Field::Zero(g.nx(), g.ny());
  const Real pi = 3.14159265358979323846;
  for (int k = 0; k < modes; ++k)
    for (int l = 0; l < modes; ++l) {
      const Real a = uniform(rng, -1.0, 1.0) / (1.0 + k * k + l * l);
      const Real px = uniform(rng, 0.0, 2.0 * pi);
      const Real py = uniform(rng, 0.0, 2.0 * pi);
      for (int j = 0; j < g.ny(); ++j)
        for (int i = 0; i < g.nx(); ++i)
          f(i, j) += a * std::cos(k * pi * g.xc(i) / g.spec.Lx + px) *
                     std::cos(l * pi * g.yc(j) / g.spec.Ly + py);
    }
  return f;
}

inline Vec3Field random_smooth_vec3(const Grid& g, std::mt19937_64& rng,
                                    int modes = 3) {
  Vec3Field u;
  u.x = random_smooth_field(g, rng, modes);
  u.y = random_smooth_field(g, rng, modes);
  u.z = random_smooth_field(g, rng, modes);
  return u;
}

}  // namespace spindrift
