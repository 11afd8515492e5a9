#pragma once

#include <utility>

#include "spindrift/grid.hpp"

namespace spindrift {

// Source terms of the field step: je_term is the right side of the Ampère
// law (the drift-diffusion flux with zero third component, in mollified form
// when regularization is on); dm_dt is the Faraday source −∂t m, zero outside
// the magnetic layers.
struct MaxwellSources {
  Vec3Field je_term;
  Vec3Field dm_dt;

  static MaxwellSources zero(int nx, int ny) {
    return {Vec3Field::zero(nx, ny), Vec3Field::zero(nx, ny)};
  }
};

// One explicit-midpoint step of ∂t E = CURL3 H + je, ∂t H = −CURL3 E + dm,
// with tangential ghost mirroring enforcing E×ν = 0 on Dirichlet edges and
// H×ν = 0 on Neumann edges.  Sources are held fixed across the two stages so
// a constant source integrates exactly.  Requires dt ≤ cfl·min(hx, hy) with
// cfl ≤ 0.5.
std::pair<Vec3Field, Vec3Field> step_maxwell(const Vec3Field& E,
                                             const Vec3Field& H,
                                             const MaxwellSources& src,
                                             Real dt, const Grid& g,
                                             Real cfl = 0.5);

// Electromagnetic energy and the two Gauss-law residuals, the latter taken
// in the maximum norm over cells with fully central stencils.
struct EmReport {
  Real energy = 0.0;
  Real resE = 0.0;
  Real resH = 0.0;
};

EmReport em_energy_and_residuals(const Vec3Field& E, const Vec3Field& H,
                                 const Vec3Field& m, const Field& rho,
                                 const Field& C, const Grid& g);

}  // namespace spindrift
