#pragma once

#include "spindrift/grid.hpp"
#include "spindrift/types.hpp"

namespace spindrift {

// All unknown fields on one grid at one time level. m is stored on the full
// grid and is exactly zero outside omega; |m| = 1 on omega cells.
struct SimState {
  Field rho;
  Vec3Field s;
  Vec3Field E;
  Vec3Field H;
  Vec3Field m;
  Real t = 0.0;

  static SimState zero(int nx, int ny) {
    return SimState{Field::Zero(nx, ny), Vec3Field::zero(nx, ny),
                    Vec3Field::zero(nx, ny), Vec3Field::zero(nx, ny),
                    Vec3Field::zero(nx, ny), 0.0};
  }
};

struct PhysParams {
  Real alpha = 1.0;   // Gilbert damping, > 0
  Real beta = 0.1;    // magnetization-spin coupling, >= 0
  Real gamma = 1.0;   // precession strength, > 0
  Real D = 1.0;       // diffusivity, > 0
  Real tau = 1.0;     // spin-flip relaxation time, > 0
  Real M_trunc = kInf;  // truncation level; infinity disables truncation
  Field C;            // doping profile (per cell)
  Real rho_D = 1.0;   // Dirichlet charge level on Gamma_D, > 0
};

// Planar charge flux and the three planar spin-flux rows, all per cell.
struct FluxPair {
  Vec2Field je;
  std::array<Vec2Field, 3> js;

  static FluxPair zero(int nx, int ny) {
    return FluxPair{Vec2Field::zero(nx, ny),
                    {Vec2Field::zero(nx, ny), Vec2Field::zero(nx, ny),
                     Vec2Field::zero(nx, ny)}};
  }
};

// Clamp to [0, M]. With M = infinity this reduces to max(0, z).
inline Real truncate(Real z, Real M) { return std::min(M, std::max(0.0, z)); }
Field truncate(const Field& z, Real M);

// min(M, |s|) * s/|s|, continuously extended by 0 at s = 0. With M = infinity
// the input is returned unchanged (bit-exact).
std::array<Real, 3> spin_direction(const std::array<Real, 3>& s, Real M);
Vec3Field spin_direction(const Vec3Field& s, Real M);

struct InitialReport {
  Real resE = 0.0;           // ||DIV2 E - (rho - C)||_inf, interior cells
  Real resH = 0.0;           // ||DIV2 (H + m)_planar||_inf, interior cells
  Real max_en = 0.0;         // max |E . nu| on Gamma_N walls
  Real max_m_defect = 0.0;   // max | |m| - 1 | over omega cells
  Real max_m_outside = 0.0;  // max |m| over cells outside omega
  bool pass = false;
};

// Checks the compatibility conditions of the initial data. Residual norms are
// taken over cells whose full composite stencil is interior; E . nu at a
// Neumann wall is extrapolated from the first two cells as (3 u0 - u1) / 2.
InitialReport validate_initial(const Grid& grid, const SimState& state,
                               const PhysParams& params, Real tol);

// Builds E with DIV2 E = rho0 - C by solving the mixed Dirichlet/Neumann
// Poisson problem for a potential and taking its gradient; third component 0.
Vec3Field init_electric_field(const Grid& grid, const Field& rho0,
                              const Field& C, Real tol = 1e-10,
                              int max_iter = 200000);

}  // namespace spindrift
