#pragma once

#include <vector>

#include "spindrift/grid.hpp"
#include "spindrift/state.hpp"

namespace spindrift {

// Eigenvalues ρ± = ρ ± |s| of the spin density matrix; positive is the
// pointwise hypothesis ρ > |s| of the dissipation estimate.
struct SpectralSplit {
  Field rho_plus, rho_minus;
  bool positive = false;
};
SpectralSplit spectral_split(const Field& rho, const Vec3Field& s);

// ½ Σ over layer-interior faces of the squared magnetization difference
// divided by the face spacing squared, times the cell area: the discrete
// ½∫_ω|∇m|² whose gradient is exactly the patch-Neumann exchange stencil.
Real exchange_energy(const Vec3Field& m, const Grid& g);

// Lyapunov functional ½∫((ρ−ρ_D)² + |s|² + |E|² + |H|²) + ½∫_ω|∇m|².
Real functional_S(const SimState& st, const Field& rho_D, const Grid& g);
Real functional_S(const SimState& st, Real rho_D, const Grid& g);

// Free energy split and the entropy dissipation rate.  E_spin uses ρ± with a
// positive clamp under the logarithms; diss_rate is NaN unless ρ > |s|
// everywhere.  clamped reports whether the clamp activated anywhere.
struct EnergyReport {
  Real E_total = 0.0, E_spin = 0.0, E_em = 0.0, E_ex = 0.0;
  Real diss_rate = kNaN;
  bool positive = false;
  bool clamped = false;
};
EnergyReport free_energy(const SimState& st, const Field& rho_D, const Grid& g,
                         Real floor = 1e-12, Real D = 1.0);
EnergyReport free_energy(const SimState& st, Real rho_D, const Grid& g,
                         Real floor = 1e-12, Real D = 1.0);

// Normalized p-norms N_p = (∫|s|^p / |Ω|)^{1/p} for p = 2, 4, ..., p_max
// (computed sup-scaled with repeated squaring), plus the exact sup.
struct LpLadder {
  std::vector<int> p;
  std::vector<Real> norm;
  Real sup = 0.0;
};
LpLadder lp_ladder(const Vec3Field& s, const Grid& g, int p_max = 256);

// Damping/relaxation threshold beta_max = sqrt(4α/(τ·M_T·(1+α²))).
struct BetaThreshold {
  Real beta_max = 0.0;
  bool ok = false;
};
BetaThreshold beta_threshold(const PhysParams& p, Real M_T);

// One output row of the verification suite.
struct DiagnosticsRecord {
  Real t = 0.0, S = 0.0;
  Real E_total = 0.0, E_spin = 0.0, E_em = 0.0, E_ex = 0.0;
  Real min_rho = 0.0, max_rho = 0.0, max_abs_s = 0.0, max_m_defect = 0.0;
  Real resE = 0.0, resH = 0.0;
  int picard_iters = 0;
  bool beta_ok = true;
  Real diss_rate = kNaN;
};

// Full evaluation at one state; M_T is the running max of ρ feeding the
// beta threshold.
DiagnosticsRecord diagnose(const SimState& st, const Grid& g,
                           const PhysParams& p, int picard_iters, Real M_T);

}  // namespace spindrift
