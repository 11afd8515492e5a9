#pragma once

#include <memory>

#include "spindrift/grid.hpp"
#include "spindrift/linsolve.hpp"
#include "spindrift/state.hpp"

namespace spindrift {

struct TransportConfig {
  bool diffusion_implicit = true;
  Real linsolve_tol = 1e-10;
  int linsolve_max_iter = 20000;
  bool positivity_clip = false;  // diagnostic clamp of undershoots
  bool exact_reaction = true;    // rotation+decay reaction integrator
};

// Closures realizing the transport boundary data: Dirichlet mirrors carry
// the contact value (rho_D for the charge, 0 for the spin), insulating sides
// mirror evenly so the normal flux vanishes at the wall.  The outer
// divergence is one-sided at contacts and odd at insulating sides; the
// odd-odd pairing telescopes, conserving mass exactly on insulated sides.
GradBc transport_grad_bc_rho(const Grid& g, Real rho_D);
GradBc transport_grad_bc_s(const Grid& g);
DivBc transport_div_bc(const Grid& g);

// Charge and spin fluxes on given fields: Je = D(∇ρ − σ[ρ]_M E₂), row i of
// Js = D(∇s_i − σ·dir_i·E₂) with dir = spin_direction(s, M).  M_trunc = ∞
// produces the untruncated forms (raw ρ in the drift).
FluxPair compute_fluxes(const Field& rho, const Vec3Field& s,
                        const Vec3Field& E, const PhysParams& p, const Grid& g,
                        Real sigma = 1.0);

// Ampère-source charge flux σ·D(∇(rho_grad) − [rho_drift]_M E₂) with the
// contact closure at σ·rho_D.  rho_grad is the (optionally mollified) field
// under the gradient; rho_drift the raw drift coefficient.
Vec2Field ampere_flux(const Field& rho_grad, const Field& rho_drift,
                      const Vec3Field& E, const PhysParams& p, const Grid& g,
                      Real sigma = 1.0);

// Pointwise reaction integrators for ∂t s = −σγ m×(truncated s) − s/τ.  The
// exact form rotates s about m by the truncation-scaled angle and applies the
// e^{−dt/τ} factor: unconditionally stable, |s|-preserving under rotation.
Vec3Field reaction_exact(const Vec3Field& s, const Vec3Field& m,
                         const PhysParams& p, Real dt, Real sigma = 1.0);
// Forward-Euler variant s − dt·(σγ m×[s] + s/τ).
Vec3Field reaction_explicit(const Vec3Field& s, const Vec3Field& m,
                            const PhysParams& p, Real dt, Real sigma = 1.0);

struct TransportResult {
  Field rho;
  Vec3Field s;
  // Accepted-update flux: the new density equals the old one plus
  // dt·DIV2(flux) plus dt·source, exactly.  Drift carries the σ factor.
  FluxPair flux;
  // σ·(diffusive − unscaled drift) charge flux: the Ampère source form.
  // Coincides bitwise with flux.je at σ = 1.
  Vec2Field ampere_je;
};

// Semi-implicit stepper with the linear solves factorized once per (grid,
// dt): backward-Euler diffusion, explicit centered drift (coefficient fields
// default to the stepped fields; the fixed-point pass supplies the previous
// iterate), then the pointwise reaction.
class TransportStepper {
 public:
  TransportStepper(const Grid& g, const PhysParams& p,
                   const TransportConfig& cfg, Real dt, Real sigma = 1.0);

  TransportResult step(const Field& rho, const Vec3Field& s,
                       const Vec3Field& E, const Vec3Field& m,
                       const Field* rho_coeff = nullptr,
                       const Vec3Field* s_coeff = nullptr,
                       const Field* rho_source = nullptr,
                       const Vec3Field* s_source = nullptr) const;

  Real dt() const { return dt_; }
  Real sigma() const { return sigma_; }

 private:
  const Grid* g_;
  PhysParams p_;
  TransportConfig cfg_;
  Real dt_ = 0.0;
  Real sigma_ = 1.0;
  GradBc bc_rho_, bc_s_;
  DivBc div_bc_;
  Field affine_rho_;  // dt·D·(contact-value closure offset), added to the RHS
  std::unique_ptr<StencilSolver> sol_rho_, sol_s_;
};

// One step built from scratch (convenience for tests and single calls).
TransportResult step_transport(const Field& rho, const Vec3Field& s,
                               const Vec3Field& E, const Vec3Field& m,
                               const PhysParams& p, const TransportConfig& cfg,
                               Real dt, const Grid& g, Real sigma = 1.0);

}  // namespace spindrift
