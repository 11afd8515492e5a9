#pragma once

#include <array>

#include "spindrift/grid.hpp"
#include "spindrift/state.hpp"

namespace spindrift {

enum class LLGScheme { EXPLICIT_RK2_PROJECT, GILBERT_FORM };

struct LLGConfig {
  Real eps_exchange_reg = 0.0;  // extra ε·Δm diffusion term
  LLGScheme scheme = LLGScheme::EXPLICIT_RK2_PROJECT;
  bool project_each_step = true;
  Real stability_cap = 0.5;
};

// Exchange Laplacian: the layer-local Neumann stencil summed over the
// magnetic patches (each layer closes onto itself), zero elsewhere.
Vec3Field exchange_lap(const Vec3Field& m, const Grid& g);

// Effective field Δm + H + β·s on ω-cells, zero outside ω.
Vec3Field effective_field(const Vec3Field& m, const Vec3Field& H,
                          const Vec3Field& s, const PhysParams& p,
                          const Grid& g);

// Closed-form inverse of v ↦ v − (αm)×v:
// v = (f + a×f + (a·f)a)/(1+|a|²), a = αm.
std::array<Real, 3> g_inverse(const std::array<Real, 3>& m, Real alpha,
                              const std::array<Real, 3>& f);
Vec3Field g_inverse(const Vec3Field& m, Real alpha, const Vec3Field& f);

// One magnetization step: two-stage explicit midpoint on
// rhs(m) = ε Δm + m×h − α m×(m×h), h = Δm + H + βs, either directly or via
// the algebraic inversion of the Gilbert form; then pointwise
// renormalization on cells with |m'| ≥ 1/2 (zero cells stay zero; a nonzero
// defect past 1/2 aborts the step).  Requires
// dt·(‖H‖∞ + β‖s‖∞ + 4/hx² + 4/hy²) ≤ stability cap.
Vec3Field step_llg(const Vec3Field& m, const Vec3Field& H, const Vec3Field& s,
                   const PhysParams& p, const LLGConfig& cfg, Real dt,
                   const Grid& g);

}  // namespace spindrift
