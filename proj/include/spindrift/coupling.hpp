#pragma once

#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "spindrift/diagnostics.hpp"
#include "spindrift/llg.hpp"
#include "spindrift/maxwell.hpp"
#include "spindrift/regularize.hpp"
#include "spindrift/state.hpp"
#include "spindrift/transport.hpp"

namespace spindrift {

struct CouplingConfig {
  Real sigma = 1.0;       // homotopy weight on sources, couplings, contacts
  Real picard_tol = 1e-8;
  int picard_max = 50;
  Real dt = 0.0;
  Real t_end = 0.0;
  int output_every = 1;
  bool reverse_order = false;  // sensitivity study only: III→II→I
};

struct SimConfigs {
  CouplingConfig coupling;
  TransportConfig transport;
  LLGConfig llg;
  RegParams reg;
  Real maxwell_cfl = 0.5;
};

struct StepReport {
  int picard_iters = 0;
  Real final_residual = 0.0;
  Real wallclock = 0.0;
  std::vector<Real> residual_history;
};

// Relative discrete-L² change ‖a−b‖₂/(1+‖a‖₂) and its five-field sum: the
// fixed-point convergence metric.
Real rel_change(const Field& a, const Field& b, Real hx, Real hy);
Real rel_change(const Vec3Field& a, const Vec3Field& b, Real hx, Real hy);
Real state_change(const SimState& a, const SimState& b, const Grid& g);

// The compatibility gate before the time loop.  E·ν on insulating walls is
// exactly zero in the face-flux sense but is measured here by cell-value
// extrapolation, which carries O(h²) truncation; the default tolerance sits
// above that scale for the shipped grids.
struct RunOptions {
  bool skip_validation = false;
  Real validate_tol = 1e-3;
};

struct SimSinks {
  std::function<void(const DiagnosticsRecord&)> on_record;
  std::function<void(const SimState&, long long step)> on_snapshot;
};

// Whole-run reductions feeding the invariant checks: running extrema,
// Gauss-residual drift, per-step energy behavior, and the trapezoid/rectangle
// accumulators of the a-priori bound.
struct RunAggregates {
  Real M_T = 0.0;  // running max of ρ, from t=0
  Real min_rho = kInf;
  Real max_abs_s = 0.0;
  Real max_m_defect = 0.0;
  Real resE0 = 0.0, resH0 = 0.0;
  Real max_resE = 0.0, max_resH = 0.0;
  Real max_S = 0.0;
  Real max_state_change = 0.0;
  Real max_energy_increase = -kInf;  // max over valid steps of E(t+dt)−E(t)
  Real max_diss_violation = -kInf;   // max of diss − (E(t)−E(t+dt))/dt
  Real int_grad = 0.0;               // ∫ (‖∇ρ‖² + ‖∇s‖²) dt
  Real int_dtm = 0.0;                // ∫_ω ‖∂t m‖² dt
  int max_picard = 0;
  long long steps = 0;
  int invalid_energy_steps = 0;  // steps excluded from energy aggregates
};

struct RunResult {
  SimState state;
  std::vector<DiagnosticsRecord> records;
  RunAggregates agg;
};

// Per-step fixed-point operator and outer time loop.  The stepper caches the
// factorized transport systems and, when time mollification is on, the
// magnetization history.
class Simulator {
 public:
  Simulator(const Grid& g, const PhysParams& p, const SimConfigs& cfgs);

  // One time slab: Picard iteration of (I) Maxwell, (II) LLG, (III)
  // transport, then the field step is replayed with the converged sources so
  // the accepted update is in exact flux form.
  std::pair<SimState, StepReport> fixed_point_step(const SimState& st);

  RunResult run(const SimState& initial, const SimSinks& sinks = {},
                const RunOptions& opt = {});

  const Grid& grid() const { return *g_; }
  const PhysParams& params() const { return p_; }

 private:
  const Grid* g_;
  PhysParams p_;
  SimConfigs cfg_;
  std::unique_ptr<TransportStepper> transport_;
  std::unique_ptr<TimeSmoother> m_history_;  // only when eps_t > 0

  Vec3Field faraday_source(const SimState& base, const Vec3Field& m_new) const;
  Vec3Field ampere_source(const Field& rho, const Vec3Field& E) const;
};

// Single step built from scratch (tests, single-shot callers).
std::pair<SimState, StepReport> fixed_point_step(const SimState& st,
                                                 const PhysParams& p,
                                                 const SimConfigs& cfgs,
                                                 const Grid& g);

RunResult run_simulation(const SimState& initial, const PhysParams& p,
                         const SimConfigs& cfgs, const Grid& g,
                         const SimSinks& sinks = {},
                         const RunOptions& opt = {});

}  // namespace spindrift
