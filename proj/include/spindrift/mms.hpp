#pragma once

#include <vector>

#include "spindrift/types.hpp"

namespace spindrift {

enum class MmsKind { TRANSPORT, MAXWELL, LLG_EXCHANGE };

struct MmsResult {
  MmsKind kind;
  std::vector<int> n;       // grid sizes of the ladder
  std::vector<Real> error;  // discrete L2 errors
  std::vector<Real> order;  // log2 of successive error ratios
};

// Refinement study against a manufactured solution with a compensating
// source.  Ladder entries must be multiples of 4 (the manufactured fields are
// symmetric about cell faces at x = 1/4, 3/4).  Throws AccuracyError when the
// finest-pair observed order falls below 1.5.
MmsResult run_mms_study(MmsKind kind,
                        const std::vector<int>& ladder = {32, 64, 128});

// Constant-density transport with no source: the update must be exact to
// rounding (stencils and closures are exact on constants).  Returns the max
// drift after `steps` steps.
Real transport_constant_defect(int n = 16, int steps = 10);

// Spatially uniform magnetization in a frozen axial field, against closed
// forms: pure precession (alpha = 0) about the z axis, and damped alignment
// obeying tan(theta(t)/2) = tan(theta0/2) exp(-alpha t).
struct MacrospinResult {
  Real t_end = 0.0;
  Real max_error = 0.0;      // precession: max field error; damping: |m3(T)-1|
  Real tan_law_error = 0.0;  // damping only: max tan-law deviation
};

MacrospinResult macrospin_precession(Real dt = 1e-3);
MacrospinResult macrospin_damping(Real alpha = 1.0, Real dt = 1e-3,
                                  Real t_end = 20.0, Real theta0 = 2.0);

}  // namespace spindrift
