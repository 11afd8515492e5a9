#pragma once

// Measurement-only closure contexts and reductions shared by the residual
// diagnostics: one-sided stencils at walls (periodic on the torus), and
// infinity norms restricted to cells whose composite stencils are fully
// central.

#include "spindrift/grid.hpp"
#include "spindrift/operators.hpp"
#include "spindrift/types.hpp"

namespace spindrift {

inline SideClosures one_sided_sides() {
  return {Closure::one_sided(), Closure::one_sided()};
}

// Divergence context for residual measurement: no boundary condition is
// imposed, walls use one-sided stencils.
inline DivBc measure_div_bc(const Grid& g) {
  if (g.tags.periodic) return DivBc{periodic_sides(), periodic_sides()};
  return DivBc{one_sided_sides(), one_sided_sides()};
}

inline GradBc measure_grad_bc(const Grid& g) {
  if (g.tags.periodic) return GradBc{periodic_sides(), periodic_sides()};
  return GradBc{one_sided_sides(), one_sided_sides()};
}

// Max of |f| over the fully-central cells; 0 when that set is empty.
inline Real linf_interior2(const Grid& g, const Field& f) {
  Real m = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (g.interior2(i, j)) m = std::max(m, std::abs(f(i, j)));
  return m;
}

inline Vec2Field planar(const Vec3Field& u) { return Vec2Field{u.x, u.y}; }

}  // namespace spindrift
