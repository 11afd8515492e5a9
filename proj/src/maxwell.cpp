#include "spindrift/maxwell.hpp"

#include <algorithm>

#include "spindrift/measure.hpp"
#include "spindrift/operators.hpp"

namespace spindrift {

std::pair<Vec3Field, Vec3Field> step_maxwell(const Vec3Field& E,
                                             const Vec3Field& H,
                                             const MaxwellSources& src,
                                             Real dt, const Grid& g,
                                             Real cfl) {
  if (!(dt > 0.0)) throw StabilityError("step_maxwell: dt must be positive");
  if (!(cfl > 0.0) || cfl > 0.5)
    throw StabilityError("step_maxwell: cfl must lie in (0, 0.5]");
  if (dt > cfl * std::min(g.hx(), g.hy()))
    throw StabilityError("step_maxwell: dt exceeds cfl * min(hx, hy)");
  if (!all_finite(src.je_term) || !all_finite(src.dm_dt))
    throw DataError("step_maxwell: non-finite source");

  const CurlBc bcE = curl_bc_electric(g.tags);
  const CurlBc bcH = curl_bc_magnetic(g.tags);

  const Vec3Field Eh = E + (0.5 * dt) * (curl3(H, g, bcH) + src.je_term);
  const Vec3Field Hh = H + (0.5 * dt) * (src.dm_dt - curl3(E, g, bcE));
  Vec3Field En = E + dt * (curl3(Hh, g, bcH) + src.je_term);
  Vec3Field Hn = H + dt * (src.dm_dt - curl3(Eh, g, bcE));
  return {std::move(En), std::move(Hn)};
}

EmReport em_energy_and_residuals(const Vec3Field& E, const Vec3Field& H,
                                 const Vec3Field& m, const Field& rho,
                                 const Field& C, const Grid& g) {
  EmReport r;
  r.energy = 0.5 * (sq_l2(E, g.hx(), g.hy()) + sq_l2(H, g.hx(), g.hy()));

  const DivBc bc = measure_div_bc(g);
  const Field dE = div2(planar(E), g, bc) - (rho - C);
  Vec2Field hm{H.x + m.x, H.y + m.y};
  const Field dH = div2(hm, g, bc);
  r.resE = linf_interior2(g, dE);
  r.resH = linf_interior2(g, dH);
  return r;
}

}  // namespace spindrift
