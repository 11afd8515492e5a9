#include "spindrift/llg.hpp"

#include <cmath>

#include "spindrift/operators.hpp"

namespace spindrift {

Vec3Field exchange_lap(const Vec3Field& m, const Grid& g) {
  Vec3Field out = Vec3Field::zero(g.nx(), g.ny());
  for (const CellRect& patch : g.patches) {
    out.x += lap_patch_neumann(m.x, g, patch);
    out.y += lap_patch_neumann(m.y, g, patch);
    out.z += lap_patch_neumann(m.z, g, patch);
  }
  return out;
}

Vec3Field effective_field(const Vec3Field& m, const Vec3Field& H,
                          const Vec3Field& s, const PhysParams& p,
                          const Grid& g) {
  Vec3Field h = exchange_lap(m, g);
  h.x += g.omega01 * (H.x + p.beta * s.x);
  h.y += g.omega01 * (H.y + p.beta * s.y);
  h.z += g.omega01 * (H.z + p.beta * s.z);
  return h;
}

std::array<Real, 3> g_inverse(const std::array<Real, 3>& m, Real alpha,
                              const std::array<Real, 3>& f) {
  const Real ax = alpha * m[0], ay = alpha * m[1], az = alpha * m[2];
  const Real a2 = ax * ax + ay * ay + az * az;
  const Real adf = ax * f[0] + ay * f[1] + az * f[2];
  const Real cx = ay * f[2] - az * f[1];
  const Real cy = az * f[0] - ax * f[2];
  const Real cz = ax * f[1] - ay * f[0];
  const Real inv = 1.0 / (1.0 + a2);
  return {(f[0] + cx + adf * ax) * inv, (f[1] + cy + adf * ay) * inv,
          (f[2] + cz + adf * az) * inv};
}

Vec3Field g_inverse(const Vec3Field& m, Real alpha, const Vec3Field& f) {
  const int nx = static_cast<int>(m.x.rows()), ny = static_cast<int>(m.x.cols());
  Vec3Field out = Vec3Field::zero(nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const std::array<Real, 3> v = g_inverse(
          {m.x(i, j), m.y(i, j), m.z(i, j)}, alpha,
          {f.x(i, j), f.y(i, j), f.z(i, j)});
      out.x(i, j) = v[0];
      out.y(i, j) = v[1];
      out.z(i, j) = v[2];
    }
  return out;
}

namespace {

Vec3Field llg_rhs(const Vec3Field& mm, const Vec3Field& H, const Vec3Field& s,
                  const PhysParams& p, const LLGConfig& cfg, const Grid& g) {
  const Vec3Field lap = exchange_lap(mm, g);
  Vec3Field h = lap;
  h.x += g.omega01 * (H.x + p.beta * s.x);
  h.y += g.omega01 * (H.y + p.beta * s.y);
  h.z += g.omega01 * (H.z + p.beta * s.z);
  const Vec3Field mh = cross(mm, h);
  Vec3Field out;
  if (cfg.scheme == LLGScheme::GILBERT_FORM)
    out = (1.0 + p.alpha * p.alpha) * g_inverse(mm, -p.alpha, mh);
  else
    out = mh - p.alpha * cross(mm, mh);
  if (cfg.eps_exchange_reg != 0.0) out = out + cfg.eps_exchange_reg * lap;
  return out;
}

}  // namespace

Vec3Field step_llg(const Vec3Field& m, const Vec3Field& H, const Vec3Field& s,
                   const PhysParams& p, const LLGConfig& cfg, Real dt,
                   const Grid& g) {
  if (!(dt > 0.0)) throw StabilityError("step_llg: dt must be positive");
  if (!all_finite(m) || !all_finite(H) || !all_finite(s))
    throw DataError("step_llg: non-finite input");
  const Real stiff = linf(H) + p.beta * linf(s) +
                     4.0 / (g.hx() * g.hx()) + 4.0 / (g.hy() * g.hy());
  if (dt * stiff > cfg.stability_cap + 1e-12)
    throw StabilityError("step_llg: dt exceeds the explicit stability cap");

  const Vec3Field k1 = llg_rhs(m, H, s, p, cfg, g);
  const Vec3Field mid = m + (0.5 * dt) * k1;
  const Vec3Field k2 = llg_rhs(mid, H, s, p, cfg, g);
  Vec3Field mp = m + dt * k2;

  if (cfg.project_each_step) {
    const int nx = g.nx(), ny = g.ny();
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const Real vx = mp.x(i, j), vy = mp.y(i, j), vz = mp.z(i, j);
        const Real n = std::sqrt(vx * vx + vy * vy + vz * vz);
        if (n == 0.0) continue;
        if (n < 0.5)
          throw StabilityError(
              "step_llg: magnetization defect past 1/2 before projection");
        mp.x(i, j) = vx / n;
        mp.y(i, j) = vy / n;
        mp.z(i, j) = vz / n;
      }
  }
  if (!all_finite(mp)) throw DataError("step_llg: non-finite result");
  return mp;
}

}  // namespace spindrift
