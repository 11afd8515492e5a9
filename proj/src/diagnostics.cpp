#include "spindrift/diagnostics.hpp"

#include <cmath>

#include "spindrift/maxwell.hpp"
#include "spindrift/measure.hpp"
#include "spindrift/operators.hpp"

namespace spindrift {

SpectralSplit spectral_split(const Field& rho, const Vec3Field& s) {
  require_same_shape(rho, s.x, "spectral_split");
  SpectralSplit out;
  const Field sn = squared_norm(s).sqrt();
  out.rho_plus = rho + sn;
  out.rho_minus = rho - sn;
  out.positive = (rho > sn).all();
  return out;
}

Real exchange_energy(const Vec3Field& m, const Grid& g) {
  const Real ihx2 = 1.0 / (g.hx() * g.hx());
  const Real ihy2 = 1.0 / (g.hy() * g.hy());
  Real acc = 0.0;
  auto face = [&](Real a, Real b, Real ih2) {
    const Real d = b - a;
    acc += d * d * ih2;
  };
  for (const CellRect& c : g.patches) {
    for (int j = c.j0; j <= c.j1; ++j)
      for (int i = c.i0; i < c.i1; ++i) {
        face(m.x(i, j), m.x(i + 1, j), ihx2);
        face(m.y(i, j), m.y(i + 1, j), ihx2);
        face(m.z(i, j), m.z(i + 1, j), ihx2);
      }
    for (int j = c.j0; j < c.j1; ++j)
      for (int i = c.i0; i <= c.i1; ++i) {
        face(m.x(i, j), m.x(i, j + 1), ihy2);
        face(m.y(i, j), m.y(i, j + 1), ihy2);
        face(m.z(i, j), m.z(i, j + 1), ihy2);
      }
  }
  return 0.5 * acc * g.hx() * g.hy();
}

Real functional_S(const SimState& st, const Field& rho_D, const Grid& g) {
  const Field drho = st.rho - rho_D;
  const Real quad = sq_l2(drho, g.hx(), g.hy()) + sq_l2(st.s, g.hx(), g.hy()) +
                    sq_l2(st.E, g.hx(), g.hy()) + sq_l2(st.H, g.hx(), g.hy());
  return 0.5 * quad + exchange_energy(st.m, g);
}

Real functional_S(const SimState& st, Real rho_D, const Grid& g) {
  return functional_S(st, Field::Constant(g.nx(), g.ny(), rho_D), g);
}

EnergyReport free_energy(const SimState& st, const Field& rho_D, const Grid& g,
                         Real floor, Real D) {
  if (!(rho_D.minCoeff() > 0.0))
    throw DataError("free_energy: rho_D must be positive");
  EnergyReport r;
  const SpectralSplit sp = spectral_split(st.rho, st.s);
  r.positive = sp.positive;

  const Field rp = sp.rho_plus.max(floor);
  const Field rm = sp.rho_minus.max(floor);
  r.clamped = (sp.rho_plus < floor).any() || (sp.rho_minus < floor).any();
  const Field lrp = rp.log();
  const Field lrm = rm.log();
  const Field lrd = rho_D.log();
  const Field spin_density =
      rp * (lrp - 1.0) + rm * (lrm - 1.0) - 2.0 * lrd * (st.rho - rho_D);
  r.E_spin = 0.5 * integral(spin_density, g.hx(), g.hy());

  const Vec2Field gld = grad2(lrd, g, measure_grad_bc(g));
  const Field em_density = (st.E.x - gld.x).square() +
                           (st.E.y - gld.y).square() + st.E.z.square() +
                           squared_norm(st.H);
  r.E_em = 0.5 * integral(em_density, g.hx(), g.hy());

  r.E_ex = exchange_energy(st.m, g);
  r.E_total = r.E_spin + r.E_em + r.E_ex;

  if (r.positive) {
    const GradBc bc = measure_grad_bc(g);
    const Vec2Field glp = grad2(lrp, g, bc);
    const Vec2Field glm = grad2(lrm, g, bc);
    const Field dp =
        (glp.x - st.E.x).square() + (glp.y - st.E.y).square();
    const Field dm =
        (glm.x - st.E.x).square() + (glm.y - st.E.y).square();
    r.diss_rate = 0.5 * D * integral(rp * dp + rm * dm, g.hx(), g.hy());
  }
  return r;
}

EnergyReport free_energy(const SimState& st, Real rho_D, const Grid& g,
                         Real floor, Real D) {
  return free_energy(st, Field::Constant(g.nx(), g.ny(), rho_D), g, floor, D);
}

LpLadder lp_ladder(const Vec3Field& s, const Grid& g, int p_max) {
  LpLadder out;
  const Field a = squared_norm(s).sqrt();
  out.sup = a.maxCoeff();
  const Real inv_area = 1.0 / (g.spec.Lx * g.spec.Ly);
  if (out.sup == 0.0) {
    for (int p = 2; p <= p_max; p *= 2) {
      out.p.push_back(p);
      out.norm.push_back(0.0);
    }
    return out;
  }
  Field cur = (a / out.sup).square();
  for (int p = 2; p <= p_max; p *= 2) {
    out.p.push_back(p);
    const Real mean = integral(cur, g.hx(), g.hy()) * inv_area;
    out.norm.push_back(out.sup * std::pow(mean, 1.0 / static_cast<Real>(p)));
    if (2 * p <= p_max) cur = cur.square();
  }
  return out;
}

BetaThreshold beta_threshold(const PhysParams& p, Real M_T) {
  if (!(p.alpha > 0.0) || !(p.tau > 0.0) || !(M_T > 0.0))
    throw DataError("beta_threshold: alpha, tau, M_T must be positive");
  BetaThreshold out;
  out.beta_max =
      std::sqrt(4.0 * p.alpha / (p.tau * M_T * (1.0 + p.alpha * p.alpha)));
  out.ok = p.beta <= out.beta_max;
  return out;
}

DiagnosticsRecord diagnose(const SimState& st, const Grid& g,
                           const PhysParams& p, int picard_iters, Real M_T) {
  DiagnosticsRecord r;
  r.t = st.t;
  r.S = functional_S(st, p.rho_D, g);
  const EnergyReport e = free_energy(st, p.rho_D, g, 1e-12, p.D);
  r.E_total = e.E_total;
  r.E_spin = e.E_spin;
  r.E_em = e.E_em;
  r.E_ex = e.E_ex;
  r.diss_rate = e.diss_rate;
  r.min_rho = st.rho.minCoeff();
  r.max_rho = st.rho.maxCoeff();
  r.max_abs_s = squared_norm(st.s).sqrt().maxCoeff();

  r.max_m_defect = 0.0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (g.mask.in_omega(i, j)) {
        const Real n = std::sqrt(st.m.x(i, j) * st.m.x(i, j) +
                                 st.m.y(i, j) * st.m.y(i, j) +
                                 st.m.z(i, j) * st.m.z(i, j));
        r.max_m_defect = std::max(r.max_m_defect, std::abs(n - 1.0));
      }

  const EmReport em = em_energy_and_residuals(st.E, st.H, st.m, st.rho, p.C, g);
  r.resE = em.resE;
  r.resH = em.resH;
  r.picard_iters = picard_iters;
  r.beta_ok = beta_threshold(p, M_T).ok;
  return r;
}

}  // namespace spindrift
