#include "spindrift/transport.hpp"

#include <array>
#include <cmath>

#include "spindrift/operators.hpp"

namespace spindrift {

namespace {

Closure contact_or_even(const Grid& g, Side sd, Real value) {
  return g.tags.dirichlet(sd) ? Closure::dirichlet(value) : Closure::even();
}

Field drift_coeff_rho(const Field& rho, const PhysParams& p) {
  if (std::isinf(p.M_trunc)) return rho;
  return truncate(rho, p.M_trunc);
}

const Field& comp(const Vec3Field& u, int i) {
  return i == 0 ? u.x : (i == 1 ? u.y : u.z);
}

Field& comp(Vec3Field& u, int i) { return i == 0 ? u.x : (i == 1 ? u.y : u.z); }

}  // namespace

GradBc transport_grad_bc_rho(const Grid& g, Real rho_D) {
  if (g.tags.periodic) return {periodic_sides(), periodic_sides()};
  return {{contact_or_even(g, Side::XLo, rho_D),
           contact_or_even(g, Side::XHi, rho_D)},
          {contact_or_even(g, Side::YLo, rho_D),
           contact_or_even(g, Side::YHi, rho_D)}};
}

GradBc transport_grad_bc_s(const Grid& g) {
  return transport_grad_bc_rho(g, 0.0);
}

DivBc transport_div_bc(const Grid& g) {
  if (g.tags.periodic) return {periodic_sides(), periodic_sides()};
  auto cl = [&](Side sd) {
    return g.tags.dirichlet(sd) ? Closure::one_sided() : Closure::odd();
  };
  return {{cl(Side::XLo), cl(Side::XHi)}, {cl(Side::YLo), cl(Side::YHi)}};
}

FluxPair compute_fluxes(const Field& rho, const Vec3Field& s,
                        const Vec3Field& E, const PhysParams& p, const Grid& g,
                        Real sigma) {
  const GradBc brho = transport_grad_bc_rho(g, sigma * p.rho_D);
  const GradBc bs = transport_grad_bc_s(g);
  const Field rc = drift_coeff_rho(rho, p);
  const Vec3Field sdir = spin_direction(s, p.M_trunc);

  FluxPair f;
  const Vec2Field gr = grad2(rho, g, brho);
  f.je.x = p.D * (gr.x - sigma * rc * E.x);
  f.je.y = p.D * (gr.y - sigma * rc * E.y);
  for (int i = 0; i < 3; ++i) {
    const Vec2Field gs = grad2(comp(s, i), g, bs);
    f.js[i].x = p.D * (gs.x - sigma * comp(sdir, i) * E.x);
    f.js[i].y = p.D * (gs.y - sigma * comp(sdir, i) * E.y);
  }
  return f;
}

Vec2Field ampere_flux(const Field& rho_grad, const Field& rho_drift,
                      const Vec3Field& E, const PhysParams& p, const Grid& g,
                      Real sigma) {
  const GradBc brho = transport_grad_bc_rho(g, sigma * p.rho_D);
  const Vec2Field gr = grad2(rho_grad, g, brho);
  const Field rc = drift_coeff_rho(rho_drift, p);
  Vec2Field out;
  out.x = sigma * (p.D * gr.x - p.D * (rc * E.x));
  out.y = sigma * (p.D * gr.y - p.D * (rc * E.y));
  return out;
}

Vec3Field reaction_exact(const Vec3Field& s, const Vec3Field& m,
                         const PhysParams& p, Real dt, Real sigma) {
  const int nx = static_cast<int>(s.x.rows()), ny = static_cast<int>(s.x.cols());
  Vec3Field out = s;
  const Real decay = std::exp(-dt / p.tau);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      Real sx = s.x(i, j), sy = s.y(i, j), sz = s.z(i, j);
      const Real mx = m.x(i, j), my = m.y(i, j), mz = m.z(i, j);
      const Real mn = std::sqrt(mx * mx + my * my + mz * mz);
      if (mn > 0.0 && sigma * p.gamma != 0.0) {
        const Real sn = std::sqrt(sx * sx + sy * sy + sz * sz);
        Real f = 1.0;
        if (!std::isinf(p.M_trunc) && sn > p.M_trunc) f = p.M_trunc / sn;
        const Real theta = -sigma * p.gamma * mn * f * dt;
        const Real kx = mx / mn, ky = my / mn, kz = mz / mn;
        const Real c = std::cos(theta), sn_t = std::sin(theta);
        const Real kdots = kx * sx + ky * sy + kz * sz;
        const Real cxs = ky * sz - kz * sy;
        const Real cys = kz * sx - kx * sz;
        const Real czs = kx * sy - ky * sx;
        const Real w = (1.0 - c) * kdots;
        const Real rx = sx * c + cxs * sn_t + kx * w;
        const Real ry = sy * c + cys * sn_t + ky * w;
        const Real rz = sz * c + czs * sn_t + kz * w;
        sx = rx;
        sy = ry;
        sz = rz;
      }
      out.x(i, j) = decay * sx;
      out.y(i, j) = decay * sy;
      out.z(i, j) = decay * sz;
    }
  return out;
}

Vec3Field reaction_explicit(const Vec3Field& s, const Vec3Field& m,
                            const PhysParams& p, Real dt, Real sigma) {
  const Vec3Field sd = spin_direction(s, p.M_trunc);
  const Vec3Field prec = cross(m, sd);
  return s - dt * ((sigma * p.gamma) * prec + (1.0 / p.tau) * s);
}

TransportStepper::TransportStepper(const Grid& g, const PhysParams& p,
                                   const TransportConfig& cfg, Real dt,
                                   Real sigma)
    : g_(&g), p_(p), cfg_(cfg), dt_(dt), sigma_(sigma) {
  if (!(dt > 0.0)) throw StabilityError("step_transport: dt must be positive");
  if (!(cfg.linsolve_tol > 0.0))
    throw DataError("transport: linsolve_tol must be positive");
  bc_rho_ = transport_grad_bc_rho(g, sigma * p.rho_D);
  bc_s_ = transport_grad_bc_s(g);
  div_bc_ = transport_div_bc(g);

  const int nx = g.nx(), ny = g.ny();
  if (cfg_.diffusion_implicit) {
    const Eigen::Index n = static_cast<Eigen::Index>(nx) * ny;
    SpMat id(n, n);
    id.setIdentity();
    SpMat a_rho = id - (dt * p.D) * assemble_div_grad(g, bc_rho_, div_bc_);
    SpMat a_s = id - (dt * p.D) * assemble_div_grad(g, bc_s_, div_bc_);
    sol_rho_ = std::make_unique<StencilSolver>(std::move(a_rho));
    sol_s_ = std::make_unique<StencilSolver>(std::move(a_s));
  } else {
    if (dt * p.D * (1.0 / (g.hx() * g.hx()) + 1.0 / (g.hy() * g.hy())) >
        0.5 + 1e-15)
      throw StabilityError("explicit diffusion needs dt <= h^2/(4D)");
  }
  const Vec2Field ghost = grad2(Field::Zero(nx, ny), g, bc_rho_);
  affine_rho_ = (dt * p.D) * div2(ghost, g, div_bc_);
}

TransportResult TransportStepper::step(const Field& rho, const Vec3Field& s,
                                       const Vec3Field& E, const Vec3Field& m,
                                       const Field* rho_coeff,
                                       const Vec3Field* s_coeff,
                                       const Field* rho_source,
                                       const Vec3Field* s_source) const {
  if (!all_finite(rho) || !all_finite(s) || !all_finite(E) || !all_finite(m))
    throw DataError("step_transport: non-finite input");
  const Grid& g = *g_;

  // Positivity-protecting bound on the explicit centered drift.
  const Real adv = std::max(linf(E.x) / g.hx(), linf(E.y) / g.hy());
  if (dt_ * p_.D * std::abs(sigma_) * adv > 0.5 + 1e-12)
    throw StabilityError("transport drift CFL violated: dt*D*|E|/h > 1/2");

  const Field rcoeff = drift_coeff_rho(rho_coeff ? *rho_coeff : rho, p_);
  const Vec3Field sdir = spin_direction(s_coeff ? *s_coeff : s, p_.M_trunc);

  TransportResult out;

  // Charge: implicit diffusion on top of the explicit drift divergence, then
  // the accepted update rebuilt in flux form from the predictor.
  Vec2Field du{p_.D * rcoeff * E.x, p_.D * rcoeff * E.y};
  Vec2Field fdr{-sigma_ * du.x, -sigma_ * du.y};
  Field rhs = rho + dt_ * div2(fdr, g, div_bc_) + affine_rho_;
  if (rho_source != nullptr) rhs += dt_ * *rho_source;
  Field pred;
  if (cfg_.diffusion_implicit)
    pred = sol_rho_->solve(rhs, &rho, cfg_.linsolve_tol,
                           cfg_.linsolve_max_iter);
  else
    pred = rho;
  const Vec2Field gr = grad2(pred, g, bc_rho_);
  Vec2Field gdiff{p_.D * gr.x, p_.D * gr.y};
  out.flux.je.x = gdiff.x - sigma_ * du.x;
  out.flux.je.y = gdiff.y - sigma_ * du.y;
  out.ampere_je.x = sigma_ * (gdiff.x - du.x);
  out.ampere_je.y = sigma_ * (gdiff.y - du.y);
  out.rho = rho + dt_ * div2(out.flux.je, g, div_bc_);
  if (rho_source != nullptr) out.rho += dt_ * *rho_source;
  if (cfg_.positivity_clip) out.rho = out.rho.max(0.0);

  // Spin components share one factorized operator (homogeneous contacts).
  Vec3Field snew = Vec3Field::zero(g.nx(), g.ny());
  for (int i = 0; i < 3; ++i) {
    const Field& si = comp(s, i);
    const Field& di = comp(sdir, i);
    Vec2Field fds{(-sigma_ * p_.D) * di * E.x, (-sigma_ * p_.D) * di * E.y};
    Field rhs_s = si + dt_ * div2(fds, g, div_bc_);
    if (s_source != nullptr) rhs_s += dt_ * comp(*s_source, i);
    Field spred;
    if (cfg_.diffusion_implicit)
      spred = sol_s_->solve(rhs_s, &si, cfg_.linsolve_tol,
                            cfg_.linsolve_max_iter);
    else
      spred = si;
    const Vec2Field gs = grad2(spred, g, bc_s_);
    out.flux.js[i].x = p_.D * gs.x + fds.x;
    out.flux.js[i].y = p_.D * gs.y + fds.y;
    comp(snew, i) = si + dt_ * div2(out.flux.js[i], g, div_bc_);
    if (s_source != nullptr) comp(snew, i) += dt_ * comp(*s_source, i);
  }

  out.s = cfg_.exact_reaction ? reaction_exact(snew, m, p_, dt_, sigma_)
                              : reaction_explicit(snew, m, p_, dt_, sigma_);

  if (!all_finite(out.rho) || !all_finite(out.s))
    throw DataError("step_transport: non-finite result");
  return out;
}

TransportResult step_transport(const Field& rho, const Vec3Field& s,
                               const Vec3Field& E, const Vec3Field& m,
                               const PhysParams& p, const TransportConfig& cfg,
                               Real dt, const Grid& g, Real sigma) {
  TransportStepper st(g, p, cfg, dt, sigma);
  return st.step(rho, s, E, m);
}

}  // namespace spindrift
