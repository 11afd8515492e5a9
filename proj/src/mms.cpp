#include "spindrift/mms.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spindrift/errors.hpp"
#include "spindrift/grid.hpp"
#include "spindrift/llg.hpp"
#include "spindrift/maxwell.hpp"
#include "spindrift/transport.hpp"

namespace spindrift {

namespace {

constexpr Real kPi = std::numbers::pi_v<Real>;

Rect empty_layer(const GridSpec& spec) {
  return Rect{spec.hx(), spec.hx(), spec.hy(), spec.hy()};
}

Grid mms_grid(int n, const BoundaryTag& layout) {
  GridSpec spec{n, n, 1.0, 1.0};
  return build_grid(spec, Rect{0.25, 0.75, 0.25, 0.75}, empty_layer(spec),
                    layout);
}

// rho*(x,y,t) = e^{-t} cos(pi x) cos(pi y): even about every wall, so the
// mirror closures continue it exactly; source balances heat flow at t^{n+1}.
Real transport_error(int n) {
  Grid g = mms_grid(n, all_neumann_layout());
  PhysParams p;
  p.C = Field::Zero(n, n);
  TransportConfig cfg;
  const long long steps = static_cast<long long>(n) * n / 16;
  const Real t_final = 0.125;
  const Real dt = t_final / static_cast<Real>(steps);
  TransportStepper stepper(g, p, cfg, dt);

  Field shape(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      shape(i, j) = std::cos(kPi * g.xc(i)) * std::cos(kPi * g.yc(j));

  Field rho = shape;
  Vec3Field zero3 = Vec3Field::zero(n, n);
  const Real coef = 2.0 * p.D * kPi * kPi - 1.0;
  for (long long k = 0; k < steps; ++k) {
    Real t_next = static_cast<Real>(k + 1) * dt;
    Field src = (coef * std::exp(-t_next)) * shape;
    rho = stepper
              .step(rho, zero3, zero3, zero3, nullptr, nullptr, &src, nullptr)
              .rho;
  }
  Field exact = std::exp(-t_final) * shape;
  return std::sqrt(sq_l2((rho - exact).eval(), g.hx(), g.hy()));
}

// Standing TE mode with omega = sqrt(2) pi: E3 odd across the Dirichlet x
// sides and even across the Neumann y sides, H mirrored the other way; every
// differentiated ghost extension is exact.
Real maxwell_error(int n) {
  Grid g = mms_grid(n, default_layout());
  const Real omega = std::sqrt(2.0) * kPi;
  const Real dt = 0.25 * g.hx();
  const int steps = n;  // to T = 1/4

  Field sx(n, n), cx(n, n), sy(n, n), cy(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      sx(i, j) = std::sin(kPi * g.xc(i));
      cx(i, j) = std::cos(kPi * g.xc(i));
      sy(i, j) = std::sin(kPi * g.yc(j));
      cy(i, j) = std::cos(kPi * g.yc(j));
    }

  Vec3Field E = Vec3Field::zero(n, n), H = Vec3Field::zero(n, n);
  E.z = sx * cy;
  MaxwellSources none = MaxwellSources::zero(n, n);
  for (int k = 0; k < steps; ++k) {
    auto eh = step_maxwell(E, H, none, dt, g);
    E = std::move(eh.first);
    H = std::move(eh.second);
  }

  const Real T = static_cast<Real>(steps) * dt;
  const Real ct = std::cos(omega * T), st = std::sin(omega * T);
  const Real a = kPi / omega;
  Field eErr = E.z - ct * sx * cy;
  Field h1Err = H.x - (a * st) * sx * sy;
  Field h2Err = H.y - (a * st) * cx * cy;
  Real acc = sq_l2(eErr, g.hx(), g.hy()) + sq_l2(h1Err, g.hx(), g.hy()) +
             sq_l2(h2Err, g.hx(), g.hy()) + sq_l2(E.x, g.hx(), g.hy()) +
             sq_l2(E.y, g.hx(), g.hy()) + sq_l2(H.z, g.hx(), g.hy());
  return std::sqrt(acc);
}

// Tilt profile theta(x) = 0.5 cos(2 pi (x - 1/4)) on omega = [1/4,3/4]^2:
// even about both patch walls, so the exchange mirror closure is exact.  The
// defect (m^1 - m^0)/dt is compared against the analytic torque
// theta'' (alpha cos theta, 1, -alpha sin theta).
Real llg_exchange_error(int n) {
  Grid g = mms_grid(n, default_layout());
  PhysParams p;
  p.C = Field::Zero(n, n);
  LLGConfig cfg;
  cfg.project_each_step = false;
  const Real h = g.hx();
  const Real dt = h * h / 32.0;

  Vec3Field m = Vec3Field::zero(n, n);
  Vec3Field rhs_exact = Vec3Field::zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (!g.mask.in_omega(i, j)) continue;
      Real u = 2.0 * kPi * (g.xc(i) - 0.25);
      Real theta = 0.5 * std::cos(u);
      Real tpp = -2.0 * kPi * kPi * std::cos(u);
      m.x(i, j) = std::sin(theta);
      m.z(i, j) = std::cos(theta);
      rhs_exact.x(i, j) = tpp * p.alpha * std::cos(theta);
      rhs_exact.y(i, j) = tpp;
      rhs_exact.z(i, j) = -tpp * p.alpha * std::sin(theta);
    }

  Vec3Field zero3 = Vec3Field::zero(n, n);
  Vec3Field m1 = step_llg(m, zero3, zero3, p, cfg, dt, g);
  Vec3Field defect{((m1.x - m.x) / dt - rhs_exact.x).eval(),
                   ((m1.y - m.y) / dt - rhs_exact.y).eval(),
                   ((m1.z - m.z) / dt - rhs_exact.z).eval()};
  return std::sqrt(sq_l2(defect, g.hx(), g.hy()));
}

}  // namespace

MmsResult run_mms_study(MmsKind kind, const std::vector<int>& ladder) {
  if (ladder.size() < 3)
    throw DataError("mms ladder needs at least 3 grids");
  for (int n : ladder)
    if (n < 8 || n % 4 != 0)
      throw DataError("mms grid sizes must be multiples of 4, at least 8");
  for (std::size_t k = 1; k < ladder.size(); ++k)
    if (ladder[k] <= ladder[k - 1])
      throw DataError("mms ladder must be strictly increasing");

  MmsResult res;
  res.kind = kind;
  res.n = ladder;
  for (int n : ladder) {
    Real e = 0.0;
    switch (kind) {
      case MmsKind::TRANSPORT: e = transport_error(n); break;
      case MmsKind::MAXWELL: e = maxwell_error(n); break;
      case MmsKind::LLG_EXCHANGE: e = llg_exchange_error(n); break;
    }
    res.error.push_back(e);
  }
  for (std::size_t k = 1; k < res.error.size(); ++k)
    res.order.push_back(std::log2(res.error[k - 1] / res.error[k]));

  if (res.order.back() < 1.5)
    throw AccuracyError("observed order " + std::to_string(res.order.back()) +
                        " on the finest pair falls below 1.5");
  return res;
}

Real transport_constant_defect(int n, int steps) {
  Grid g = mms_grid(n, all_neumann_layout());
  PhysParams p;
  p.C = Field::Zero(n, n);
  TransportConfig cfg;
  TransportStepper stepper(g, p, cfg, 1e-3);
  Field rho = Field::Constant(n, n, 2.0);
  Vec3Field zero3 = Vec3Field::zero(n, n);
  for (int k = 0; k < steps; ++k)
    rho = stepper.step(rho, zero3, zero3, zero3).rho;
  return (rho - 2.0).abs().maxCoeff();
}

namespace {

Grid macrospin_grid() {
  // 4x4 layer patches: the compact exchange stencil needs three cells per
  // direction even though the uniform macrospin field never excites it.
  GridSpec spec{6, 6, 1.0, 1.0};
  return build_grid(spec, Rect{0.25, 0.75, 0.25, 0.75}, empty_layer(spec));
}

}  // namespace

MacrospinResult macrospin_precession(Real dt) {
  Grid g = macrospin_grid();
  const int n = g.nx();
  PhysParams p;
  p.alpha = 0.0;  // pure precession
  p.C = Field::Zero(n, n);
  LLGConfig cfg;
  Vec3Field H = Vec3Field::zero(n, n);
  H.z = Field::Constant(n, n, 1.0);
  Vec3Field s0 = Vec3Field::zero(n, n);

  Vec3Field m = Vec3Field::zero(n, n);
  m.x = g.omega01;

  const Real t_final = 0.5 * kPi;
  const long long steps = static_cast<long long>(std::floor(t_final / dt));
  MacrospinResult res;
  for (long long k = 1; k <= steps; ++k) {
    m = step_llg(m, H, s0, p, cfg, dt, g);
    Real t = static_cast<Real>(k) * dt;
    // dm/dt = m x H rotates m clockwise in the xy plane
    Real ex = std::cos(t), ey = -std::sin(t);
    int i0 = g.patches[0].i0, j0 = g.patches[0].j0;
    Real err = std::max({std::abs(m.x(i0, j0) - ex), std::abs(m.y(i0, j0) - ey),
                         std::abs(m.z(i0, j0))});
    res.max_error = std::max(res.max_error, err);
    res.t_end = t;
  }
  return res;
}

MacrospinResult macrospin_damping(Real alpha, Real dt, Real t_end,
                                  Real theta0) {
  Grid g = macrospin_grid();
  const int n = g.nx();
  PhysParams p;
  p.alpha = alpha;
  p.C = Field::Zero(n, n);
  LLGConfig cfg;
  Vec3Field H = Vec3Field::zero(n, n);
  H.z = Field::Constant(n, n, 1.0);
  Vec3Field s0 = Vec3Field::zero(n, n);

  Vec3Field m = Vec3Field::zero(n, n);
  m.x = std::sin(theta0) * g.omega01;
  m.z = std::cos(theta0) * g.omega01;

  const long long steps = static_cast<long long>(std::llround(t_end / dt));
  const Real tan0 = std::tan(0.5 * theta0);
  MacrospinResult res;
  int i0 = g.patches[0].i0, j0 = g.patches[0].j0;
  for (long long k = 1; k <= steps; ++k) {
    m = step_llg(m, H, s0, p, cfg, dt, g);
    Real t = static_cast<Real>(k) * dt;
    Real planar = std::hypot(m.x(i0, j0), m.y(i0, j0));
    Real theta = std::atan2(planar, m.z(i0, j0));
    res.tan_law_error =
        std::max(res.tan_law_error,
                 std::abs(std::tan(0.5 * theta) - tan0 * std::exp(-alpha * t)));
    res.t_end = t;
  }
  res.max_error = std::abs(m.z(i0, j0) - 1.0);
  return res;
}

}  // namespace spindrift
