#include "spindrift/coupling.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#include "spindrift/errors.hpp"
#include "spindrift/measure.hpp"

namespace spindrift {

namespace {

std::string fmt_time(Real t, long long step) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "t=%.12g (step %lld)", t, step);
  return buf;
}

Vec3Field lift(const Vec2Field& v) {
  Vec3Field out = Vec3Field::zero(static_cast<int>(v.x.rows()),
                                  static_cast<int>(v.x.cols()));
  out.x = v.x;
  out.y = v.y;
  return out;
}

// Integrand of the a-priori gradient bound, with the measurement closures.
Real grad_load(const Field& rho, const Vec3Field& s, const Grid& g) {
  GradBc bc = measure_grad_bc(g);
  Vec2Field gr = grad2(rho, g, bc);
  Real acc = sq_l2(gr.x, g.hx(), g.hy()) + sq_l2(gr.y, g.hx(), g.hy());
  for (const Field* c : {&s.x, &s.y, &s.z}) {
    Vec2Field gs = grad2(*c, g, bc);
    acc += sq_l2(gs.x, g.hx(), g.hy()) + sq_l2(gs.y, g.hx(), g.hy());
  }
  return acc;
}

}  // namespace

Real rel_change(const Field& a, const Field& b, Real hx, Real hy) {
  require_same_shape(a, b, "rel_change");
  return std::sqrt(sq_l2((a - b).eval(), hx, hy)) /
         (1.0 + std::sqrt(sq_l2(a, hx, hy)));
}

Real rel_change(const Vec3Field& a, const Vec3Field& b, Real hx, Real hy) {
  Vec3Field d{a.x - b.x, a.y - b.y, a.z - b.z};
  return std::sqrt(sq_l2(d, hx, hy)) / (1.0 + std::sqrt(sq_l2(a, hx, hy)));
}

Real state_change(const SimState& a, const SimState& b, const Grid& g) {
  return rel_change(a.rho, b.rho, g.hx(), g.hy()) +
         rel_change(a.s, b.s, g.hx(), g.hy()) + rel_change(a.E, b.E, g.hx(), g.hy()) +
         rel_change(a.H, b.H, g.hx(), g.hy()) + rel_change(a.m, b.m, g.hx(), g.hy());
}

Simulator::Simulator(const Grid& g, const PhysParams& p, const SimConfigs& cfgs)
    : g_(&g), p_(p), cfg_(cfgs) {
  if (!(cfg_.coupling.picard_tol > 0.0))
    throw DataError("picard_tol must be positive");
  if (cfg_.coupling.picard_max < 1)
    throw DataError("picard_max must be at least 1");
  if (!std::isfinite(cfg_.coupling.sigma))
    throw DataError("sigma must be finite");
  transport_ = std::make_unique<TransportStepper>(
      g, p_, cfg_.transport, cfg_.coupling.dt, cfg_.coupling.sigma);
  if (cfg_.reg.eps_t > 0.0)
    m_history_ =
        std::make_unique<TimeSmoother>(cfg_.reg.eps_t, cfg_.coupling.dt);
}

Vec3Field Simulator::faraday_source(const SimState& base,
                                    const Vec3Field& m_new) const {
  if (m_history_) {
    Vec3Field rate = m_history_->rate_with(m_new);
    return Vec3Field{(-rate.x).eval(), (-rate.y).eval(), (-rate.z).eval()};
  }
  Real inv = 1.0 / cfg_.coupling.dt;
  return Vec3Field{(-inv * (m_new.x - base.m.x)).eval(),
                   (-inv * (m_new.y - base.m.y)).eval(),
                   (-inv * (m_new.z - base.m.z)).eval()};
}

Vec3Field Simulator::ampere_source(const Field& rho, const Vec3Field& E) const {
  const Field* grad_arg = &rho;
  Field smoothed;
  if (cfg_.reg.eps_x > 0.0) {
    smoothed = smooth_space(rho, cfg_.reg.eps_x, *g_);
    grad_arg = &smoothed;
  }
  return lift(
      ampere_flux(*grad_arg, rho, E, p_, *g_, cfg_.coupling.sigma));
}

std::pair<SimState, StepReport> Simulator::fixed_point_step(
    const SimState& st) {
  auto t0 = std::chrono::steady_clock::now();
  const Grid& g = *g_;
  const Real dt = cfg_.coupling.dt;
  const Real sigma = cfg_.coupling.sigma;

  if (m_history_ && m_history_->size() == 0) m_history_->push(st.m);

  // Previous-iterate fields, seeded with the start-of-step state.
  Field rho_prev = st.rho;
  Vec3Field s_prev = st.s;
  Vec3Field m_prev = st.m;
  Vec3Field e_prev = st.E;
  Vec3Field h_prev = st.H;

  // Magnetic step II always sees the start-of-step field and the previous
  // spin iterate, both weighted by sigma.
  Vec3Field zeeman{(sigma * st.H.x).eval(), (sigma * st.H.y).eval(),
                   (sigma * st.H.z).eval()};

  MaxwellSources src{ampere_source(st.rho, st.E),
                     Vec3Field::zero(g.nx(), g.ny())};

  StepReport rep;
  bool converged = false;
  Real residual = kInf;

  while (rep.picard_iters < cfg_.coupling.picard_max) {
    ++rep.picard_iters;

    Field rho_k;
    Vec3Field s_k(Vec3Field::zero(g.nx(), g.ny())), m_k(s_k), e_k(s_k), h_k(s_k);
    Vec3Field spin{(sigma * s_prev.x).eval(), (sigma * s_prev.y).eval(),
                   (sigma * s_prev.z).eval()};

    if (!cfg_.coupling.reverse_order) {
      // I. field step from the start-of-step state with last-iterate sources
      auto em = step_maxwell(st.E, st.H, src, dt, g, cfg_.maxwell_cfl);
      e_k = std::move(em.first);
      h_k = std::move(em.second);
      // II. magnetization
      m_k = step_llg(st.m, zeeman, spin, p_, cfg_.llg, dt, g);
      // III. charge and spin transport in the fresh electric field
      TransportResult tr =
          transport_->step(st.rho, st.s, e_k, m_k, &rho_prev, &s_prev);
      rho_k = std::move(tr.rho);
      s_k = std::move(tr.s);
      src.je_term = cfg_.reg.eps_x > 0.0 ? ampere_source(rho_k, e_k)
                                         : lift(tr.ampere_je);
    } else {
      TransportResult tr =
          transport_->step(st.rho, st.s, e_prev, m_prev, &rho_prev, &s_prev);
      rho_k = std::move(tr.rho);
      s_k = std::move(tr.s);
      Vec3Field spin_new{(sigma * s_k.x).eval(), (sigma * s_k.y).eval(),
                         (sigma * s_k.z).eval()};
      m_k = step_llg(st.m, zeeman, spin_new, p_, cfg_.llg, dt, g);
      src.je_term = cfg_.reg.eps_x > 0.0 ? ampere_source(rho_k, e_prev)
                                         : lift(tr.ampere_je);
      src.dm_dt = faraday_source(st, m_k);
      auto em = step_maxwell(st.E, st.H, src, dt, g, cfg_.maxwell_cfl);
      e_k = std::move(em.first);
      h_k = std::move(em.second);
    }

    residual = rel_change(rho_k, rho_prev, g.hx(), g.hy()) +
               rel_change(s_k, s_prev, g.hx(), g.hy()) +
               rel_change(m_k, m_prev, g.hx(), g.hy()) +
               rel_change(e_k, e_prev, g.hx(), g.hy()) +
               rel_change(h_k, h_prev, g.hx(), g.hy());
    rep.residual_history.push_back(residual);

    rho_prev = std::move(rho_k);
    s_prev = std::move(s_k);
    m_prev = std::move(m_k);
    e_prev = std::move(e_k);
    h_prev = std::move(h_k);

    if (!cfg_.coupling.reverse_order)
      src.dm_dt = faraday_source(st, m_prev);

    if (residual <= cfg_.coupling.picard_tol) {
      converged = true;
      break;
    }
  }

  rep.final_residual = residual;
  if (!converged)
    throw ConvergenceError("fixed-point iteration did not reach tol " +
                               std::to_string(cfg_.coupling.picard_tol) +
                               " within " +
                               std::to_string(cfg_.coupling.picard_max) +
                               " sweeps",
                           residual);

  // Replay the field step with the converged sources so the accepted E, H
  // telescope exactly against the accepted charge and magnetization updates.
  auto em = step_maxwell(st.E, st.H, src, dt, g, cfg_.maxwell_cfl);

  SimState out;
  out.rho = std::move(rho_prev);
  out.s = std::move(s_prev);
  out.E = std::move(em.first);
  out.H = std::move(em.second);
  out.m = std::move(m_prev);
  out.t = st.t + dt;

  if (m_history_) m_history_->push(out.m);

  rep.wallclock =
      std::chrono::duration<Real>(std::chrono::steady_clock::now() - t0)
          .count();
  return {std::move(out), std::move(rep)};
}

RunResult Simulator::run(const SimState& initial, const SimSinks& sinks,
                         const RunOptions& opt) {
  const Grid& g = *g_;
  const Real dt = cfg_.coupling.dt;
  const Real total = cfg_.coupling.t_end;
  if (!(total >= 0.0) || !std::isfinite(total))
    throw DataError("t_end must be finite and nonnegative");
  if (cfg_.coupling.output_every < 1)
    throw DataError("output_every must be at least 1");

  if (!opt.skip_validation) {
    InitialReport ir = validate_initial(g, initial, p_, opt.validate_tol);
    if (!ir.pass) {
      char buf[256];
      std::snprintf(buf, sizeof buf,
                    "initial data incompatible: resE=%.3g resH=%.3g "
                    "E.nu=%.3g m_defect=%.3g m_outside=%.3g (tol %.3g)",
                    ir.resE, ir.resH, ir.max_en, ir.max_m_defect,
                    ir.max_m_outside, opt.validate_tol);
      throw DataError(buf);
    }
  }

  long long n_steps = 0;
  if (total > 0.0) {
    Real ratio = total / dt;
    long long nearest = std::llround(ratio);
    if (nearest >= 1 && std::abs(nearest * dt - total) <= 1e-9)
      n_steps = nearest;
    else
      n_steps = static_cast<long long>(std::floor(ratio + 1e-12));
  }

  RunResult result;
  SimState st = initial;
  const Real t0 = initial.t;

  RunAggregates& agg = result.agg;
  agg.M_T = st.rho.maxCoeff();

  auto observe = [&](const SimState& s, int iters) {
    DiagnosticsRecord rec = diagnose(s, g, p_, iters, agg.M_T);
    agg.min_rho = std::min(agg.min_rho, rec.min_rho);
    agg.max_abs_s = std::max(agg.max_abs_s, rec.max_abs_s);
    agg.max_m_defect = std::max(agg.max_m_defect, rec.max_m_defect);
    agg.max_resE = std::max(agg.max_resE, rec.resE);
    agg.max_resH = std::max(agg.max_resH, rec.resH);
    agg.max_S = std::max(agg.max_S, rec.S);
    return rec;
  };

  auto emit = [&](const DiagnosticsRecord& rec, long long step) {
    result.records.push_back(rec);
    if (sinks.on_record) sinks.on_record(rec);
    if (sinks.on_snapshot) sinks.on_snapshot(st, step);
  };

  DiagnosticsRecord rec0 = observe(st, 0);
  agg.resE0 = rec0.resE;
  agg.resH0 = rec0.resH;
  emit(rec0, 0);

  EnergyReport er_prev = free_energy(st, p_.rho_D, g, 1e-12, p_.D);
  Real grad_prev = grad_load(st.rho, st.s, g);

  for (long long n = 1; n <= n_steps; ++n) {
    SimState next;
    StepReport srep;
    try {
      auto stepped = fixed_point_step(st);
      next = std::move(stepped.first);
      srep = std::move(stepped.second);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError(std::string(e.what()) + " at " + fmt_time(st.t, n),
                             e.last_residual);
    } catch (const StabilityError& e) {
      throw StabilityError(std::string(e.what()) + " at " + fmt_time(st.t, n));
    }
    next.t = t0 + static_cast<Real>(n) * dt;

    agg.M_T = std::max(agg.M_T, next.rho.maxCoeff());
    agg.max_picard = std::max(agg.max_picard, srep.picard_iters);
    agg.max_state_change =
        std::max(agg.max_state_change, state_change(next, st, g));

    // Quadratic a-priori loads: trapezoid in the gradients, rectangle in the
    // magnetization rate.
    Real grad_now = grad_load(next.rho, next.s, g);
    agg.int_grad += 0.5 * dt * (grad_prev + grad_now);
    Vec3Field dm{((next.m.x - st.m.x) / dt).eval(),
                 ((next.m.y - st.m.y) / dt).eval(),
                 ((next.m.z - st.m.z) / dt).eval()};
    agg.int_dtm += dt * sq_l2(dm, g.hx(), g.hy());
    grad_prev = grad_now;

    EnergyReport er_next = free_energy(next, p_.rho_D, g, 1e-12, p_.D);
    bool valid = er_prev.positive && !er_prev.clamped && er_next.positive &&
                 !er_next.clamped && std::isfinite(er_prev.diss_rate);
    if (valid) {
      agg.max_energy_increase =
          std::max(agg.max_energy_increase, er_next.E_total - er_prev.E_total);
      agg.max_diss_violation =
          std::max(agg.max_diss_violation,
                   er_prev.diss_rate - (er_prev.E_total - er_next.E_total) / dt);
    } else {
      ++agg.invalid_energy_steps;
    }
    er_prev = er_next;

    st = std::move(next);
    ++agg.steps;

    DiagnosticsRecord rec = observe(st, srep.picard_iters);
    if (n % cfg_.coupling.output_every == 0 || n == n_steps) emit(rec, n);
  }

  result.state = std::move(st);
  return result;
}

std::pair<SimState, StepReport> fixed_point_step(const SimState& st,
                                                 const PhysParams& p,
                                                 const SimConfigs& cfgs,
                                                 const Grid& g) {
  Simulator sim(g, p, cfgs);
  return sim.fixed_point_step(st);
}

RunResult run_simulation(const SimState& initial, const PhysParams& p,
                         const SimConfigs& cfgs, const Grid& g,
                         const SimSinks& sinks, const RunOptions& opt) {
  Simulator sim(g, p, cfgs);
  return sim.run(initial, sinks, opt);
}

}  // namespace spindrift
