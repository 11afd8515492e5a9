#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "spindrift/coupling.hpp"
#include "spindrift/errors.hpp"

using namespace spindrift;

namespace {

const double kPi = 3.14159265358979323846;

Grid test_grid(int n) {
  return build_grid(GridSpec{n, n, 1.0, 1.0}, Rect{0.25, 0.75, 0.25, 0.75},
                    Rect{1.0 / n, 1.0 / n, 1.0 / n, 1.0 / n});
}

PhysParams flat_params(const Grid& g) {
  PhysParams p;
  p.C = Field::Constant(g.nx(), g.ny(), 1.0);
  return p;
}

SimState equilibrium_state(const Grid& g) {
  SimState st = SimState::zero(g.nx(), g.ny());
  st.rho = Field::Constant(g.nx(), g.ny(), 1.0);
  st.m.z = g.omega01;
  return st;
}

SimConfigs configs_with(Real dt, Real t_end, int every = 1) {
  SimConfigs c;
  c.coupling.dt = dt;
  c.coupling.t_end = t_end;
  c.coupling.output_every = every;
  return c;
}

bool states_equal(const SimState& a, const SimState& b) {
  return (a.rho == b.rho).all() && (a.s.x == b.s.x).all() &&
         (a.s.y == b.s.y).all() && (a.s.z == b.s.z).all() &&
         (a.E.x == b.E.x).all() && (a.E.y == b.E.y).all() &&
         (a.E.z == b.E.z).all() && (a.H.x == b.H.x).all() &&
         (a.H.y == b.H.y).all() && (a.H.z == b.H.z).all() &&
         (a.m.x == b.m.x).all() && (a.m.y == b.m.y).all() &&
         (a.m.z == b.m.z).all();
}

}  // namespace

TEST_CASE("the equilibrium is a one-sweep fixed point") {
  Grid g = test_grid(16);
  Simulator sim(g, flat_params(g), configs_with(1e-4, 1e-3));
  SimState st = equilibrium_state(g);
  auto [next, rep] = sim.fixed_point_step(st);
  CHECK(rep.picard_iters == 1);
  CHECK(linf((next.rho - st.rho).eval()) <= 1e-12);
  CHECK(linf(next.s) <= 1e-12);
  CHECK(linf(next.E) <= 1e-12);
  CHECK(linf(next.H) <= 1e-12);
  CHECK(linf((next.m - st.m)) <= 1e-12);
  CHECK(next.t == doctest::Approx(1e-4).epsilon(1e-15));
}

TEST_CASE("decoupling freezes the empty state") {
  Grid g = test_grid(16);
  PhysParams p;
  p.C = Field::Zero(16, 16);
  SimConfigs cfg = configs_with(1e-4, 1e-3);
  cfg.coupling.sigma = 0.0;
  Simulator sim(g, p, cfg);
  SimState zero = SimState::zero(16, 16);
  SimState st = zero;
  for (int k = 0; k < 3; ++k) {
    auto [next, rep] = sim.fixed_point_step(st);
    CHECK(rep.picard_iters == 1);
    CHECK(states_equal(next, zero));
    st = next;
  }
}

TEST_CASE("a zero-length run emits exactly one record") {
  Grid g = test_grid(16);
  Simulator sim(g, flat_params(g), configs_with(1e-4, 0.0));
  SimState st = equilibrium_state(g);
  RunResult rr = sim.run(st);
  CHECK(rr.records.size() == 1);
  CHECK(rr.records[0].t == 0.0);
  CHECK(states_equal(rr.state, st));
  CHECK(rr.agg.steps == 0);
}

TEST_CASE("the output cadence lands on the final step") {
  Grid g = test_grid(16);
  const Real dt = 1e-4;
  Simulator sim(g, flat_params(g), configs_with(dt, 10.0 * dt, 3));
  RunResult rr = sim.run(equilibrium_state(g));
  REQUIRE(rr.records.size() == 5);  // steps 0, 3, 6, 9 and the final 10
  CHECK(rr.records[0].t == doctest::Approx(0.0));
  CHECK(rr.records[1].t == doctest::Approx(3 * dt).epsilon(1e-12));
  CHECK(rr.records[2].t == doctest::Approx(6 * dt).epsilon(1e-12));
  CHECK(rr.records[3].t == doctest::Approx(9 * dt).epsilon(1e-12));
  CHECK(rr.records[4].t == doctest::Approx(10 * dt).epsilon(1e-12));
  CHECK(rr.agg.steps == 10);
}

TEST_CASE("a starved iteration reports where it died") {
  Grid g = test_grid(16);
  PhysParams p = flat_params(g);
  SimConfigs cfg = configs_with(1e-4, 1e-3);
  cfg.coupling.picard_tol = 1e-16;
  cfg.coupling.picard_max = 1;
  Simulator sim(g, p, cfg);

  SimState st = equilibrium_state(g);
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 16; ++i)
      st.rho(i, j) += 0.1 * std::sin(kPi * g.xc(i)) * std::sin(kPi * g.yc(j));

  bool threw = false;
  try {
    sim.run(st, {}, RunOptions{true, 1e-3});
  } catch (const ConvergenceError& e) {
    threw = true;
    CHECK(std::string(e.what()).find("step") != std::string::npos);
    CHECK(e.last_residual > 0.0);
  }
  CHECK(threw);
}

TEST_CASE("stepping is deterministic") {
  Grid g = test_grid(16);
  PhysParams p = flat_params(g);
  SimConfigs cfg = configs_with(1e-4, 1e-3);
  SimState st = equilibrium_state(g);
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 16; ++i)
      st.rho(i, j) += 0.05 * std::sin(kPi * g.xc(i)) * std::sin(kPi * g.yc(j));

  Simulator a(g, p, cfg);
  Simulator b(g, p, cfg);
  auto [sa, ra] = a.fixed_point_step(st);
  auto [sb, rb] = b.fixed_point_step(st);
  CHECK(states_equal(sa, sb));
  CHECK(ra.picard_iters == rb.picard_iters);
  CHECK(ra.final_residual == rb.final_residual);
}

TEST_CASE("a resting run accumulates no drift") {
  Grid g = test_grid(16);
  Simulator sim(g, flat_params(g), configs_with(1e-4, 50 * 1e-4));
  RunResult rr = sim.run(equilibrium_state(g));
  CHECK(rr.agg.steps == 50);
  CHECK(rr.agg.max_state_change <= 1e-9);
  CHECK(rr.agg.min_rho >= 1.0 - 1e-12);
  CHECK(rr.agg.max_m_defect <= 1e-12);
  CHECK(rr.agg.max_resE <= 1e-10);
  CHECK(rr.agg.max_resH <= 1e-10);
}
