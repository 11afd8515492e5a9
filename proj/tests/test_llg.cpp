#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "spindrift/diagnostics.hpp"
#include "spindrift/errors.hpp"
#include "spindrift/llg.hpp"
#include "spindrift/mms.hpp"
#include "spindrift/random.hpp"

using namespace spindrift;

namespace {

Grid test_grid(int n) {
  return build_grid(GridSpec{n, n, 1.0, 1.0}, Rect{0.25, 0.75, 0.25, 0.75},
                    Rect{1.0 / n, 1.0 / n, 1.0 / n, 1.0 / n});
}

// Smoothly varying unit directors on omega, zero outside.
Vec3Field random_unit_m(const Grid& g, std::mt19937_64& rng) {
  Vec3Field v = random_smooth_vec3(g, rng);
  v.z = v.z + 2.0;  // bounded away from zero modulus
  Field nrm = norm(v);
  Vec3Field m;
  m.x = g.omega01 * v.x / nrm;
  m.y = g.omega01 * v.y / nrm;
  m.z = g.omega01 * v.z / nrm;
  return m;
}

}  // namespace

TEST_CASE("effective field vanishes on a resting layer") {
  Grid g = test_grid(16);
  Vec3Field m = Vec3Field::zero(16, 16);
  m.z = g.omega01;
  Vec3Field h = effective_field(m, Vec3Field::zero(16, 16),
                                Vec3Field::zero(16, 16), PhysParams{}, g);
  CHECK(linf(h) == 0.0);
}

TEST_CASE("effective field sums its three parts") {
  Grid g = test_grid(16);
  Vec3Field m = Vec3Field::zero(16, 16);
  m.z = g.omega01;
  Vec3Field H = Vec3Field::constant(16, 16, 0.0, 0.0, 1.0);
  Vec3Field s = Vec3Field::constant(16, 16, 0.0, 0.5, 0.0);
  PhysParams p;
  p.beta = 2.0;
  Vec3Field h = effective_field(m, H, s, p, g);
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 16; ++i) {
      if (g.mask.in_omega(i, j)) {
        CHECK(h.x(i, j) == 0.0);
        CHECK(h.y(i, j) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(h.z(i, j) == doctest::Approx(1.0).epsilon(1e-15));
      } else {
        CHECK(h.x(i, j) == 0.0);
        CHECK(h.y(i, j) == 0.0);
        CHECK(h.z(i, j) == 0.0);
      }
    }
}

TEST_CASE("g_inverse undoes the gilbert map") {
  auto r = g_inverse({0.0, 0.0, 1.0}, 1.0, {1.0, 0.0, 0.0});
  CHECK(r[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(r[2] == doctest::Approx(0.0).epsilon(1e-14));

  auto id = g_inverse({0.3, -0.4, 0.5}, 0.0, {1.0, 2.0, 3.0});
  CHECK(id[0] == 1.0);
  CHECK(id[1] == 2.0);
  CHECK(id[2] == 3.0);

  std::mt19937_64 rng(41);
  for (int k = 0; k < 1000; ++k) {
    std::array<Real, 3> m = {uniform(rng, -1, 1), uniform(rng, -1, 1),
                             uniform(rng, -1, 1)};
    std::array<Real, 3> f = {uniform(rng, -2, 2), uniform(rng, -2, 2),
                             uniform(rng, -2, 2)};
    Real alpha = uniform(rng, 0.0, 2.0);
    auto v = g_inverse(m, alpha, f);
    // residual of v - (alpha m) x v = f
    std::array<Real, 3> a = {alpha * m[0], alpha * m[1], alpha * m[2]};
    std::array<Real, 3> axv = {a[1] * v[2] - a[2] * v[1],
                               a[2] * v[0] - a[0] * v[2],
                               a[0] * v[1] - a[1] * v[0]};
    Real fn = std::sqrt(f[0] * f[0] + f[1] * f[1] + f[2] * f[2]);
    for (int c = 0; c < 3; ++c)
      CHECK(std::abs(v[c] - axv[c] - f[c]) <= 1e-12 * (1.0 + fn));
  }
}

TEST_CASE("aligned field leaves the director untouched") {
  Grid g = test_grid(16);
  Vec3Field m = Vec3Field::zero(16, 16);
  m.z = g.omega01;
  Vec3Field H = Vec3Field::constant(16, 16, 0.0, 0.0, 0.7);
  Vec3Field s = Vec3Field::zero(16, 16);
  Vec3Field out = step_llg(m, H, s, PhysParams{}, LLGConfig{}, 1e-4, g);
  CHECK((out.x == m.x).all());
  CHECK((out.y == m.y).all());
  CHECK((out.z == m.z).all());
}

TEST_CASE("the exchange stiffness limits the step") {
  Grid g = test_grid(16);
  Vec3Field m = Vec3Field::zero(16, 16);
  m.z = g.omega01;
  Vec3Field z = Vec3Field::zero(16, 16);
  CHECK_THROWS_AS(step_llg(m, z, z, PhysParams{}, LLGConfig{}, 1e-3, g),
                  StabilityError);
  Vec3Field ok = step_llg(m, z, z, PhysParams{}, LLGConfig{}, 1e-4, g);
  CHECK(linf((ok - m)) <= 1e-15);
}

TEST_CASE("projection holds the constraint, support stays in omega") {
  Grid g = test_grid(16);
  std::mt19937_64 rng(43);
  Vec3Field m = random_unit_m(g, rng);
  Vec3Field H = Vec3Field::constant(16, 16, 0.0, 0.0, 0.3);
  Vec3Field s = Vec3Field::constant(16, 16, 0.05, 0.0, 0.0);
  Vec3Field out = step_llg(m, H, s, PhysParams{}, LLGConfig{}, 1e-4, g);
  Real defect = 0.0, outside = 0.0;
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 16; ++i) {
      Real mi = std::sqrt(out.x(i, j) * out.x(i, j) +
                          out.y(i, j) * out.y(i, j) +
                          out.z(i, j) * out.z(i, j));
      if (g.mask.in_omega(i, j))
        defect = std::max(defect, std::abs(mi - 1.0));
      else
        outside = std::max(outside, mi);
    }
  CHECK(defect <= 1e-14);
  CHECK(outside == 0.0);
}

TEST_CASE("unprojected drift is quadratically small") {
  Grid g = test_grid(16);
  Vec3Field m = Vec3Field::zero(16, 16);
  Real c = std::sqrt(0.5);
  m.x = c * g.omega01;
  m.z = c * g.omega01;
  Vec3Field H = Vec3Field::constant(16, 16, 0.0, 0.0, 1.0);
  Vec3Field s = Vec3Field::zero(16, 16);

  LLGConfig raw;
  raw.project_each_step = false;
  Vec3Field un = step_llg(m, H, s, PhysParams{}, raw, 1e-4, g);
  Real defect = 0.0;
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 16; ++i)
      if (g.mask.in_omega(i, j)) {
        Real mi = std::sqrt(un.x(i, j) * un.x(i, j) + un.y(i, j) * un.y(i, j) +
                            un.z(i, j) * un.z(i, j));
        defect = std::max(defect, std::abs(mi - 1.0));
      }
  CHECK(defect <= 1e-6);

  LLGConfig proj;
  Vec3Field pr = step_llg(m, H, s, PhysParams{}, proj, 1e-4, g);
  Real pdefect = 0.0;
  for (int j = 0; j < 16; ++j)
    for (int i = 0; i < 16; ++i)
      if (g.mask.in_omega(i, j)) {
        Real mi = std::sqrt(pr.x(i, j) * pr.x(i, j) + pr.y(i, j) * pr.y(i, j) +
                            pr.z(i, j) * pr.z(i, j));
        pdefect = std::max(pdefect, std::abs(mi - 1.0));
      }
  CHECK(pdefect <= 1e-14);
}

TEST_CASE("the two schemes agree to second order") {
  Grid g = test_grid(16);
  std::mt19937_64 rng(47);
  Vec3Field m = random_unit_m(g, rng);
  Vec3Field H = Vec3Field::constant(16, 16, 0.0, 0.0, 1.0);
  Vec3Field s = Vec3Field::constant(16, 16, 0.0, 0.1, 0.0);

  LLGConfig direct;
  LLGConfig gilbert;
  gilbert.scheme = LLGScheme::GILBERT_FORM;
  Vec3Field a = step_llg(m, H, s, PhysParams{}, direct, 1e-4, g);
  Vec3Field b = step_llg(m, H, s, PhysParams{}, gilbert, 1e-4, g);
  // Same vector field, different algebraic form: one step differs at
  // O(dt^3) with an exchange-sized constant (~4/h^2 per curvature factor).
  CHECK(linf((a - b)) <= 1e-8);
}

TEST_CASE("exchange energy dissipates under damping") {
  Grid g = test_grid(16);
  std::mt19937_64 rng(53);
  Vec3Field m = random_unit_m(g, rng);
  Vec3Field z = Vec3Field::zero(16, 16);
  PhysParams p;  // alpha = 1
  LLGConfig cfg;
  Real prev = exchange_energy(m, g);
  for (int k = 0; k < 20; ++k) {
    m = step_llg(m, z, z, p, cfg, 1e-4, g);
    Real cur = exchange_energy(m, g);
    CHECK(cur <= prev + 1e-8);
    prev = cur;
  }
}

TEST_CASE("macrospin precession tracks the closed form") {
  MacrospinResult r = macrospin_precession(1e-3);
  CHECK(r.max_error <= 1e-5);
}

TEST_CASE("macrospin damping aligns on schedule") {
  MacrospinResult r = macrospin_damping();
  CHECK(r.max_error <= 1e-6);
  CHECK(r.tan_law_error <= 1e-3);
}
