#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "spindrift/errors.hpp"
#include "spindrift/maxwell.hpp"

using namespace spindrift;

namespace {

const double kPi = 3.14159265358979323846;

Grid test_grid(int n) {
  return build_grid(GridSpec{n, n, 1.0, 1.0}, Rect{0.25, 0.75, 0.25, 0.75},
                    Rect{1.0 / n, 1.0 / n, 1.0 / n, 1.0 / n});
}

}  // namespace

TEST_CASE("zero fields stay zero") {
  Grid g = test_grid(16);
  auto [e, h] = step_maxwell(Vec3Field::zero(16, 16), Vec3Field::zero(16, 16),
                             MaxwellSources::zero(16, 16), 0.01, g);
  CHECK(linf(e) == 0.0);
  CHECK(linf(h) == 0.0);
}

TEST_CASE("a constant source integrates exactly") {
  Grid g = test_grid(16);
  MaxwellSources src = MaxwellSources::zero(16, 16);
  src.je_term.x = Field::Constant(16, 16, 1.0);
  const Real dt = 0.01;
  auto [e, h] = step_maxwell(Vec3Field::zero(16, 16), Vec3Field::zero(16, 16),
                             src, dt, g);
  CHECK((e.x == dt).all());
  CHECK(linf(e.y) == 0.0);
  CHECK(linf(e.z) == 0.0);
  CHECK(linf(h) == 0.0);  // curl of a constant vanishes under the mirrors
}

TEST_CASE("standing wave conserves energy to temporal accuracy") {
  const int n = 64;
  Grid g = test_grid(n);
  Vec3Field e = Vec3Field::zero(n, n);
  Vec3Field h = Vec3Field::zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      e.z(i, j) = std::sin(kPi * g.xc(i)) * std::sin(kPi * g.yc(j));

  Field zero = Field::Zero(n, n);
  Vec3Field mzero = Vec3Field::zero(n, n);
  Real en0 = em_energy_and_residuals(e, h, mzero, zero, zero, g).energy;
  REQUIRE(en0 > 0.0);

  MaxwellSources src = MaxwellSources::zero(n, n);
  const Real dt = 0.4 / n;
  for (int step = 0; step < 100; ++step) {
    auto [e2, h2] = step_maxwell(e, h, src, dt, g);
    e = std::move(e2);
    h = std::move(h2);
  }
  Real en1 = em_energy_and_residuals(e, h, mzero, zero, zero, g).energy;
  CHECK(std::abs(en1 - en0) / en0 <= 1e-3);
}

TEST_CASE("time step limits are enforced") {
  Grid g = test_grid(16);
  Vec3Field z = Vec3Field::zero(16, 16);
  MaxwellSources src = MaxwellSources::zero(16, 16);
  CHECK_THROWS_AS(step_maxwell(z, z, src, 1.0 / 16, g), StabilityError);
  CHECK_THROWS_AS(step_maxwell(z, z, src, 0.0, g), StabilityError);
  CHECK_THROWS_AS(step_maxwell(z, z, src, -0.01, g), StabilityError);
}

TEST_CASE("non-finite sources are rejected") {
  Grid g = test_grid(8);
  Vec3Field z = Vec3Field::zero(8, 8);
  MaxwellSources src = MaxwellSources::zero(8, 8);
  src.je_term.x(3, 3) = std::numeric_limits<Real>::quiet_NaN();
  CHECK_THROWS_AS(step_maxwell(z, z, src, 1e-3, g), DataError);
}

TEST_CASE("field energy of a unit constant is one half") {
  Grid g = test_grid(16);
  Vec3Field e = Vec3Field::constant(16, 16, 1.0, 0.0, 0.0);
  Vec3Field zv = Vec3Field::zero(16, 16);
  Field zf = Field::Zero(16, 16);
  EmReport rep = em_energy_and_residuals(e, zv, zv, zf, zf, g);
  CHECK(rep.energy == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rep.resH == 0.0);
}

TEST_CASE("gauss residuals vanish on affine compatible data") {
  const int n = 20;
  Grid g = test_grid(n);
  Vec3Field e = Vec3Field::zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      e.x(i, j) = g.xc(i);
      e.y(i, j) = g.yc(j);
    }
  Field rho = Field::Constant(n, n, 2.0);
  Field c = Field::Zero(n, n);
  Vec3Field zv = Vec3Field::zero(n, n);
  EmReport rep = em_energy_and_residuals(e, zv, zv, rho, c, g);
  CHECK(rep.resE <= 1e-13);
  CHECK(rep.resH <= 1e-13);
}
