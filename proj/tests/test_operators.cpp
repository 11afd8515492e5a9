#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "spindrift/errors.hpp"
#include "spindrift/measure.hpp"
#include "spindrift/operators.hpp"
#include "spindrift/random.hpp"

using namespace spindrift;

namespace {

const double kPi = 3.14159265358979323846;

Grid test_grid(int n) {
  return build_grid(GridSpec{n, n, 1.0, 1.0}, Rect{0.25, 0.75, 0.25, 0.75},
                    Rect{1.0 / n, 1.0 / n, 1.0 / n, 1.0 / n});
}

}  // namespace

TEST_CASE("curl of (0,0,x) is (0,-1,0) everywhere") {
  Grid g = test_grid(16);
  Vec3Field u = Vec3Field::zero(16, 16);
  u.z = g.x_centers();
  // one-sided closures are exact on affine data, so the whole field matches
  CurlBc bc{one_sided_sides(), one_sided_sides()};
  Vec3Field c = curl3(u, g, bc);
  CHECK(linf(c.x) <= 1e-13);
  CHECK(linf((c.y + 1.0).eval()) <= 1e-13);
  CHECK(linf(c.z) <= 1e-13);
}

TEST_CASE("div of (x,y) is 2 everywhere") {
  Grid g = test_grid(16);
  Vec2Field v{g.x_centers(), g.y_centers()};
  Field d = div2(v, g, measure_div_bc(g));
  CHECK(linf((d - 2.0).eval()) <= 1e-13);
}

TEST_CASE("div of curl vanishes on fully central cells") {
  Grid g = test_grid(24);
  std::mt19937_64 rng(7);
  Vec3Field u = random_vec3(24, 24, rng);
  Vec3Field c = curl3(u, g, curl_bc_electric(g.tags));
  Field d = div2(planar(c), g, measure_div_bc(g));
  // The composed stencil amplifies rounding by 1/(hx*hy).
  const Real tol = 1e-15 / (g.hx() * g.hy());
  CHECK(linf_interior2(g, d) <= tol);

  // and identically on the torus, where every cell is interior
  Grid t = torus_grid(GridSpec{24, 24, 1.0, 1.0}, Rect{0.25, 0.75, 0.25, 0.75},
                      Rect{0.125, 0.125, 0.125, 0.125});
  CurlBc per{periodic_sides(), periodic_sides()};
  Vec3Field ct = curl3(u, t, per);
  Field dt = div2(planar(ct), t, measure_div_bc(t));
  CHECK(linf(dt) <= tol);
}

TEST_CASE("grad and -div are adjoint for fields supported away from walls") {
  Grid g = test_grid(20);
  std::mt19937_64 rng(11);
  Field phi = random_field(20, 20, rng);
  Vec2Field v{random_field(20, 20, rng), random_field(20, 20, rng)};
  for (int j = 0; j < 20; ++j)
    for (int i = 0; i < 20; ++i)
      if (i < 3 || i > 16 || j < 3 || j > 16) {
        phi(i, j) = 0.0;
        v.x(i, j) = 0.0;
        v.y(i, j) = 0.0;
      }
  Vec2Field gp = grad2(phi, g, measure_grad_bc(g));
  Field dv = div2(v, g, measure_div_bc(g));
  Real lhs = integral(gp.x * v.x + gp.y * v.y, g.hx(), g.hy());
  Real rhs = integral(phi * dv, g.hx(), g.hy());
  Real scale = std::sqrt(sq_l2(phi, g.hx(), g.hy())) *
               std::sqrt(sq_l2(v.x, g.hx(), g.hy()) + sq_l2(v.y, g.hx(), g.hy()));
  CHECK(std::abs(lhs + rhs) <= 1e-12 * (1.0 + scale));
}

TEST_CASE("second-order convergence of grad on a smooth field") {
  auto err = [](int n) {
    Grid g = test_grid(n);
    Field u(n, n), gx(n, n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        u(i, j) = std::sin(kPi * g.xc(i)) * std::sin(kPi * g.yc(j));
        gx(i, j) = kPi * std::cos(kPi * g.xc(i)) * std::sin(kPi * g.yc(j));
      }
    Vec2Field gr = grad2(u, g, measure_grad_bc(g));
    return std::sqrt(sq_l2((gr.x - gx).eval(), g.hx(), g.hy()));
  };
  Real e1 = err(32), e2 = err(64);
  CHECK(std::log2(e1 / e2) >= 1.9);
}

TEST_CASE("mirror closures") {
  // Even: derivative of a field symmetric about the wall face vanishes at the
  // wall cell only to O(h^2); on cos(pi x) (even about x=0 and x=1) it is
  // exact because the continuation matches the mirror identically.
  int n = 16;
  Grid g = test_grid(n);
  Field u(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) u(i, j) = std::cos(kPi * g.xc(i));
  GradBc bc{{Closure::even(), Closure::even()}, {Closure::even(), Closure::even()}};
  Vec2Field gr = grad2(u, g, bc);
  Field gx(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) gx(i, j) = -kPi * std::sin(kPi * g.xc(i));
  // interior second order; wall cells still second order thanks to symmetry
  CHECK(linf((gr.x - gx).eval()) <= 0.05);
  CHECK(linf(gr.y) <= 1e-14);

  // Value(g): ghost = 2g - u0 is exact on affine data hitting g at the face
  Field a = g.x_centers();
  GradBc vb{{Closure::dirichlet(0.0), Closure::dirichlet(1.0)},
            {Closure::even(), Closure::even()}};
  Vec2Field ga = grad2(a, g, vb);
  CHECK(linf((ga.x - 1.0).eval()) <= 1e-13);

  // Odd: ghost = -u0 is exact for fields odd about the face value 0
  Field s(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) s(i, j) = std::sin(2.0 * kPi * g.xc(i));
  GradBc ob{{Closure::odd(), Closure::odd()}, {Closure::even(), Closure::even()}};
  Vec2Field gs = grad2(s, g, ob);
  Field gsx(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      gsx(i, j) = 2.0 * kPi * std::cos(2.0 * kPi * g.xc(i));
  CHECK(linf((gs.x - gsx).eval()) <= 0.3);  // second order, h = 1/16
}

TEST_CASE("periodic closure wraps exactly") {
  int n = 32;
  Grid t = torus_grid(GridSpec{n, n, 1.0, 1.0}, Rect{0.25, 0.75, 0.25, 0.75},
                      Rect{1.0 / n, 1.0 / n, 1.0 / n, 1.0 / n});
  Field u(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) u(i, j) = std::sin(2.0 * kPi * t.xc(i));
  Vec2Field gr = grad2(u, t, measure_grad_bc(t));
  // the discrete derivative of a grid mode is sin(2 pi h)/h times the cosine
  Real fac = std::sin(2.0 * kPi * t.hx()) / t.hx();
  Field gx(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) gx(i, j) = fac * std::cos(2.0 * kPi * t.xc(i));
  CHECK(linf((gr.x - gx).eval()) <= 1e-12);
}

TEST_CASE("lap_neumann annihilates constants") {
  Grid g = test_grid(12);
  Field c = Field::Constant(12, 12, 3.7);
  CHECK(linf(lap_neumann(c, g)) == 0.0);
}

TEST_CASE("patch laplacian is layer-local") {
  Grid g = test_grid(12);
  std::mt19937_64 rng(3);
  Field u = random_field(12, 12, rng);
  REQUIRE(g.patches.size() == 1);
  Field l = lap_patch_neumann(u, g, g.patches[0]);
  for (int j = 0; j < 12; ++j)
    for (int i = 0; i < 12; ++i)
      if (!g.mask.in_omega(i, j)) CHECK(l(i, j) == 0.0);
  // constants on the patch are annihilated
  Field c = Field::Constant(12, 12, 2.0);
  CHECK(linf(lap_patch_neumann(c, g, g.patches[0])) == 0.0);
}

TEST_CASE("shape mismatches are rejected") {
  Grid g = test_grid(8);
  Field wrong = Field::Zero(5, 8);
  CHECK_THROWS_AS(grad2(wrong, g, measure_grad_bc(g)), ShapeError);
  Vec2Field bad{Field::Zero(8, 8), Field::Zero(5, 8)};
  CHECK_THROWS_AS(div2(bad, g, measure_div_bc(g)), ShapeError);
  LapBc lb{one_sided_sides(), one_sided_sides()};
  CHECK_THROWS_AS(lap_compact(Field::Zero(8, 8), 0.125, 0.125, lb), ShapeError);
}

TEST_CASE("electromagnetic closure builders") {
  Grid g = test_grid(8);  // Dirichlet x sides, Neumann y sides
  CurlBc e = curl_bc_electric(g.tags);
  CHECK(e.x.lo.kind == Closure::Odd);
  CHECK(e.x.hi.kind == Closure::Odd);
  CHECK(e.y.lo.kind == Closure::Even);
  CHECK(e.y.hi.kind == Closure::Even);
  CurlBc h = curl_bc_magnetic(g.tags);
  CHECK(h.x.lo.kind == Closure::Even);
  CHECK(h.y.lo.kind == Closure::Odd);

  Grid t = torus_grid(GridSpec{8, 8, 1.0, 1.0}, Rect{0.25, 0.75, 0.25, 0.75},
                      Rect{0.125, 0.125, 0.125, 0.125});
  CurlBc p = curl_bc_electric(t.tags);
  CHECK(p.x.lo.kind == Closure::Periodic);
  CHECK(p.y.hi.kind == Closure::Periodic);
}
