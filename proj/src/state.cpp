#include "spindrift/state.hpp"

#include <cmath>

#include "spindrift/errors.hpp"
#include "spindrift/linsolve.hpp"
#include "spindrift/measure.hpp"
#include "spindrift/operators.hpp"

namespace spindrift {

Field truncate(const Field& z, Real M) { return z.max(0.0).min(M); }

std::array<Real, 3> spin_direction(const std::array<Real, 3>& s, Real M) {
  if (std::isinf(M)) return s;
  const Real n = std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]);
  if (n == 0.0) return {0.0, 0.0, 0.0};
  const Real scale = std::min(M, n) / n;
  return {s[0] * scale, s[1] * scale, s[2] * scale};
}

Vec3Field spin_direction(const Vec3Field& s, Real M) {
  if (std::isinf(M)) return s;
  Field n = norm(s);
  // min(M,n)/n, with the continuous extension 0 at n = 0.
  Field scale = (n > 0.0).select(n.min(M) / n.max(1e-300), Field::Zero(n.rows(), n.cols()));
  return scale * s;
}

InitialReport validate_initial(const Grid& grid, const SimState& state,
                               const PhysParams& params, Real tol) {
  if (!all_finite(state.rho) || !all_finite(state.s) || !all_finite(state.E) ||
      !all_finite(state.H) || !all_finite(state.m) || !all_finite(params.C))
    throw DataError("validate_initial: non-finite entry in initial data");

  InitialReport r;
  const DivBc dbc = measure_div_bc(grid);

  Field gaussE = div2(planar(state.E), grid, dbc) - (state.rho - params.C);
  r.resE = linf_interior2(grid, gaussE);

  Vec2Field hm{state.H.x + state.m.x, state.H.y + state.m.y};
  r.resH = linf_interior2(grid, div2(hm, grid, dbc));

  // |E . nu| on Gamma_N walls, extrapolated to the wall from the two nearest
  // cell centers.
  if (!grid.tags.periodic) {
    const int nx = grid.nx(), ny = grid.ny();
    auto wall = [](Real u0, Real u1) { return std::abs((3.0 * u0 - u1) / 2.0); };
    if (!grid.tags.dirichlet(Side::XLo))
      for (int j = 0; j < ny; ++j)
        r.max_en = std::max(r.max_en, wall(state.E.x(0, j), state.E.x(1, j)));
    if (!grid.tags.dirichlet(Side::XHi))
      for (int j = 0; j < ny; ++j)
        r.max_en =
            std::max(r.max_en, wall(state.E.x(nx - 1, j), state.E.x(nx - 2, j)));
    if (!grid.tags.dirichlet(Side::YLo))
      for (int i = 0; i < nx; ++i)
        r.max_en = std::max(r.max_en, wall(state.E.y(i, 0), state.E.y(i, 1)));
    if (!grid.tags.dirichlet(Side::YHi))
      for (int i = 0; i < nx; ++i)
        r.max_en =
            std::max(r.max_en, wall(state.E.y(i, ny - 1), state.E.y(i, ny - 2)));
  }

  Field mn = norm(state.m);
  for (int j = 0; j < grid.ny(); ++j)
    for (int i = 0; i < grid.nx(); ++i) {
      if (grid.mask.in_omega(i, j))
        r.max_m_defect = std::max(r.max_m_defect, std::abs(mn(i, j) - 1.0));
      else
        r.max_m_outside = std::max(r.max_m_outside, mn(i, j));
    }

  r.pass = r.resE <= tol && r.resH <= tol && r.max_en <= tol &&
           r.max_m_defect <= tol && r.max_m_outside <= tol;
  return r;
}

namespace {

// Potential closures: grounded Dirichlet contacts, reflecting Neumann walls.
GradBc potential_bc(const Grid& g) {
  if (g.tags.periodic) return GradBc{periodic_sides(), periodic_sides()};
  auto side = [&](Side s) {
    return g.tags.dirichlet(s) ? Closure::dirichlet(0.0) : Closure::even();
  };
  return GradBc{{side(Side::XLo), side(Side::XHi)},
                {side(Side::YLo), side(Side::YHi)}};
}

}  // namespace

Vec3Field init_electric_field(const Grid& grid, const Field& rho0,
                              const Field& C, Real tol, int max_iter) {
  if (!all_finite(rho0) || !all_finite(C))
    throw DataError("init_electric_field: non-finite input");
  require_same_shape(rho0, C, "init_electric_field");

  const GradBc bc = potential_bc(grid);
  StencilSolver solver(assemble_poisson(grid, bc));
  Field rhs = rho0 - C;
  Field phi = solver.solve(rhs, nullptr, tol, max_iter);

  Vec2Field e = grad2(phi, grid, bc);
  return Vec3Field{std::move(e.x), std::move(e.y),
                   Field::Zero(grid.nx(), grid.ny())};
}

}  // namespace spindrift
