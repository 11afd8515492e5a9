#include "spindrift/operators.hpp"

namespace spindrift {

namespace {

void check_min_extent(Eigen::Index n, const char* what) {
  if (n < 3) throw ShapeError(std::string(what) + ": need at least 3 cells");
}

}  // namespace

Field dx_c(const Field& u, Real hx, const SideClosures& c) {
  const Eigen::Index nx = u.rows(), ny = u.cols();
  check_min_extent(nx, "dx_c");
  Field d(nx, ny);
  const Real i2h = 1.0 / (2.0 * hx);

  d.block(1, 0, nx - 2, ny) =
      (u.block(2, 0, nx - 2, ny) - u.block(0, 0, nx - 2, ny)) * i2h;

  auto row = [&](Eigen::Index i) { return u.row(i); };
  switch (c.lo.kind) {
    case Closure::OneSided:
      d.row(0) = (-3.0 * row(0) + 4.0 * row(1) - row(2)) * i2h;
      break;
    case Closure::Even:
      d.row(0) = (row(1) - row(0)) * i2h;
      break;
    case Closure::Odd:
      d.row(0) = (row(1) + row(0)) * i2h;
      break;
    case Closure::Value:
      d.row(0) = (row(1) + row(0) - 2.0 * c.lo.value) * i2h;
      break;
    case Closure::Periodic:
      d.row(0) = (row(1) - row(nx - 1)) * i2h;
      break;
  }
  switch (c.hi.kind) {
    case Closure::OneSided:
      d.row(nx - 1) =
          (3.0 * row(nx - 1) - 4.0 * row(nx - 2) + row(nx - 3)) * i2h;
      break;
    case Closure::Even:
      d.row(nx - 1) = (row(nx - 1) - row(nx - 2)) * i2h;
      break;
    case Closure::Odd:
      d.row(nx - 1) = (-row(nx - 1) - row(nx - 2)) * i2h;
      break;
    case Closure::Value:
      d.row(nx - 1) = (2.0 * c.hi.value - row(nx - 1) - row(nx - 2)) * i2h;
      break;
    case Closure::Periodic:
      d.row(nx - 1) = (row(0) - row(nx - 2)) * i2h;
      break;
  }
  return d;
}

Field dy_c(const Field& u, Real hy, const SideClosures& c) {
  const Eigen::Index nx = u.rows(), ny = u.cols();
  check_min_extent(ny, "dy_c");
  Field d(nx, ny);
  const Real i2h = 1.0 / (2.0 * hy);

  d.block(0, 1, nx, ny - 2) =
      (u.block(0, 2, nx, ny - 2) - u.block(0, 0, nx, ny - 2)) * i2h;

  auto col = [&](Eigen::Index j) { return u.col(j); };
  switch (c.lo.kind) {
    case Closure::OneSided:
      d.col(0) = (-3.0 * col(0) + 4.0 * col(1) - col(2)) * i2h;
      break;
    case Closure::Even:
      d.col(0) = (col(1) - col(0)) * i2h;
      break;
    case Closure::Odd:
      d.col(0) = (col(1) + col(0)) * i2h;
      break;
    case Closure::Value:
      d.col(0) = (col(1) + col(0) - 2.0 * c.lo.value) * i2h;
      break;
    case Closure::Periodic:
      d.col(0) = (col(1) - col(ny - 1)) * i2h;
      break;
  }
  switch (c.hi.kind) {
    case Closure::OneSided:
      d.col(ny - 1) =
          (3.0 * col(ny - 1) - 4.0 * col(ny - 2) + col(ny - 3)) * i2h;
      break;
    case Closure::Even:
      d.col(ny - 1) = (col(ny - 1) - col(ny - 2)) * i2h;
      break;
    case Closure::Odd:
      d.col(ny - 1) = (-col(ny - 1) - col(ny - 2)) * i2h;
      break;
    case Closure::Value:
      d.col(ny - 1) = (2.0 * c.hi.value - col(ny - 1) - col(ny - 2)) * i2h;
      break;
    case Closure::Periodic:
      d.col(ny - 1) = (col(0) - col(ny - 2)) * i2h;
      break;
  }
  return d;
}

Vec2Field grad2(const Field& u, const Grid& g, const GradBc& bc) {
  if (u.rows() != g.nx() || u.cols() != g.ny())
    throw ShapeError("grad2: field does not match grid");
  return {dx_c(u, g.hx(), bc.x), dy_c(u, g.hy(), bc.y)};
}

Field div2(const Vec2Field& v, const Grid& g, const DivBc& bc) {
  require_same_shape(v.x, v.y, "div2");
  if (v.x.rows() != g.nx() || v.x.cols() != g.ny())
    throw ShapeError("div2: field does not match grid");
  return dx_c(v.x, g.hx(), bc.x) + dy_c(v.y, g.hy(), bc.y);
}

Vec3Field curl3(const Vec3Field& u, const Grid& g, const CurlBc& bc) {
  require_same_shape(u.x, u.y, "curl3");
  require_same_shape(u.x, u.z, "curl3");
  if (u.x.rows() != g.nx() || u.x.cols() != g.ny())
    throw ShapeError("curl3: field does not match grid");
  // (d_y u3, -d_x u3, d_x u2 - d_y u1); no z derivatives in a planar domain.
  return {dy_c(u.z, g.hy(), bc.y), -dx_c(u.z, g.hx(), bc.x),
          dx_c(u.y, g.hx(), bc.x) - dy_c(u.x, g.hy(), bc.y)};
}

namespace {

// Second difference along x with ghost closures, divided by hx^2.
Field dxx(const Field& u, Real hx, const SideClosures& c) {
  const Eigen::Index nx = u.rows(), ny = u.cols();
  check_min_extent(nx, "lap_compact");
  Field d(nx, ny);
  const Real ih2 = 1.0 / (hx * hx);

  d.block(1, 0, nx - 2, ny) =
      (u.block(2, 0, nx - 2, ny) - 2.0 * u.block(1, 0, nx - 2, ny) +
       u.block(0, 0, nx - 2, ny)) *
      ih2;

  auto row = [&](Eigen::Index i) { return u.row(i); };
  switch (c.lo.kind) {
    case Closure::Even:
      d.row(0) = (row(1) - row(0)) * ih2;
      break;
    case Closure::Odd:
      d.row(0) = (row(1) - 3.0 * row(0)) * ih2;
      break;
    case Closure::Value:
      d.row(0) = (row(1) - 3.0 * row(0) + 2.0 * c.lo.value) * ih2;
      break;
    case Closure::Periodic:
      d.row(0) = (row(1) - 2.0 * row(0) + row(nx - 1)) * ih2;
      break;
    case Closure::OneSided:
      throw ShapeError("lap_compact: one-sided closure not supported");
  }
  switch (c.hi.kind) {
    case Closure::Even:
      d.row(nx - 1) = (row(nx - 2) - row(nx - 1)) * ih2;
      break;
    case Closure::Odd:
      d.row(nx - 1) = (row(nx - 2) - 3.0 * row(nx - 1)) * ih2;
      break;
    case Closure::Value:
      d.row(nx - 1) =
          (row(nx - 2) - 3.0 * row(nx - 1) + 2.0 * c.hi.value) * ih2;
      break;
    case Closure::Periodic:
      d.row(nx - 1) = (row(0) - 2.0 * row(nx - 1) + row(nx - 2)) * ih2;
      break;
    case Closure::OneSided:
      throw ShapeError("lap_compact: one-sided closure not supported");
  }
  return d;
}

Field dyy(const Field& u, Real hy, const SideClosures& c) {
  const Eigen::Index nx = u.rows(), ny = u.cols();
  check_min_extent(ny, "lap_compact");
  Field d(nx, ny);
  const Real ih2 = 1.0 / (hy * hy);

  d.block(0, 1, nx, ny - 2) =
      (u.block(0, 2, nx, ny - 2) - 2.0 * u.block(0, 1, nx, ny - 2) +
       u.block(0, 0, nx, ny - 2)) *
      ih2;

  auto col = [&](Eigen::Index j) { return u.col(j); };
  switch (c.lo.kind) {
    case Closure::Even:
      d.col(0) = (col(1) - col(0)) * ih2;
      break;
    case Closure::Odd:
      d.col(0) = (col(1) - 3.0 * col(0)) * ih2;
      break;
    case Closure::Value:
      d.col(0) = (col(1) - 3.0 * col(0) + 2.0 * c.lo.value) * ih2;
      break;
    case Closure::Periodic:
      d.col(0) = (col(1) - 2.0 * col(0) + col(ny - 1)) * ih2;
      break;
    case Closure::OneSided:
      throw ShapeError("lap_compact: one-sided closure not supported");
  }
  switch (c.hi.kind) {
    case Closure::Even:
      d.col(ny - 1) = (col(ny - 2) - col(ny - 1)) * ih2;
      break;
    case Closure::Odd:
      d.col(ny - 1) = (col(ny - 2) - 3.0 * col(ny - 1)) * ih2;
      break;
    case Closure::Value:
      d.col(ny - 1) =
          (col(ny - 2) - 3.0 * col(ny - 1) + 2.0 * c.hi.value) * ih2;
      break;
    case Closure::Periodic:
      d.col(ny - 1) = (col(0) - 2.0 * col(ny - 1) + col(ny - 2)) * ih2;
      break;
    case Closure::OneSided:
      throw ShapeError("lap_compact: one-sided closure not supported");
  }
  return d;
}

}  // namespace

Field lap_compact(const Field& u, Real hx, Real hy, const LapBc& bc) {
  return dxx(u, hx, bc.x) + dyy(u, hy, bc.y);
}

Field lap_neumann(const Field& u, const Grid& g) {
  if (u.rows() != g.nx() || u.cols() != g.ny())
    throw ShapeError("lap_neumann: field does not match grid");
  LapBc bc;
  if (g.tags.periodic) {
    bc.x = bc.y = periodic_sides();
  } else {
    bc.x = {Closure::even(), Closure::even()};
    bc.y = {Closure::even(), Closure::even()};
  }
  return lap_compact(u, g.hx(), g.hy(), bc);
}

Field lap_patch_neumann(const Field& u, const Grid& g, const CellRect& p) {
  Field out = Field::Zero(u.rows(), u.cols());
  if (p.empty()) return out;
  const Eigen::Index pi = p.i1 - p.i0 + 1, pj = p.j1 - p.j0 + 1;
  Field patch = u.block(p.i0, p.j0, pi, pj);
  LapBc bc{{Closure::even(), Closure::even()},
           {Closure::even(), Closure::even()}};
  out.block(p.i0, p.j0, pi, pj) = lap_compact(patch, g.hx(), g.hy(), bc);
  return out;
}

namespace {

Closure wall_closure(EdgeLabel l, EdgeLabel odd_on) {
  return l == odd_on ? Closure::odd() : Closure::even();
}

}  // namespace

CurlBc curl_bc_electric(const BoundaryTag& tags) {
  if (tags.periodic) return CurlBc{periodic_sides(), periodic_sides()};
  // Tangential E vanishes on Dirichlet (electric-wall) sides.
  CurlBc bc;
  bc.x = {wall_closure(tags.label(Side::XLo), EdgeLabel::Dirichlet),
          wall_closure(tags.label(Side::XHi), EdgeLabel::Dirichlet)};
  bc.y = {wall_closure(tags.label(Side::YLo), EdgeLabel::Dirichlet),
          wall_closure(tags.label(Side::YHi), EdgeLabel::Dirichlet)};
  return bc;
}

CurlBc curl_bc_magnetic(const BoundaryTag& tags) {
  if (tags.periodic) return CurlBc{periodic_sides(), periodic_sides()};
  // Tangential H vanishes on Neumann (magnetic-wall) sides.
  CurlBc bc;
  bc.x = {wall_closure(tags.label(Side::XLo), EdgeLabel::Neumann),
          wall_closure(tags.label(Side::XHi), EdgeLabel::Neumann)};
  bc.y = {wall_closure(tags.label(Side::YLo), EdgeLabel::Neumann),
          wall_closure(tags.label(Side::YHi), EdgeLabel::Neumann)};
  return bc;
}

}  // namespace spindrift
