#pragma once

#include "spindrift/grid.hpp"
#include "spindrift/types.hpp"

namespace spindrift {

// Ghost-cell closure applied at one side when a centered stencil reaches past
// the boundary.  With cell centers at (i+1/2)h the boundary face sits halfway
// between the ghost and the first interior center, so:
//   Even     : ghost = u0            (reflect; zero normal derivative at face)
//   Odd      : ghost = -u0           (mirror with face value 0)
//   Value(g) : ghost = 2g - u0       (mirror with Dirichlet face value g)
//   OneSided : no ghost; second-order one-sided stencil
//   Periodic : wrap around
struct Closure {
  enum Kind { OneSided, Even, Odd, Value, Periodic };
  Kind kind = OneSided;
  Real value = 0.0;

  static Closure one_sided() { return {OneSided, 0.0}; }
  static Closure even() { return {Even, 0.0}; }
  static Closure odd() { return {Odd, 0.0}; }
  static Closure dirichlet(Real g) { return {Value, g}; }
  static Closure periodic() { return {Periodic, 0.0}; }
};

// Per-side closures for one scalar derivative direction.
struct SideClosures {
  Closure lo, hi;
};

// Centered first derivatives, second order everywhere (closures are exact on
// affine data for OneSided/Value/Periodic, and on compatible data for
// Even/Odd).
Field dx_c(const Field& u, Real hx, const SideClosures& c);
Field dy_c(const Field& u, Real hy, const SideClosures& c);

// Closure context for GRAD2 of a scalar: x sides and y sides.
struct GradBc {
  SideClosures x, y;
};

// GRAD2: planar gradient of a scalar field.
Vec2Field grad2(const Field& u, const Grid& g, const GradBc& bc);

// DIV2: planar divergence of a planar vector field.  The x closure applies to
// the x component's d/dx, the y closure to the y component's d/dy (the only
// derivatives taken).
struct DivBc {
  SideClosures x, y;
};
Field div2(const Vec2Field& v, const Grid& g, const DivBc& bc);

// CURL3 of a field with no z dependence:
//   curl u = (d_y u3, -d_x u3, d_x u2 - d_y u1).
// One closure per side, applied to the two components tangential to that side
// (the only components the curl differentiates there).
struct CurlBc {
  SideClosures x;  // applied to u2 and u3 in d/dx
  SideClosures y;  // applied to u1 and u3 in d/dy
};
Vec3Field curl3(const Vec3Field& u, const Grid& g, const CurlBc& bc);

// Compact five-point Laplacian with ghost closures (OneSided is not
// meaningful here and is rejected).
struct LapBc {
  SideClosures x, y;
};
Field lap_compact(const Field& u, Real hx, Real hy, const LapBc& bc);

// LAP_NEUMANN: compact Laplacian with reflecting ghosts on all four sides;
// annihilates constants exactly.
Field lap_neumann(const Field& u, const Grid& g);

// Compact Laplacian of u restricted to one cell patch with reflecting ghosts
// at the patch boundary; returns a full-size field that is zero off-patch.
Field lap_patch_neumann(const Field& u, const Grid& g, const CellRect& p);

// Named operator kinds, mirroring the module surface.
enum class OpKind { GRAD2, DIV2, CURL3, LAP_NEUMANN };

// Closure builders for the electromagnetic curls.  Image-theory mirrors: a
// Dirichlet side behaves as an electric wall (tangential E odd, tangential H
// even), a Neumann side as a magnetic wall (tangential H odd, tangential E
// even).
CurlBc curl_bc_electric(const BoundaryTag& tags);
CurlBc curl_bc_magnetic(const BoundaryTag& tags);

inline SideClosures periodic_sides() {
  return {Closure::periodic(), Closure::periodic()};
}

}  // namespace spindrift
