#pragma once

#include <array>
#include <vector>

#include "spindrift/types.hpp"

namespace spindrift {

// Uniform cell-centered grid over Omega = [0,Lx] x [0,Ly].
struct GridSpec {
  int nx = 0, ny = 0;
  Real Lx = 1.0, Ly = 1.0;

  Real hx() const { return Lx / nx; }
  Real hy() const { return Ly / ny; }
};

// Closed axis-aligned rectangle, used for the magnetic subdomains.
struct Rect {
  Real x0 = 0, x1 = 0, y0 = 0, y1 = 0;

  bool contains(Real x, Real y) const {
    return x >= x0 && x <= x1 && y >= y0 && y <= y1;
  }
};

// Inclusive cell-index rectangle: the contiguous block of cells whose centers
// fall inside one magnetic layer.
struct CellRect {
  int i0 = 0, i1 = -1, j0 = 0, j1 = -1;

  bool empty() const { return i1 < i0 || j1 < j0; }
  int cells() const { return empty() ? 0 : (i1 - i0 + 1) * (j1 - j0 + 1); }
};

// Cell membership of the two ferromagnetic layers; omega = in1 | in2.
struct SubdomainMask {
  BoolField in1, in2, in_omega;
  int count1 = 0, count2 = 0;
};

// Sides of the rectangular boundary.
enum class Side { XLo = 0, XHi = 1, YLo = 2, YHi = 3 };

// Boundary-condition label carried by each boundary edge: Dirichlet edges
// hold the contact data (tangential E, carrier density), Neumann edges are
// insulating (tangential H, zero normal fluxes).
enum class EdgeLabel { Dirichlet, Neumann };

// Per-edge labels of the four sides.  Labels are uniform along each side
// (the per-edge vectors exist so that every boundary edge carries exactly one
// label and can be queried individually).
struct BoundaryTag {
  std::array<EdgeLabel, 4> side_label = {EdgeLabel::Dirichlet,
                                         EdgeLabel::Dirichlet,
                                         EdgeLabel::Neumann, EdgeLabel::Neumann};
  std::vector<EdgeLabel> xlo, xhi;  // length ny
  std::vector<EdgeLabel> ylo, yhi;  // length nx
  bool periodic = false;            // torus harness: no boundary at all

  EdgeLabel label(Side s) const { return side_label[static_cast<int>(s)]; }
  bool dirichlet(Side s) const { return label(s) == EdgeLabel::Dirichlet; }
  bool has_neumann() const {
    for (auto l : side_label)
      if (l == EdgeLabel::Neumann) return true;
    return false;
  }
};

struct Grid {
  GridSpec spec;
  SubdomainMask mask;
  BoundaryTag tags;
  std::vector<CellRect> patches;  // one per nonempty magnetic layer
  Field omega01;                  // 1 on omega cells, 0 elsewhere

  int nx() const { return spec.nx; }
  int ny() const { return spec.ny; }
  Real hx() const { return spec.hx(); }
  Real hy() const { return spec.hy(); }

  Real xc(int i) const { return (i + 0.5) * hx(); }
  Real yc(int j) const { return (j + 0.5) * hy(); }

  // Field of cell-center coordinates.
  Field x_centers() const;
  Field y_centers() const;

  // Cells whose div(curl .) stencil is fully central; residual diagnostics
  // are reported over this set.
  bool interior2(int i, int j) const {
    if (tags.periodic) return true;
    return i >= 2 && i <= spec.nx - 3 && j >= 2 && j <= spec.ny - 3;
  }
};

// Builds the grid, the layer masks (cell-center-in-rectangle rule), and the
// boundary labels.  Throws GeometryError on degenerate sizes, overlapping or
// boundary-touching layers, or an all-Dirichlet boundary.
Grid build_grid(const GridSpec& spec, const Rect& omega1, const Rect& omega2,
                const BoundaryTag& layout);

// Convenience: default layout (Dirichlet contacts on the x sides, insulating
// y sides).
Grid build_grid(const GridSpec& spec, const Rect& omega1, const Rect& omega2);

// Test harness: fully periodic grid (every cell interior, no boundary labels
// apply).  Layers may be empty.
Grid torus_grid(const GridSpec& spec, const Rect& omega1, const Rect& omega2);

inline BoundaryTag default_layout() { return BoundaryTag{}; }

// Test harness: insulating boundary on all four sides.
inline BoundaryTag all_neumann_layout() {
  BoundaryTag t;
  t.side_label = {EdgeLabel::Neumann, EdgeLabel::Neumann, EdgeLabel::Neumann,
                  EdgeLabel::Neumann};
  return t;
}

}  // namespace spindrift
