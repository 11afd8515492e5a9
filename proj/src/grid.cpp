#include "spindrift/grid.hpp"

#include <cmath>
#include <string>

namespace spindrift {

Field Grid::x_centers() const {
  Field f(spec.nx, spec.ny);
  for (int j = 0; j < spec.ny; ++j)
    for (int i = 0; i < spec.nx; ++i) f(i, j) = xc(i);
  return f;
}

Field Grid::y_centers() const {
  Field f(spec.nx, spec.ny);
  for (int j = 0; j < spec.ny; ++j)
    for (int i = 0; i < spec.nx; ++i) f(i, j) = yc(j);
  return f;
}

namespace {

void check_spec(const GridSpec& spec) {
  if (spec.nx < 3 || spec.ny < 3)
    throw GeometryError("grid must be at least 3x3 cells, got " +
                        std::to_string(spec.nx) + "x" + std::to_string(spec.ny));
  if (!(spec.Lx > 0) || !(spec.Ly > 0))
    throw GeometryError("domain extents must be positive");
}

void check_rect(const Rect& r, const GridSpec& spec, const char* name) {
  if (r.x1 < r.x0 || r.y1 < r.y0)
    throw GeometryError(std::string(name) + ": empty or inverted rectangle");
  if (!(r.x0 > 0 && r.x1 < spec.Lx && r.y0 > 0 && r.y1 < spec.Ly))
    throw GeometryError(std::string(name) +
                        " must lie strictly inside the domain");
}

bool rects_overlap(const Rect& a, const Rect& b) {
  // Positive-area intersection; layers sharing only an edge are disjoint.
  return a.x0 < b.x1 && b.x0 < a.x1 && a.y0 < b.y1 && b.y0 < a.y1;
}

// Mask of cell centers inside the closed rectangle; rectangles are required
// to produce contiguous index blocks, which cell-center membership of a
// rectangle always does.
CellRect rect_cells(const Rect& r, const Grid& g, int* count, BoolField* mask) {
  CellRect c{g.nx(), -1, g.ny(), -1};
  *count = 0;
  for (int j = 0; j < g.ny(); ++j)
    for (int i = 0; i < g.nx(); ++i)
      if (r.contains(g.xc(i), g.yc(j))) {
        (*mask)(i, j) = true;
        ++*count;
        c.i0 = std::min(c.i0, i);
        c.i1 = std::max(c.i1, i);
        c.j0 = std::min(c.j0, j);
        c.j1 = std::max(c.j1, j);
      }
  if (*count == 0) c = CellRect{};
  return c;
}

Grid assemble(const GridSpec& spec, const Rect& omega1, const Rect& omega2,
              const BoundaryTag& layout, bool allow_boundary_touch) {
  check_spec(spec);
  if (rects_overlap(omega1, omega2))
    throw GeometryError("magnetic layers overlap");

  Grid g;
  g.spec = spec;
  g.tags = layout;
  g.tags.xlo.assign(spec.ny, layout.side_label[0]);
  g.tags.xhi.assign(spec.ny, layout.side_label[1]);
  g.tags.ylo.assign(spec.nx, layout.side_label[2]);
  g.tags.yhi.assign(spec.nx, layout.side_label[3]);

  g.mask.in1 = BoolField::Constant(spec.nx, spec.ny, false);
  g.mask.in2 = BoolField::Constant(spec.nx, spec.ny, false);
  CellRect c1 = rect_cells(omega1, g, &g.mask.count1, &g.mask.in1);
  CellRect c2 = rect_cells(omega2, g, &g.mask.count2, &g.mask.in2);
  g.mask.in_omega = g.mask.in1 || g.mask.in2;
  g.omega01 = g.mask.in_omega.cast<Real>();

  if (!allow_boundary_touch) {
    for (const CellRect& c : {c1, c2}) {
      if (c.empty()) continue;
      if (c.i0 == 0 || c.i1 == spec.nx - 1 || c.j0 == 0 || c.j1 == spec.ny - 1)
        throw GeometryError("magnetic layer occupies a boundary cell");
    }
  }
  if (!c1.empty()) g.patches.push_back(c1);
  if (!c2.empty()) g.patches.push_back(c2);
  return g;
}

}  // namespace

Grid build_grid(const GridSpec& spec, const Rect& omega1, const Rect& omega2,
                const BoundaryTag& layout) {
  if (layout.periodic)
    throw GeometryError("periodic layout requires the torus harness");
  if (!layout.has_neumann())
    throw GeometryError("boundary layout needs at least one Neumann side");
  check_rect(omega1, spec, "omega1");
  check_rect(omega2, spec, "omega2");
  return assemble(spec, omega1, omega2, layout, /*allow_boundary_touch=*/false);
}

Grid build_grid(const GridSpec& spec, const Rect& omega1, const Rect& omega2) {
  return build_grid(spec, omega1, omega2, default_layout());
}

Grid torus_grid(const GridSpec& spec, const Rect& omega1, const Rect& omega2) {
  BoundaryTag t;
  t.periodic = true;
  Grid g = assemble(spec, omega1, omega2, t, /*allow_boundary_touch=*/true);
  return g;
}

}  // namespace spindrift
