#include "spindrift/linsolve.hpp"

#include <vector>

namespace spindrift {

namespace {

using Triplet = Eigen::Triplet<Real>;

void add_lo_row(std::vector<Triplet>* t, int n, Real i2h, const Closure& c) {
  switch (c.kind) {
    case Closure::OneSided:
      t->emplace_back(0, 0, -3.0 * i2h);
      t->emplace_back(0, 1, 4.0 * i2h);
      t->emplace_back(0, 2, -i2h);
      break;
    case Closure::Even:
      t->emplace_back(0, 0, -i2h);
      t->emplace_back(0, 1, i2h);
      break;
    case Closure::Odd:
    case Closure::Value:  // linear part of the mirror
      t->emplace_back(0, 0, i2h);
      t->emplace_back(0, 1, i2h);
      break;
    case Closure::Periodic:
      t->emplace_back(0, 1, i2h);
      t->emplace_back(0, n - 1, -i2h);
      break;
  }
}

void add_hi_row(std::vector<Triplet>* t, int n, Real i2h, const Closure& c) {
  const int m = n - 1;
  switch (c.kind) {
    case Closure::OneSided:
      t->emplace_back(m, m, 3.0 * i2h);
      t->emplace_back(m, m - 1, -4.0 * i2h);
      t->emplace_back(m, m - 2, i2h);
      break;
    case Closure::Even:
      t->emplace_back(m, m, i2h);
      t->emplace_back(m, m - 1, -i2h);
      break;
    case Closure::Odd:
    case Closure::Value:
      t->emplace_back(m, m, -i2h);
      t->emplace_back(m, m - 1, -i2h);
      break;
    case Closure::Periodic:
      t->emplace_back(m, 0, i2h);
      t->emplace_back(m, m - 1, -i2h);
      break;
  }
}

}  // namespace

SpMatRow deriv1d(int n, Real h, const SideClosures& c) {
  const Real i2h = 1.0 / (2.0 * h);
  std::vector<Triplet> t;
  t.reserve(2 * n + 2);
  for (int i = 1; i < n - 1; ++i) {
    t.emplace_back(i, i - 1, -i2h);
    t.emplace_back(i, i + 1, i2h);
  }
  add_lo_row(&t, n, i2h, c.lo);
  add_hi_row(&t, n, i2h, c.hi);
  SpMatRow m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SpMatRow secdiff1d(int n, Real h, const SideClosures& c) {
  const Real ih2 = 1.0 / (h * h);
  std::vector<Triplet> t;
  t.reserve(3 * n);
  for (int i = 1; i < n - 1; ++i) {
    t.emplace_back(i, i - 1, ih2);
    t.emplace_back(i, i, -2.0 * ih2);
    t.emplace_back(i, i + 1, ih2);
  }
  auto lo = [&](const Closure& cl) {
    switch (cl.kind) {
      case Closure::Even:
        t.emplace_back(0, 0, -ih2);
        t.emplace_back(0, 1, ih2);
        break;
      case Closure::Odd:
      case Closure::Value:
        t.emplace_back(0, 0, -3.0 * ih2);
        t.emplace_back(0, 1, ih2);
        break;
      case Closure::Periodic:
        t.emplace_back(0, 0, -2.0 * ih2);
        t.emplace_back(0, 1, ih2);
        t.emplace_back(0, n - 1, ih2);
        break;
      case Closure::OneSided:
        throw ShapeError("secdiff1d: one-sided closure not supported");
    }
  };
  auto hi = [&](const Closure& cl) {
    const int m = n - 1;
    switch (cl.kind) {
      case Closure::Even:
        t.emplace_back(m, m, -ih2);
        t.emplace_back(m, m - 1, ih2);
        break;
      case Closure::Odd:
      case Closure::Value:
        t.emplace_back(m, m, -3.0 * ih2);
        t.emplace_back(m, m - 1, ih2);
        break;
      case Closure::Periodic:
        t.emplace_back(m, m, -2.0 * ih2);
        t.emplace_back(m, m - 1, ih2);
        t.emplace_back(m, 0, ih2);
        break;
      case Closure::OneSided:
        throw ShapeError("secdiff1d: one-sided closure not supported");
    }
  };
  lo(c.lo);
  hi(c.hi);
  SpMatRow m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

namespace {

// Appends a ⊗-structure row product: out(row, j*nx+col) += w for every entry
// (rrow -> col, w) of the 1D row, along the x direction (fixed j).
void append_x_row(std::vector<Triplet>* t, const SpMatRow& m1d, int i, int j,
                  int nx) {
  for (SpMatRow::InnerIterator it(m1d, i); it; ++it)
    t->emplace_back(j * nx + i, j * nx + it.col(), it.value());
}

void append_y_row(std::vector<Triplet>* t, const SpMatRow& m1d, int i, int j,
                  int nx) {
  for (SpMatRow::InnerIterator it(m1d, j); it; ++it)
    t->emplace_back(j * nx + i, it.col() * nx + i, it.value());
}

}  // namespace

SpMat assemble_div_grad(const Grid& g, const GradBc& grad_bc,
                        const DivBc& div_bc) {
  const int nx = g.nx(), ny = g.ny();
  SpMatRow gx = deriv1d(nx, g.hx(), grad_bc.x);
  SpMatRow gy = deriv1d(ny, g.hy(), grad_bc.y);
  SpMatRow dxm = deriv1d(nx, g.hx(), div_bc.x);
  SpMatRow dym = deriv1d(ny, g.hy(), div_bc.y);
  SpMatRow px = (dxm * gx).pruned();
  SpMatRow py = (dym * gy).pruned();

  std::vector<Triplet> t;
  t.reserve(static_cast<size_t>(nx) * ny * 10);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      append_x_row(&t, px, i, j, nx);
      append_y_row(&t, py, i, j, nx);
    }
  SpMat a(nx * ny, nx * ny);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

SpMat assemble_poisson(const Grid& g, const GradBc& grad_bc) {
  const int nx = g.nx(), ny = g.ny();
  SpMatRow gx = deriv1d(nx, g.hx(), grad_bc.x);
  SpMatRow gy = deriv1d(ny, g.hy(), grad_bc.y);
  // Interior rows: wide composite with the divergence taken centrally (no
  // closure is reached at interior cells).
  SideClosures free{Closure::one_sided(), Closure::one_sided()};
  SpMatRow px = (deriv1d(nx, g.hx(), free) * gx).pruned();
  SpMatRow py = (deriv1d(ny, g.hy(), free) * gy).pruned();
  SpMatRow sx = secdiff1d(nx, g.hx(), grad_bc.x);
  SpMatRow sy = secdiff1d(ny, g.hy(), grad_bc.y);

  const bool per = g.tags.periodic;
  std::vector<Triplet> t;
  t.reserve(static_cast<size_t>(nx) * ny * 10);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const bool boundary =
          !per && (i == 0 || i == nx - 1 || j == 0 || j == ny - 1);
      if (boundary) {
        append_x_row(&t, sx, i, j, nx);
        append_y_row(&t, sy, i, j, nx);
      } else {
        append_x_row(&t, px, i, j, nx);
        append_y_row(&t, py, i, j, nx);
      }
    }
  SpMat a(nx * ny, nx * ny);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

Eigen::VectorXd flatten(const Field& f) {
  return Eigen::Map<const Eigen::VectorXd>(f.data(), f.size());
}

Field unflatten(const Eigen::VectorXd& v, int nx, int ny) {
  Field f(nx, ny);
  Eigen::Map<Eigen::VectorXd>(f.data(), f.size()) = v;
  return f;
}

StencilSolver::StencilSolver(SpMat A) : A_(std::move(A)) {
  A_.makeCompressed();
  auto lu = std::make_unique<Eigen::SparseLU<SpMat>>();
  lu->compute(A_);
  if (lu->info() == Eigen::Success) lu_ = std::move(lu);
  lscg_.compute(A_);
}

Field StencilSolver::solve(const Field& rhs, const Field* guess, Real tol,
                           int max_iter) const {
  const int nx = static_cast<int>(rhs.rows());
  const int ny = static_cast<int>(rhs.cols());
  Eigen::VectorXd b = flatten(rhs);
  const Real bscale = std::max(1.0, b.lpNorm<Eigen::Infinity>());
  if (b.lpNorm<Eigen::Infinity>() == 0.0) return Field::Zero(nx, ny);

  if (lu_) {
    Eigen::VectorXd x = lu_->solve(b);
    if (lu_->info() == Eigen::Success &&
        (A_ * x - b).lpNorm<Eigen::Infinity>() <= tol * bscale)
      return unflatten(x, nx, ny);
  }

  lscg_.setMaxIterations(max_iter);
  Eigen::VectorXd x;
  // The solver's internal criterion lives on the normal equations; drive it
  // harder than the requested residual and verify the true residual directly.
  for (Real inner : {tol * 1e-2, tol * 1e-5, tol * 1e-8}) {
    lscg_.setTolerance(std::max(inner, 1e-15));
    if (guess != nullptr) {
      Eigen::VectorXd g0 = flatten(*guess);
      x = lscg_.solveWithGuess(b, g0);
    } else {
      x = lscg_.solve(b);
    }
    const Real res = (A_ * x - b).lpNorm<Eigen::Infinity>();
    if (res <= tol * bscale) return unflatten(x, nx, ny);
    guess = nullptr;  // retry cold with a tighter inner tolerance
  }
  const Real res = (A_ * x - b).lpNorm<Eigen::Infinity>();
  throw ConvergenceError("stencil linear solve failed to reach tolerance",
                         res);
}

}  // namespace spindrift
