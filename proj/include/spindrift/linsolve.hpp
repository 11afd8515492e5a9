#pragma once

#include <memory>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "spindrift/operators.hpp"

namespace spindrift {

using SpMat = Eigen::SparseMatrix<Real>;
using SpMatRow = Eigen::SparseMatrix<Real, Eigen::RowMajor>;

// 1D centered first derivative as a sparse matrix (linear part only: a
// Dirichlet mirror closure enters as its value-free Odd form, the constant
// offset is applied to right-hand sides through the array kernels).
SpMatRow deriv1d(int n, Real h, const SideClosures& c);

// 1D compact second difference (ghost closures; see lap_compact).
SpMatRow secdiff1d(int n, Real h, const SideClosures& c);

// Composite planar Laplacian L = DIV2(GRAD2 .) on the flattened grid
// (index j*nx + i), boundary rows included in flux-divergence form.  This is
// the operator the implicit transport step inverts, so the accepted update
// ρ' = ρ + dt·DIV2(flux) reproduces backward Euler up to the linear-solve
// residual.
SpMat assemble_div_grad(const Grid& g, const GradBc& grad_bc,
                        const DivBc& div_bc);

// Same composite at interior cells, but compact-Laplacian rows at boundary
// cells.  The compact rows do not factor through GRAD2 and therefore remove
// the checkerboard kernel of the wide composite, making the electrostatic
// init problem uniquely solvable.
SpMat assemble_poisson(const Grid& g, const GradBc& grad_bc);

// Residual-verified solver for an assembled stencil operator.  A sparse LU
// factorization is attempted once up front and reused across solves; if the
// factorization fails (singular stencil) or its answer misses the residual
// target, least-squares CG on the normal equations takes over.  Either way
// solve() verifies the true residual ‖Ax - b‖∞ ≤ tol·max(1, ‖b‖∞) and throws
// ConvergenceError if no path reaches it.
class StencilSolver {
 public:
  explicit StencilSolver(SpMat A);

  Field solve(const Field& rhs, const Field* guess, Real tol,
              int max_iter) const;

  const SpMat& matrix() const { return A_; }

 private:
  SpMat A_;
  std::unique_ptr<Eigen::SparseLU<SpMat>> lu_;
  mutable Eigen::LeastSquaresConjugateGradient<SpMat> lscg_;
};

// Flatten/unflatten between Field (nx, ny) and stacked vectors (j*nx + i).
Eigen::VectorXd flatten(const Field& f);
Field unflatten(const Eigen::VectorXd& v, int nx, int ny);

}  // namespace spindrift
