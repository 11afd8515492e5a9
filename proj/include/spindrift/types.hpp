#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "spindrift/errors.hpp"

namespace spindrift {

using Real = double;

constexpr Real kInf = std::numeric_limits<Real>::infinity();
constexpr Real kNaN = std::numeric_limits<Real>::quiet_NaN();

// Dense cell-centered fields.  Entry (i, j) is the value at cell center
// ((i + 1/2) hx, (j + 1/2) hy); storage is column-major so the x index runs
// fastest in memory, and all flattened traversals use index j*nx + i.
template <class Scalar>
using Array2 = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Field = Array2<Real>;
using BoolField = Array2<bool>;

// Planar (x,y) vector field, one Field per component.
struct Vec2Field {
  Field x, y;

  static Vec2Field zero(Eigen::Index nx, Eigen::Index ny) {
    return {Field::Zero(nx, ny), Field::Zero(nx, ny)};
  }
};

// Full 3-vector field over the 2D grid.
struct Vec3Field {
  Field x, y, z;

  static Vec3Field zero(Eigen::Index nx, Eigen::Index ny) {
    return {Field::Zero(nx, ny), Field::Zero(nx, ny), Field::Zero(nx, ny)};
  }
  static Vec3Field constant(Eigen::Index nx, Eigen::Index ny, Real cx, Real cy,
                            Real cz) {
    return {Field::Constant(nx, ny, cx), Field::Constant(nx, ny, cy),
            Field::Constant(nx, ny, cz)};
  }
};

inline Field dot(const Vec3Field& a, const Vec3Field& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Field squared_norm(const Vec3Field& a) { return dot(a, a); }

inline Field norm(const Vec3Field& a) { return squared_norm(a).sqrt(); }

inline Vec3Field cross(const Vec3Field& a, const Vec3Field& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline Vec3Field operator+(const Vec3Field& a, const Vec3Field& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}

inline Vec3Field operator-(const Vec3Field& a, const Vec3Field& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}

inline Vec3Field operator*(Real c, const Vec3Field& a) {
  return {c * a.x, c * a.y, c * a.z};
}

inline Vec3Field operator*(const Field& c, const Vec3Field& a) {
  return {c * a.x, c * a.y, c * a.z};
}

inline Vec2Field operator+(const Vec2Field& a, const Vec2Field& b) {
  return {a.x + b.x, a.y + b.y};
}

inline Vec2Field operator-(const Vec2Field& a, const Vec2Field& b) {
  return {a.x - b.x, a.y - b.y};
}

inline Vec2Field operator*(Real c, const Vec2Field& a) {
  return {c * a.x, c * a.y};
}

// Deterministic reduction: fixed-association pairwise summation.  Every
// integral and norm in the library funnels through this so that identical
// inputs give bit-identical results regardless of expression context.
inline Real pairwise_sum(const Real* data, std::ptrdiff_t n) {
  if (n <= 8) {
    Real acc = 0.0;
    for (std::ptrdiff_t i = 0; i < n; ++i) acc += data[i];
    return acc;
  }
  const std::ptrdiff_t half = n / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

inline Real sum(const Field& f) { return pairwise_sum(f.data(), f.size()); }

// \int f dx via the midpoint rule (exact pairing with cell-centered values).
inline Real integral(const Field& f, Real hx, Real hy) {
  return sum(f) * hx * hy;
}

inline Real sq_l2(const Field& f, Real hx, Real hy) {
  Field s = f * f;
  return integral(s, hx, hy);
}

inline Real sq_l2(const Vec3Field& f, Real hx, Real hy) {
  Field s = squared_norm(f);
  return integral(s, hx, hy);
}

inline Real linf(const Field& f) {
  if (f.size() == 0) return 0.0;
  return f.abs().maxCoeff();
}

inline Real linf(const Vec3Field& f) {
  if (f.x.size() == 0) return 0.0;
  return norm(f).maxCoeff();
}

inline bool all_finite(const Field& f) { return f.isFinite().all(); }

inline bool all_finite(const Vec3Field& f) {
  return all_finite(f.x) && all_finite(f.y) && all_finite(f.z);
}

inline void require_same_shape(const Field& a, const Field& b,
                               const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw ShapeError(std::string(what) + ": field shapes differ (" +
                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " vs " + std::to_string(b.rows()) + "x" +
                     std::to_string(b.cols()) + ")");
}

}  // namespace spindrift
