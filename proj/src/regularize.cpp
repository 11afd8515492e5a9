#include "spindrift/regularize.hpp"

#include <cmath>

#include "spindrift/measure.hpp"
#include "spindrift/operators.hpp"
#include "spindrift/random.hpp"

namespace spindrift {

namespace {

int fold_index(int i, int n, bool periodic) {
  if (periodic) {
    i %= n;
    return i < 0 ? i + n : i;
  }
  // Half-sample mirror at both walls (cell-centered reflection).
  while (i < 0 || i >= n) {
    if (i < 0) i = -1 - i;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

std::vector<Real> triangle_weights(int r) {
  std::vector<Real> w(2 * r + 1);
  const Real norm = static_cast<Real>((r + 1) * (r + 1));
  for (int k = -r; k <= r; ++k)
    w[k + r] = static_cast<Real>(r + 1 - std::abs(k)) / norm;
  return w;
}

Field convolve_x(const Field& u, int r, bool periodic) {
  if (r == 0) return u;
  const int nx = static_cast<int>(u.rows()), ny = static_cast<int>(u.cols());
  const std::vector<Real> w = triangle_weights(r);
  Field out(nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      Real acc = 0.0;
      for (int k = -r; k <= r; ++k)
        acc += w[k + r] * u(fold_index(i + k, nx, periodic), j);
      out(i, j) = acc;
    }
  return out;
}

Field convolve_y(const Field& u, int r, bool periodic) {
  if (r == 0) return u;
  const int nx = static_cast<int>(u.rows()), ny = static_cast<int>(u.cols());
  const std::vector<Real> w = triangle_weights(r);
  Field out(nx, ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      Real acc = 0.0;
      for (int k = -r; k <= r; ++k)
        acc += w[k + r] * u(i, fold_index(j + k, ny, periodic));
      out(i, j) = acc;
    }
  return out;
}

int radius(Real eps, Real h) {
  if (!(eps >= 0.0)) throw DataError("smoothing length must be >= 0");
  if (eps == 0.0) return 0;
  return static_cast<int>(std::ceil(eps / h));
}

}  // namespace

Field smooth_space(const Field& u, Real eps_x, const Grid& g) {
  const int rx = radius(eps_x, g.hx());
  const int ry = radius(eps_x, g.hy());
  if (rx == 0 && ry == 0) return u;
  const bool per = g.tags.periodic;
  return convolve_y(convolve_x(u, rx, per), ry, per);
}

Vec3Field smooth_space(const Vec3Field& u, Real eps_x, const Grid& g) {
  Vec3Field out;
  out.x = smooth_space(u.x, eps_x, g);
  out.y = smooth_space(u.y, eps_x, g);
  out.z = smooth_space(u.z, eps_x, g);
  return out;
}

namespace {

// Whole-sample mirror about the first sample; top folds only guard the
// degenerate window-longer-than-series case.
int fold_time(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i;
    if (i >= n) i = 2 * (n - 1) - i;
  }
  return i;
}

}  // namespace

SmoothedSeries smooth_time(const std::vector<Real>& v, Real eps_t, Real dt) {
  if (v.size() < 2)
    throw DataError("smooth_time: series needs at least 2 samples");
  if (!(dt > 0.0)) throw DataError("smooth_time: dt must be positive");
  if (!(eps_t >= 0.0)) throw DataError("smoothing length must be >= 0");
  const int n = static_cast<int>(v.size());
  const int w = eps_t == 0.0 ? 0 : static_cast<int>(std::ceil(eps_t / dt));

  SmoothedSeries out;
  out.value.resize(n);
  out.deriv.resize(n);
  for (int i = 0; i < n; ++i) {
    Real acc = 0.0;
    for (int k = 0; k <= w; ++k) acc += v[fold_time(i - k, n)];
    out.value[i] = acc / static_cast<Real>(w + 1);
  }
  out.deriv[0] = 0.0;
  for (int i = 1; i < n; ++i)
    out.deriv[i] = (out.value[i] - out.value[i - 1]) / dt;
  return out;
}

TimeSmoother::TimeSmoother(Real eps_t, Real dt) : dt_(dt) {
  if (!(dt > 0.0)) throw DataError("TimeSmoother: dt must be positive");
  if (!(eps_t >= 0.0)) throw DataError("smoothing length must be >= 0");
  w_ = eps_t == 0.0 ? 0 : static_cast<int>(std::ceil(eps_t / dt));
}

void TimeSmoother::push(const Vec3Field& sample) {
  hist_.push_back(sample);
  // With a trivial window only the backward-difference pair is needed.
  if (w_ == 0 && hist_.size() > 2) hist_.pop_front();
}

Vec3Field TimeSmoother::window_mean(long long n) const {
  // n is a deque index; with w_ > 0 the deque holds the full stream so it is
  // also the absolute sample index.  Reflected indices fold into [0, n]: the
  // stream only knows samples up to n.
  const int nn = static_cast<int>(n);
  Vec3Field acc = Vec3Field::zero(static_cast<int>(hist_.front().x.rows()),
                                  static_cast<int>(hist_.front().x.cols()));
  for (int k = 0; k <= w_; ++k) {
    int idx = nn - k;
    if (nn == 0) {
      idx = 0;
    } else {
      while (idx < 0 || idx > nn) {
        if (idx < 0) idx = -idx;
        if (idx > nn) idx = 2 * nn - idx;
      }
    }
    acc = acc + hist_[static_cast<size_t>(idx)];
  }
  return (1.0 / static_cast<Real>(w_ + 1)) * acc;
}

Vec3Field TimeSmoother::value() const {
  if (hist_.empty()) throw DataError("TimeSmoother: empty history");
  return window_mean(static_cast<long long>(hist_.size()) - 1);
}

Vec3Field TimeSmoother::rate() const {
  if (hist_.empty()) throw DataError("TimeSmoother: empty history");
  const long long n = static_cast<long long>(hist_.size()) - 1;
  if (n == 0)
    return Vec3Field::zero(static_cast<int>(hist_.front().x.rows()),
                           static_cast<int>(hist_.front().x.cols()));
  const Vec3Field a = window_mean(n);
  const Vec3Field b = window_mean(n - 1);
  return (1.0 / dt_) * (a - b);
}

Vec3Field TimeSmoother::rate_with(const Vec3Field& next) const {
  if (hist_.empty())
    return Vec3Field::zero(static_cast<int>(next.x.rows()),
                           static_cast<int>(next.x.cols()));
  const int nn = static_cast<int>(hist_.size());  // index of the candidate
  Vec3Field acc = Vec3Field::zero(static_cast<int>(next.x.rows()),
                                  static_cast<int>(next.x.cols()));
  for (int k = 0; k <= w_; ++k) {
    int idx = nn - k;
    while (idx < 0 || idx > nn) {
      if (idx < 0) idx = -idx;
      if (idx > nn) idx = 2 * nn - idx;
    }
    acc = acc + (idx == nn ? next : hist_[static_cast<size_t>(idx)]);
  }
  const Vec3Field a = (1.0 / static_cast<Real>(w_ + 1)) * acc;
  const Vec3Field b = window_mean(nn - 1);
  return (1.0 / dt_) * (a - b);
}

Real c1_norm(const Field& u, const Grid& g) {
  const Vec2Field du = grad2(u, g, measure_grad_bc(g));
  return linf(u) + std::max(linf(du.x), linf(du.y));
}

RegConstants measure_reg_constants(const Grid& g, Real eps_x,
                                   unsigned long long seed, int samples) {
  std::mt19937_64 rng(seed);
  RegConstants out;
  for (int s = 0; s < samples; ++s) {
    const Field u = random_field(g.nx(), g.ny(), rng);
    const Real l2 = std::sqrt(sq_l2(u, g.hx(), g.hy()));
    if (l2 == 0.0) continue;
    const Field ru = smooth_space(u, eps_x, g);
    out.k0 = std::max(out.k0, std::sqrt(sq_l2(ru, g.hx(), g.hy())) / l2);
    out.k_eps = std::max(out.k_eps, c1_norm(ru, g) / l2);
  }
  return out;
}

}  // namespace spindrift
