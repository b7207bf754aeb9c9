#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "saddlepairs/errors.hpp"

namespace saddlepairs {

// Planar vector, optionally carrying exact integer coordinates. The origami
// tracer and SL(2,Z) images of integer vectors produce exact vectors;
// polygon-surface tracing produces float ones. Predicates on two exact
// vectors evaluate in integer arithmetic.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  bool exact = false;
  std::int64_t ix = 0;
  std::int64_t iy = 0;

  static Vec2 real(double x, double y) { return Vec2{x, y, false, 0, 0}; }
  static Vec2 integer(std::int64_t ix, std::int64_t iy) {
    return Vec2{static_cast<double>(ix), static_cast<double>(iy), true, ix, iy};
  }
};

inline bool operator==(const Vec2& a, const Vec2& b) {
  if (a.exact && b.exact) return a.ix == b.ix && a.iy == b.iy;
  return a.x == b.x && a.y == b.y;
}

inline Vec2 negate(const Vec2& a) {
  return a.exact ? Vec2::integer(-a.ix, -a.iy) : Vec2::real(-a.x, -a.y);
}

inline double norm2(const Vec2& a) {
  if (a.exact) return static_cast<double>(a.ix * a.ix + a.iy * a.iy);
  return a.x * a.x + a.y * a.y;
}

inline double norm(const Vec2& a) { return std::sqrt(norm2(a)); }

// Signed cross product x_a y_b - y_a x_b; |.| is the virtual area of the pair.
inline double cross(const Vec2& a, const Vec2& b) {
  if (a.exact && b.exact) {
    return static_cast<double>(static_cast<__int128>(a.ix) * b.iy -
                               static_cast<__int128>(a.iy) * b.ix);
  }
  return a.x * b.y - a.y * b.x;
}

inline double wedge(const Vec2& a, const Vec2& b) { return std::abs(cross(a, b)); }

// Exact-zero parallelism test: integer cross product for exact pairs,
// floating-point zero otherwise (perturbed data never cancels exactly).
inline bool is_parallel(const Vec2& a, const Vec2& b) {
  if (a.exact && b.exact) {
    return static_cast<__int128>(a.ix) * b.iy ==
           static_cast<__int128>(a.iy) * b.ix;
  }
  return cross(a, b) == 0.0;
}

struct Mat2 {
  // row-major [[a, b], [c, d]]
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;
};

// diag(e^t, e^-t): the time-t geodesic scaling.
inline Mat2 geodesic_flow(double t) {
  return Mat2{std::exp(t), 0.0, 0.0, std::exp(-t)};
}

// counterclockwise rotation by theta.
inline Mat2 rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return Mat2{c, -s, s, c};
}

inline Vec2 apply(const Mat2& m, const Vec2& v) {
  return Vec2::real(m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y);
}

inline Mat2 compose(const Mat2& m, const Mat2& n) {
  return Mat2{m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
              m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
}

inline double det(const Mat2& m) { return m.a * m.d - m.b * m.c; }

// Largest singular value, i.e. sqrt of the top eigenvalue of M^T M. For
// determinant-one matrices the eigenvalue is tr/2 + sqrt((tr/2)^2 - 1) with
// tr = trace(M^T M); otherwise the general closed form is used.
inline double operator_norm(const Mat2& m) {
  const double tr = m.a * m.a + m.b * m.b + m.c * m.c + m.d * m.d;
  const double dt = det(m);
  if (std::abs(std::abs(dt) - 1.0) <= 1e-12) {
    const double h = tr / 2.0;
    return std::sqrt(h + std::sqrt(std::max(h * h - 1.0, 0.0)));
  }
  const double disc = std::max(tr * tr - 4.0 * dt * dt, 0.0);
  return std::sqrt((tr + std::sqrt(disc)) / 2.0);
}

// Constants controlling how far a mate w can stray from z while the pair can
// still meet the rotated trapezoid test at time t with area bound A:
//   ratio_excess   = 8A + 16A^2            (squared-norm ratio excess, scaled e^{-4t})
//   frame_bound    = sqrt(2)*sqrt(1+ratio_excess) + 2A   (|w| cap after framing z)
//   expansion_cap  = 8*pi*frame_bound      (cap after one unit of expansion)
struct DerivedConstants {
  double ratio_excess = 0.0;
  double frame_bound = 0.0;
  double expansion_cap = 0.0;
};

inline DerivedConstants derived_constants(double area_bound) {
  require(area_bound >= 0.0, ErrorCode::NonPositiveParams,
          "area bound must be nonnegative");
  DerivedConstants k;
  k.ratio_excess = 8.0 * area_bound + 16.0 * area_bound * area_bound;
  k.frame_bound =
      std::sqrt(2.0) * std::sqrt(1.0 + k.ratio_excess) + 2.0 * area_bound;
  k.expansion_cap = 8.0 * M_PI * k.frame_bound;
  return k;
}

// Norm cap sqrt(1 + ratio_excess * e^{-4t}) * |z| on mates with positive arc.
inline double mate_norm_factor(double t, double area_bound) {
  return std::sqrt(1.0 +
                   derived_constants(area_bound).ratio_excess * std::exp(-4.0 * t));
}

}  // namespace saddlepairs
