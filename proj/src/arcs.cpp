#include "saddlepairs/arcs.hpp"

#include <algorithm>
#include <cmath>

#include "saddlepairs/errors.hpp"

namespace saddlepairs {

std::vector<Arc> trapezoid_arcs(const Vec2& z, double t) {
  require(norm2(z) > 0.0, ErrorCode::ZeroVector, "arc measure of zero vector");
  const double r = norm(z);
  const double et = std::exp(t);
  const double rmax = std::sqrt(2.0 * std::cosh(2.0 * t));
  if (r <= et / 2.0 || r > rmax) return {};

  const double alpha = std::atan(std::exp(-2.0 * t));  // sector half-width
  const double phimax =
      std::min(alpha, std::acos(std::min(1.0, et / (2.0 * r))));
  const double phimin = r > et ? std::acos(std::min(1.0, et / r)) : 0.0;
  if (phimax <= phimin) return {};

  // theta_z rotates z to the vertical; phi measures deviation from vertical.
  const double theta_z = M_PI / 2.0 - std::atan2(z.y, z.x);
  if (phimin == 0.0) return {{theta_z - phimax, theta_z + phimax}};
  return {{theta_z - phimax, theta_z - phimin},
          {theta_z + phimin, theta_z + phimax}};
}

double arc_measure(const Vec2& z, double t) {
  double total = 0.0;
  for (const Arc& a : trapezoid_arcs(z, t)) total += a.hi - a.lo;
  return total;
}

namespace {

// Sign function for the mate constraint |Im r_theta z| >= |Im r_theta w|,
// as the equivalent smooth expression |z|^2 sin^2(theta+az) - |w|^2
// sin^2(theta+aw) (the e^{-t} scaling cancels on both sides).
struct MateConstraint {
  double z2, w2, az, aw;
  double operator()(double theta) const {
    const double sz = std::sin(theta + az);
    const double sw = std::sin(theta + aw);
    return z2 * sz * sz - w2 * sw * sw;
  }
};

}  // namespace

double arc_measure(const Vec2& z, const Vec2& w, double t, double area_bound,
                   double tol) {
  require(norm2(z) > 0.0, ErrorCode::ZeroVector, "arc measure of zero vector");
  require(tol > 0.0, ErrorCode::NonPositiveTolerance,
          "bisection tolerance must be positive");
  if (wedge(z, w) > area_bound) return 0.0;  // rotation/scaling invariant

  const std::vector<Arc> arcs = trapezoid_arcs(z, t);
  if (arcs.empty()) return 0.0;

  const MateConstraint q{norm2(z), norm2(w), std::atan2(z.y, z.x),
                         std::atan2(w.y, w.x)};

  // q(theta) = K - (R/2) cos(2 theta + psi): a sinusoid in 2*theta.
  const double K = (q.z2 - q.w2) / 2.0;
  const double P = q.z2 * std::cos(2.0 * q.az) - q.w2 * std::cos(2.0 * q.aw);
  const double Q = q.z2 * std::sin(2.0 * q.az) - q.w2 * std::sin(2.0 * q.aw);
  const double R = std::hypot(P, Q);

  double total = 0.0;
  for (const Arc& arc : arcs) {
    std::vector<double> pts{arc.lo, arc.hi};
    if (R > 0.0 && std::abs(2.0 * K / R) <= 1.0) {
      const double psi = std::atan2(Q, P);
      const double base = std::acos(std::clamp(2.0 * K / R, -1.0, 1.0));
      for (double s : {base, -base}) {
        const long k0 =
            static_cast<long>(std::floor((2.0 * arc.lo + psi - s) / (2.0 * M_PI))) - 1;
        for (long k = k0; k < k0 + 4; ++k) {
          const double theta = (s + 2.0 * M_PI * k - psi) / 2.0;
          if (theta > arc.lo && theta < arc.hi) pts.push_back(theta);
        }
      }
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    }

    // Signs at subinterval midpoints; refine each sign change by bisection.
    std::vector<double> mids(pts.size() - 1);
    std::vector<int> sgn(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      mids[i] = 0.5 * (pts[i] + pts[i + 1]);
      sgn[i] = q(mids[i]) >= 0.0 ? 1 : -1;
    }
    std::vector<double> bounds;  // refined boundaries interleaved with ends
    bounds.push_back(arc.lo);
    for (std::size_t i = 0; i + 1 < mids.size(); ++i) {
      if (sgn[i] == sgn[i + 1]) continue;
      double lo = mids[i], hi = mids[i + 1];
      double flo = q(lo);
      for (int it = 0; it < 200 && hi - lo > tol * 0.25; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = q(mid);
        if ((fm >= 0.0) == (flo >= 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      bounds.push_back(0.5 * (lo + hi));
    }
    bounds.push_back(arc.hi);
    // Accumulate pieces where the constraint holds. The sign on
    // [bounds[j], bounds[j+1]] is the midpoint sign of the covering piece.
    for (std::size_t j = 0; j + 1 < bounds.size(); ++j) {
      const double mid = 0.5 * (bounds[j] + bounds[j + 1]);
      if (q(mid) >= 0.0) total += bounds[j + 1] - bounds[j];
    }
  }
  return total;
}

}  // namespace saddlepairs
