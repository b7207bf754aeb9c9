#pragma once

#include <vector>

#include "saddlepairs/planar.hpp"

namespace saddlepairs {

// Closed theta interval [lo, hi]; measure hi - lo. Intervals are reported in
// an unwrapped parameterization (values may leave [0, 2pi)); only measures
// and relative positions are meaningful.
struct Arc {
  double lo = 0.0;
  double hi = 0.0;
};

// The set of rotation angles theta for which scaling by diag(e^t, e^-t) after
// rotating z lands inside the unit trapezoid {1/2 <= y <= 1, |x| <= y}.
// Closed form: zero outside e^t/2 < |z| <= sqrt(2 cosh 2t), a single arc of
// width 2*acos(e^t / (2|z|)) up to |z| = sqrt(cosh(2t)/2), the full sector
// width 2*atan(e^{-2t}) up to |z| = e^t, and a pair of top-clipped arcs of
// total width 2*(atan(e^{-2t}) - acos(e^t/|z|)) beyond.
std::vector<Arc> trapezoid_arcs(const Vec2& z, double t);

// Total measure of trapezoid_arcs.
double arc_measure(const Vec2& z, double t);

// Measure of the theta set where additionally the rotated-scaled mate w stays
// within the sheared band around z: |area(z,w)| <= area_bound (rotation
// invariant) and |Im w'| <= |Im z'| after the rotation and scaling. Boundary
// crossings of the second constraint are located analytically on each arc and
// refined by bisection; the result is within 2*tol*(number of crossings) of
// the true measure.
double arc_measure(const Vec2& z, const Vec2& w, double t, double area_bound,
                   double tol = 1e-10);

}  // namespace saddlepairs
