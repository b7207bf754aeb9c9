#pragma once

#include "saddlepairs/enumerate.hpp"
#include "saddlepairs/region.hpp"

namespace saddlepairs {

// Sum of the region indicator over the holonomy multiset: single vectors for
// one-argument regions (Trapezoid), ordered pairs otherwise. The enumeration
// must cover the region's support radius; regions of unbounded support
// (Fibered) always fail that check.
long long sv_transform(const HolonomySet& set, const Region& region,
                       int threads = 0);

// Renormalized circle average of the pair transform at time t: the average
// over rotation angles equals (1/2pi) * sum over ordered pairs of the exact
// pair arc measure, computed per pair rather than by sampling angles.
double circle_average_transform(const HolonomySet& set, double t,
                                double area_bound, double tol = 1e-10,
                                int threads = 0);

// |shell pair count at radius e^t  -  pi e^{2t} * circle average| / e^{2t},
// the normalized gap the renormalization argument drives to zero.
double approximation_error(const HolonomySet& set, double t, double area_bound,
                           double tol = 1e-10, int threads = 0);

}  // namespace saddlepairs
