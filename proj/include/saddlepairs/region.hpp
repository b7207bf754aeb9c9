#pragma once

#include "saddlepairs/planar.hpp"

namespace saddlepairs {

// Planar regions used by the renormalized counting machinery. Pair regions
// live in C^2 = (z, w); Trapezoid is the only single-vector region.
enum class RegionTag {
  Trapezoid,   // {x+iy : 1/2 <= y <= 1, |x| <= y}, single vector
  Fibered,     // {(z,w) : |w^z| <= A, |Im w| <= |Im z|}, needs Im z != 0
  Main,        // shell [sqrt(cosh 2t / 2), e^t] with short mate
  InnerShell,  // annulus pairs in [e^t/2, sqrt(cosh 2t / 2)]
  NearEqual,   // shell [sqrt(cosh 2t / 2), e^t] with long mate
  OuterShell,  // positive arc with |z| > e^t
  Swapped,     // positive arc, |z| in [e^t/2, e^t], |w| > |z|
  Large,       // bounding set containing all pair regions above
  Annulus,     // {|w^z| <= A, |w| <= |z|, r1 <= |z| <= r2}
};

const char* region_tag_name(RegionTag tag);

// Region parameters. t is the log-radius of the renormalization window,
// area_bound the virtual-area cap A; r1/r2 are used by Annulus only.
struct Region {
  RegionTag tag;
  double t = 0.0;
  double area_bound = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;

  static Region trapezoid();
  static Region fibered(double area_bound);
  static Region main_term(double t, double area_bound);
  static Region inner_shell(double t, double area_bound);
  static Region near_equal(double t, double area_bound);
  static Region outer_shell(double t, double area_bound);
  static Region swapped(double t, double area_bound);
  static Region large(double t, double area_bound);
  static Region annulus(double r1, double r2, double area_bound);
};

// Membership for the single-vector region (Trapezoid only).
bool region_contains(const Region& region, const Vec2& z);

// Membership for pair regions, inequality signs exactly as printed in the
// defining displays (Main uses strict < on the mate bound, NearEqual strict
// >; shells are closed). Throws InvalidFiber for Fibered with Im z = 0.
bool region_contains(const Region& region, const Vec2& z, const Vec2& w);

// Largest vector norm that can occur in the region (either coordinate).
// Infinite for Fibered, which is unbounded in the plane.
double support_radius(const Region& region);

}  // namespace saddlepairs
