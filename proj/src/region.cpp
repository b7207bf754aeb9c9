#include "saddlepairs/region.hpp"

#include <cmath>
#include <limits>

#include "saddlepairs/arcs.hpp"
#include "saddlepairs/errors.hpp"

namespace saddlepairs {

const char* region_tag_name(RegionTag tag) {
  switch (tag) {
    case RegionTag::Trapezoid: return "trapezoid";
    case RegionTag::Fibered: return "fibered";
    case RegionTag::Main: return "main";
    case RegionTag::InnerShell: return "inner_shell";
    case RegionTag::NearEqual: return "near_equal";
    case RegionTag::OuterShell: return "outer_shell";
    case RegionTag::Swapped: return "swapped";
    case RegionTag::Large: return "large";
    case RegionTag::Annulus: return "annulus";
  }
  return "unknown";
}

namespace {

Region make(RegionTag tag, double t, double area_bound, double r1, double r2) {
  require(area_bound >= 0.0, ErrorCode::NonPositiveParams,
          "region area bound must be nonnegative");
  require(std::isfinite(t), ErrorCode::NonPositiveParams,
          "region log-radius must be finite");
  if (tag == RegionTag::Annulus) {
    require(r1 < r2, ErrorCode::NonPositiveParams,
            "annulus needs r1 < r2");
    require(r1 >= 0.0, ErrorCode::NonPositiveParams,
            "annulus needs r1 >= 0");
  }
  return Region{tag, t, area_bound, r1, r2};
}

// Pairs of the closed shell r1 <= |z| <= r2 with |w^z| <= A, |w| <= |z|.
bool in_annulus_pairs(const Vec2& z, const Vec2& w, double a, double r1,
                      double r2) {
  if (wedge(z, w) > a) return false;
  const double nz = norm2(z), nw = norm2(w);
  return nw <= nz && r1 * r1 <= nz && nz <= r2 * r2;
}

}  // namespace

Region Region::trapezoid() { return make(RegionTag::Trapezoid, 0, 0, 0, 0); }
Region Region::fibered(double a) { return make(RegionTag::Fibered, 0, a, 0, 0); }
Region Region::main_term(double t, double a) {
  return make(RegionTag::Main, t, a, 0, 0);
}
Region Region::inner_shell(double t, double a) {
  return make(RegionTag::InnerShell, t, a, 0, 0);
}
Region Region::near_equal(double t, double a) {
  return make(RegionTag::NearEqual, t, a, 0, 0);
}
Region Region::outer_shell(double t, double a) {
  return make(RegionTag::OuterShell, t, a, 0, 0);
}
Region Region::swapped(double t, double a) {
  return make(RegionTag::Swapped, t, a, 0, 0);
}
Region Region::large(double t, double a) {
  return make(RegionTag::Large, t, a, 0, 0);
}
Region Region::annulus(double r1, double r2, double a) {
  return make(RegionTag::Annulus, 0, a, r1, r2);
}

bool region_contains(const Region& region, const Vec2& z) {
  require(region.tag == RegionTag::Trapezoid, ErrorCode::BadConfig,
          "single-vector membership is defined for the trapezoid only");
  return 0.5 <= z.y && z.y <= 1.0 && std::abs(z.x) <= z.y;
}

bool region_contains(const Region& region, const Vec2& z, const Vec2& w) {
  const double t = region.t;
  const double a = region.area_bound;
  switch (region.tag) {
    case RegionTag::Trapezoid:
      fail(ErrorCode::BadConfig, "trapezoid takes a single vector");
    case RegionTag::Fibered:
      require(z.y != 0.0, ErrorCode::InvalidFiber,
              "fiber region needs Im z != 0");
      return wedge(w, z) <= a && std::abs(w.y) <= std::abs(z.y);
    case RegionTag::Main: {
      const double lo = std::sqrt(std::cosh(2.0 * t) / 2.0);
      return in_annulus_pairs(z, w, a, lo, std::exp(t)) &&
             norm(w) < norm(z) / std::sqrt(1.0 + std::exp(-4.0 * t));
    }
    case RegionTag::InnerShell: {
      const double hi = std::sqrt(std::cosh(2.0 * t) / 2.0);
      return in_annulus_pairs(z, w, a, std::exp(t) / 2.0, hi);
    }
    case RegionTag::NearEqual: {
      const double lo = std::sqrt(std::cosh(2.0 * t) / 2.0);
      return in_annulus_pairs(z, w, a, lo, std::exp(t)) &&
             norm(w) > norm(z) / std::sqrt(1.0 + std::exp(-4.0 * t));
    }
    case RegionTag::OuterShell:
      // |z| > e^t > 0 guarantees z != 0 before the arc evaluation.
      return norm(z) > std::exp(t) && arc_measure(z, w, t, a) > 0.0;
    case RegionTag::Swapped: {
      const double r = norm(z), et = std::exp(t);
      return et / 2.0 <= r && r <= et && norm(w) > r &&
             arc_measure(z, w, t, a) > 0.0;
    }
    case RegionTag::Large: {
      const double r = norm(z), et = std::exp(t);
      const double cap = std::sqrt(2.0 * std::cosh(2.0 * t));
      const double ratio =
          std::sqrt(1.0 + derived_constants(a).ratio_excess *
                              std::exp(-4.0 * t));
      return et / 2.0 <= r && r <= cap && wedge(w, z) <= a &&
             norm(w) <= ratio * r;
    }
    case RegionTag::Annulus:
      return in_annulus_pairs(z, w, a, region.r1, region.r2);
  }
  fail(ErrorCode::InternalInvariant, "unhandled region tag");
}

double support_radius(const Region& region) {
  const double t = region.t;
  const double et = std::exp(t);
  const double mate = mate_norm_factor(t, region.area_bound);
  switch (region.tag) {
    case RegionTag::Trapezoid:
      return std::sqrt(2.0);
    case RegionTag::Fibered:
      return std::numeric_limits<double>::infinity();
    case RegionTag::Main:
    case RegionTag::NearEqual:
      return et;
    case RegionTag::InnerShell:
      return std::sqrt(std::cosh(2.0 * t) / 2.0);
    case RegionTag::OuterShell:
    case RegionTag::Large:
      // |z| <= sqrt(2 cosh 2t) and any positive-arc mate obeys the ratio
      // bound |w| <= mate_norm_factor * |z|.
      return std::sqrt(2.0 * std::cosh(2.0 * t)) * mate;
    case RegionTag::Swapped:
      return et * mate;
    case RegionTag::Annulus:
      return region.r2;
  }
  fail(ErrorCode::InternalInvariant, "unhandled region tag");
}

}  // namespace saddlepairs
