#include <cmath>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "saddlepairs/arcs.hpp"
#include "saddlepairs/counting.hpp"
#include "saddlepairs/enumerate.hpp"
#include "saddlepairs/errors.hpp"
#include "saddlepairs/region.hpp"
#include "saddlepairs/siegel_veech.hpp"
#include "saddlepairs/surface.hpp"

using namespace saddlepairs;
namespace tu = saddlepairs::testutil;

TEST_SUITE("counting") {

TEST_CASE("headline counts at radius 20") {
  // hand-checked row; the deduped three-square surface carries the same
  // distinct-vector set as the torus, so the counts coincide
  for (const char* name : {"torus", "l3"}) {
    const HolonomySet set = holonomy_set(builtin_origami(name), 20.0);
    const PairCountReport rep = pair_count_report(set, 20.0, 1.0);
    CHECK(rep.vector_count == 768);
    CHECK(rep.pair_count == 4600);
    CHECK(rep.shell_pair_count == 3456);
    CHECK(rep.parallel_pair_count == 768);
    CHECK(rep.pair_ratio == doctest::Approx(11.5));
    CHECK(rep.parallel_ratio == doctest::Approx(1.92));
  }
  // undeduped: every connection counts, so pairs scale by n^2 = 9
  const HolonomySet raw =
      holonomy_set(builtin_origami("l3"), 20.0, false);
  CHECK(count_single(raw, 20.0) == 3 * 768);
  CHECK(count_pairs(raw, 20.0, 1.0) == 9 * 4600);
  CHECK(count_parallel(raw, 20.0) == 9 * 768);
}

TEST_CASE("counting matches brute force loops") {
  struct Setup {
    const char* name;
    double R;
    bool dedupe;
  };
  const Setup setups[] = {{"torus", 10.0, true},  {"torus", 21.0, true},
                          {"l3", 10.0, false},    {"l3", 16.0, true},
                          {"cyl2", 12.0, false},  {"cyl2", 7.3, true}};
  for (const Setup& su : setups) {
    const HolonomySet set =
        holonomy_set(builtin_origami(su.name), su.R, su.dedupe);
    CHECK(count_single(set, su.R) == tu::brute_count_single(set, su.R));
    for (double A : {0.0, 0.5, 1.0, 2.0}) {
      CHECK(count_pairs(set, su.R, A) == tu::brute_count_pairs(set, su.R, A));
      CHECK(count_pairs(set, su.R, A, false) ==
            tu::brute_count_pairs(set, su.R, A, false));
      CHECK(count_pairs_annulus(set, su.R, A) ==
            tu::brute_count_pairs_annulus(set, su.R, A));
    }
    CHECK(count_parallel(set, su.R) == tu::brute_count_parallel(set, su.R));
    CHECK(count_parallel(set, su.R, true) ==
          tu::brute_count_parallel(set, su.R, true));
    // interior radii smaller than the enumeration bound work too
    CHECK(count_pairs(set, su.R / 2.0, 1.0) ==
          tu::brute_count_pairs(set, su.R / 2.0, 1.0));
  }
}

TEST_CASE("float-path counting matches brute force") {
  // polygon tracing produces inexact vectors, exercising the float branches
  const PolygonSurface square = polygon_surface_new(
      {{Vec2::real(0, 0), Vec2::real(1, 0), Vec2::real(1, 1),
        Vec2::real(0, 1)}},
      {{0, 0, 0, 2}, {0, 1, 0, 3}}, "square");
  const HolonomySet set = holonomy_set(square, 9.0);
  REQUIRE(!set.vectors.empty());
  REQUIRE(!set.vectors[0].exact);
  for (double A : {0.0, 1.0}) {
    CHECK(count_pairs(set, 9.0, A) == tu::brute_count_pairs(set, 9.0, A));
    CHECK(count_pairs_annulus(set, 9.0, A) ==
          tu::brute_count_pairs_annulus(set, 9.0, A));
  }
  CHECK(count_parallel(set, 9.0) == tu::brute_count_parallel(set, 9.0));
  CHECK(count_parallel(set, 9.0, true) ==
        tu::brute_count_parallel(set, 9.0, true));
}

TEST_CASE("dyadic shells telescope when no norm sits on a shell boundary") {
  const HolonomySet set = holonomy_set(builtin_origami("torus"), 21.0);
  for (double A : {0.0, 1.0}) {
    // 21/2^k is never the norm of an integer vector (its square is not an
    // integer), so the closed shells tile without overlap
    long long shells = 0;
    for (int k = 0; k < 4; ++k)
      shells += count_pairs_annulus(set, 21.0 / (1 << k), A);
    CHECK(count_pairs(set, 21.0, A) ==
          shells + count_pairs(set, 21.0 / 16.0, A));
  }
}

TEST_CASE("dyadic shells double-count boundary norms") {
  // at R = 20 the shell boundary |z| = 5 is realized ((3,4) and friends);
  // both the [10, 20] shell at R' = 10 and the [5, 10] shell at R' = 5 are
  // closed, so those pairs appear twice in the telescoped sum
  const HolonomySet set = holonomy_set(builtin_origami("torus"), 20.0);
  const double A = 1.0;
  long long boundary_pairs = 0;
  for (const Vec2& z : set.vectors) {
    if (norm2(z) != 25.0) continue;
    for (const Vec2& w : set.vectors)
      if (norm2(w) <= 25.0 && tu::brute_wedge(z, w) <= A) ++boundary_pairs;
  }
  CHECK(boundary_pairs > 0);
  long long shells = 0;
  for (int k = 0; k < 3; ++k)
    shells += count_pairs_annulus(set, 20.0 / (1 << k), A);
  shells += count_pairs(set, 2.5, A);
  CHECK(shells - count_pairs(set, 20.0, A) == boundary_pairs);
}

TEST_CASE("decomposition identity and bucket classification") {
  struct Setup {
    const char* name;
    double t;
  };
  for (const Setup& su : {Setup{"torus", 1.5}, Setup{"l3", 2.0}}) {
    const double t = su.t;
    const double A = 1.0;
    const double e2t = std::exp(2.0 * t);
    const double support =
        std::sqrt(2.0 * std::cosh(2.0 * t)) * mate_norm_factor(t, A);
    const HolonomySet set =
        holonomy_set(builtin_origami(su.name), support + 0.25);
    const ErrorDecomposition dec = error_decomposition(set, t, A);

    CHECK(dec.shell_pairs == count_pairs_annulus(set, std::exp(t), A));
    CHECK(dec.residual <=
          2.0 * 1e-10 * M_PI * e2t *
              static_cast<double>(dec.positive_arc_pairs));
    // each positive arc is at most the full sector
    CHECK(dec.circle_average <=
          std::atan(std::exp(-2.0 * t)) / M_PI *
              static_cast<double>(dec.positive_arc_pairs) + 1e-12);
    CHECK(dec.circle_average ==
          doctest::Approx(circle_average_transform(set, t, A))
              .epsilon(1e-12));

    // independent reclassification through the region predicates
    const Region regions[] = {
        Region::main_term(t, A), Region::inner_shell(t, A),
        Region::near_equal(t, A), Region::outer_shell(t, A),
        Region::swapped(t, A)};
    double sums[5] = {0, 0, 0, 0, 0};
    long long shell = 0, positive = 0;
    double arcs = 0.0;
    for (const Vec2& z : set.vectors) {
      const double nz2 = norm2(z);
      for (const Vec2& w : set.vectors) {
        const double nw2 = norm2(w);
        const bool in_da = e2t / 4.0 <= nz2 && nz2 <= e2t && nw2 <= nz2 &&
                           tu::brute_wedge(z, w) <= A;
        const double arc = arc_measure(z, w, t, A);
        if (!in_da && arc == 0.0) continue;
        if (in_da) ++shell;
        if (arc > 0.0) {
          ++positive;
          arcs += arc;
        }
        int hits = 0, which = -1;
        for (int r = 0; r < 5; ++r) {
          if (region_contains(regions[r], z, w)) {
            ++hits;
            which = r;
          }
        }
        CHECK(hits == 1);
        sums[which] += (in_da ? 1.0 : 0.0) - (e2t / 2.0) * arc;
      }
    }
    CHECK(shell == dec.shell_pairs);
    CHECK(positive == dec.positive_arc_pairs);
    CHECK(dec.circle_average ==
          doctest::Approx(arcs / (2.0 * M_PI)).epsilon(1e-10));
    CHECK(dec.main == doctest::Approx(sums[0]).epsilon(1e-9));
    CHECK(dec.inner_shell == doctest::Approx(sums[1]).epsilon(1e-9));
    CHECK(dec.near_equal == doctest::Approx(sums[2]).epsilon(1e-9));
    CHECK(dec.outer_shell == doctest::Approx(sums[3]).epsilon(1e-9));
    CHECK(dec.swapped == doctest::Approx(sums[4]).epsilon(1e-9));
  }
}

TEST_CASE("radius guards") {
  const HolonomySet set = holonomy_set(builtin_origami("torus"), 10.0);
  CHECK_THROWS_AS(count_pairs(set, 10.5, 1.0), Error);
  try {
    count_pairs(set, 10.5, 1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RadiusExceedsEnumeration);
    CHECK(e.category() == ErrorCategory::radius);
  }
  CHECK(count_single(set, 10.0) == 192);  // boundary radius is fine
  try {
    error_decomposition(set, 2.5, 1.0);  // needs radius ~ 24.4
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EnumerationRadiusTooSmall);
  }
  CHECK_THROWS_AS(pair_count_report(set, 0.0, 1.0), Error);
  CHECK_THROWS_AS(error_decomposition(set, 1.0, 1.0, 0.0), Error);
  CHECK_THROWS_AS(error_decomposition(set, 1.0, -1.0), Error);
}

TEST_CASE("growth fitting") {
  const GrowthFit flat = fit_growth({10, 20, 30}, {100, 400, 900});
  CHECK(flat.ratios == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(flat.mean == doctest::Approx(1.0));
  CHECK(flat.coefficient_of_variation == doctest::Approx(0.0));

  const GrowthFit rising = fit_growth({10, 20, 30}, {100, 800, 2700});
  CHECK(rising.mean == doctest::Approx(2.0));
  CHECK(rising.coefficient_of_variation ==
        doctest::Approx(std::sqrt(2.0 / 3.0) / 2.0).epsilon(1e-12));

  CHECK_THROWS_AS(fit_growth({10, 20}, {1, 2}), Error);
  CHECK_THROWS_AS(fit_growth({10, 20, 30}, {1, 2}), Error);
  CHECK_THROWS_AS(fit_growth({10, 20, 20}, {1, 2, 3}), Error);
  CHECK_THROWS_AS(fit_growth({-1, 20, 30}, {1, 2, 3}), Error);
  try {
    fit_growth({10, 20}, {1, 2});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientRadii);
  }

  const HolonomySet set = holonomy_set(builtin_origami("l3"), 24.0);
  const std::vector<double> radii{6.0, 12.0, 24.0};
  const GrowthFit fit = estimate_pair_growth(set, 1.0, radii);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(fit.ratios[i] ==
          doctest::Approx(
              static_cast<double>(count_pairs(set, radii[i], 1.0)) /
              (radii[i] * radii[i])));
  }
  CHECK_THROWS_AS(estimate_pair_growth(set, 1.0, {6.0, 12.0, 25.0}), Error);
}

}  // TEST_SUITE
