#include <cmath>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "saddlepairs/counting.hpp"
#include "saddlepairs/enumerate.hpp"
#include "saddlepairs/errors.hpp"
#include "saddlepairs/region.hpp"
#include "saddlepairs/siegel_veech.hpp"
#include "saddlepairs/surface.hpp"

using namespace saddlepairs;
namespace tu = saddlepairs::testutil;

TEST_SUITE("siegelveech") {

TEST_CASE("trapezoid transform counts window vectors") {
  const HolonomySet set = holonomy_set(builtin_origami("torus"), 2.0);
  // (0,1), (1,1), (-1,1) are the integer vectors in the window
  CHECK(sv_transform(set, Region::trapezoid()) == 3);
  // the three-square surface sees each of them with multiplicity three in
  // the raw list and once after deduplication
  CHECK(sv_transform(holonomy_set(builtin_origami("l3"), 2.0),
                     Region::trapezoid()) == 3);
  CHECK(sv_transform(holonomy_set(builtin_origami("l3"), 2.0, false),
                     Region::trapezoid()) == 9);
}

TEST_CASE("pair-region transforms agree with the counting module") {
  const HolonomySet set = holonomy_set(builtin_origami("torus"), 10.0);
  for (double A : {0.0, 1.0, 2.0}) {
    CHECK(sv_transform(set, Region::annulus(5.0, 10.0, A)) ==
          count_pairs_annulus(set, 10.0, A));
    CHECK(sv_transform(set, Region::annulus(0.0, 10.0, A)) ==
          count_pairs(set, 10.0, A));
    CHECK(sv_transform(set, Region::annulus(3.0, 7.0, A)) ==
          [&] {
            long long total = 0;
            for (const Vec2& z : set.vectors) {
              const double nz = norm(z);
              if (nz < 3.0 || nz > 7.0) continue;
              for (const Vec2& w : set.vectors)
                if (norm2(w) <= norm2(z) && tu::brute_wedge(z, w) <= A)
                  ++total;
            }
            return total;
          }());
  }
}

TEST_CASE("transforms demand enumeration coverage") {
  const HolonomySet set = holonomy_set(builtin_origami("torus"), 10.0);
  CHECK_THROWS_AS(sv_transform(set, Region::fibered(1.0)), Error);
  try {
    sv_transform(set, Region::fibered(1.0));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SupportNotCovered);
    CHECK(e.category() == ErrorCategory::radius);
  }
  CHECK_THROWS_AS(sv_transform(set, Region::annulus(0.0, 10.5, 1.0)), Error);
  CHECK_NOTHROW(sv_transform(set, Region::annulus(0.0, 10.0, 1.0)));
  // the decomposition window at t = 2.5 needs radius about 12.2
  CHECK_THROWS_AS(circle_average_transform(set, 2.5, 1.0), Error);
  CHECK_NOTHROW(circle_average_transform(set, 2.2, 1.0));
}

TEST_CASE("circle average matches a rotation Monte Carlo") {
  const double t = 1.2, A = 1.0;
  const double support =
      std::sqrt(2.0 * std::cosh(2.0 * t)) * mate_norm_factor(t, A);
  const HolonomySet set =
      holonomy_set(builtin_origami("torus"), support + 0.5);
  const double exact = circle_average_transform(set, t, A);

  Rng rng(321);
  const Mat2 gt = geodesic_flow(t);
  const long long samples = 40000;
  double sum = 0.0, sumsq = 0.0;
  for (long long k = 0; k < samples; ++k) {
    const double theta = 2.0 * M_PI * rng.uniform();
    const Mat2 rt = rotation(theta);
    std::vector<Vec2> turned;
    std::vector<bool> windowed;
    for (const Vec2& v : set.vectors) {
      turned.push_back(apply(gt, apply(rt, v)));
      windowed.push_back(tu::in_trapezoid(turned.back()));
    }
    long long pairs = 0;
    for (std::size_t i = 0; i < turned.size(); ++i) {
      if (!windowed[i]) continue;
      for (std::size_t j = 0; j < turned.size(); ++j) {
        if (std::abs(turned[j].y) > std::abs(turned[i].y)) continue;
        if (tu::brute_wedge(set.vectors[i], set.vectors[j]) > A) continue;
        ++pairs;
      }
    }
    sum += static_cast<double>(pairs);
    sumsq += static_cast<double>(pairs) * static_cast<double>(pairs);
  }
  const double mean = sum / static_cast<double>(samples);
  const double var =
      std::max(sumsq / static_cast<double>(samples) - mean * mean, 0.0);
  const double se = std::sqrt(var / static_cast<double>(samples));
  CHECK(std::abs(exact - mean) <= 3.0 * se + 1e-3);
}

TEST_CASE("approximation error is the normalized decomposition gap") {
  const double t = 2.0, A = 1.0;
  const HolonomySet set = holonomy_set(builtin_origami("l3"), 13.0);
  const double err = approximation_error(set, t, A);
  const double e2t = std::exp(2.0 * t);
  const double direct =
      std::abs(static_cast<double>(count_pairs_annulus(set, std::exp(t), A)) -
               M_PI * e2t * circle_average_transform(set, t, A)) /
      e2t;
  CHECK(err == doctest::Approx(direct).epsilon(1e-12));

  const ErrorDecomposition dec = error_decomposition(set, t, A);
  const double buckets = dec.main + dec.inner_shell + dec.near_equal +
                         dec.outer_shell + dec.swapped;
  CHECK(err == doctest::Approx(std::abs(buckets) / e2t)
                   .epsilon(1e-6));
}

TEST_CASE("frozen normalized errors on the three-square surface") {
  // desk-scale anchors for the renormalization trend
  const double A = 1.0;
  for (const auto& [t, expected] :
       {std::pair<double, double>{2.0, 8.845885378447635e-4},
        std::pair<double, double>{2.5, 1.2725189900783166e-4}}) {
    const double support =
        std::sqrt(2.0 * std::cosh(2.0 * t)) * mate_norm_factor(t, A);
    const HolonomySet set =
        holonomy_set(builtin_origami("l3"), support + 1.0);
    CHECK(approximation_error(set, t, A) ==
          doctest::Approx(expected).epsilon(1e-9));
  }
}

}  // TEST_SUITE
