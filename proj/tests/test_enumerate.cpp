#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "saddlepairs/enumerate.hpp"
#include "saddlepairs/errors.hpp"
#include "saddlepairs/surface.hpp"

using namespace saddlepairs;
namespace tu = saddlepairs::testutil;

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> integer_pairs(
    const HolonomySet& set) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (const Vec2& v : set.vectors) {
    REQUIRE(v.exact);
    out.emplace_back(v.ix, v.iy);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PolygonSurface l_shape_polygon() {
  return polygon_surface_new(
      {{Vec2::real(0, 0), Vec2::real(1, 0), Vec2::real(2, 0),
        Vec2::real(2, 1), Vec2::real(1, 1), Vec2::real(1, 2),
        Vec2::real(0, 2), Vec2::real(0, 1)}},
      {{0, 0, 0, 5}, {0, 1, 0, 3}, {0, 2, 0, 7}, {0, 4, 0, 6}}, "l-shape");
}

PolygonSurface square_torus_polygon() {
  return polygon_surface_new(
      {{Vec2::real(0, 0), Vec2::real(1, 0), Vec2::real(1, 1),
        Vec2::real(0, 1)}},
      {{0, 0, 0, 2}, {0, 1, 0, 3}}, "square");
}

// sorted float holonomies with multiplicities, for origami/polygon matching
std::vector<std::array<double, 3>> sorted_holonomies(const HolonomySet& set) {
  std::vector<std::array<double, 3>> out;
  for (std::size_t i = 0; i < set.vectors.size(); ++i)
    out.push_back({set.vectors[i].x, set.vectors[i].y,
                   static_cast<double>(set.multiplicities[i])});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("enumerate") {

TEST_CASE("torus holonomies are exactly the primitive vectors") {
  for (double R : {3.0, 10.0, 30.0}) {
    const HolonomySet set = holonomy_set(builtin_origami("torus"), R);
    CHECK(set.radius == R);
    CHECK(set.deduped);
    CHECK(integer_pairs(set) == tu::primitive_vectors(R));
    for (long long m : set.multiplicities) CHECK(m == 1);
  }
}

TEST_CASE("origami holonomies: primitive directions with multiplicity n") {
  const Origami surfaces[] = {
      builtin_origami("l3"), builtin_origami("cyl2"),
      origami_new(4, {1, 2, 3, 0}, {1, 0, 2, 3}, "asym")};
  const double R = 7.5;
  for (const Origami& s : surfaces) {
    const HolonomySet set = holonomy_set(s, R);
    CHECK(integer_pairs(set) == tu::primitive_vectors(R));
    for (long long m : set.multiplicities) CHECK(m == s.n);

    const HolonomySet raw = holonomy_set(s, R, false);
    CHECK_FALSE(raw.deduped);
    CHECK(raw.vectors.size() ==
          s.n * tu::primitive_vectors(R).size());
    const HolonomySet re = dedupe_holonomies(raw);
    CHECK(integer_pairs(re) == integer_pairs(set));
    CHECK(re.multiplicities == set.multiplicities);
  }
}

TEST_CASE("connection lists carry consistent combinatorial data") {
  const Origami l3 = builtin_origami("l3");
  const Enumeration e = saddle_connections(l3, 6.0);
  CHECK(e.warnings.empty());

  std::map<std::pair<std::int64_t, std::int64_t>, int> per_direction;
  for (const SaddleConnection& sc : e.connections) {
    REQUIRE(sc.holonomy.exact);
    const std::int64_t p = sc.holonomy.ix, q = sc.holonomy.iy;
    CHECK(std::gcd(std::llabs(p), std::llabs(q)) == 1);
    ++per_direction[{p, q}];

    CHECK(sc.start_cone_point == 0);  // l3 has a single cone point
    CHECK(sc.end_cone_point == 0);
    REQUIRE(sc.fingerprint.size() == 2u * l3.n);

    // signed crossing counts sum to the displacement minus the last step
    long long left = 0, bottom = 0, abs_total = 0;
    for (int i = 0; i < l3.n; ++i) left += sc.fingerprint[i];
    for (int i = l3.n; i < 2 * l3.n; ++i) bottom += sc.fingerprint[i];
    for (int f : sc.fingerprint) abs_total += std::llabs(f);
    CHECK(left == (p > 0 ? p - 1 : (p < 0 ? p + 1 : 0)));
    CHECK(bottom == (q > 0 ? q - 1 : (q < 0 ? q + 1 : 0)));
    CHECK(abs_total == static_cast<long long>(sc.crossings.size()));
  }

  // exactly n connections in every primitive direction within range
  for (const auto& [dir, count] : per_direction) CHECK(count == l3.n);
  CHECK(per_direction.size() == tu::primitive_vectors(6.0).size());

  // every connection appears with its reversal
  auto key = [](const SaddleConnection& sc) {
    return std::make_tuple(sc.holonomy.ix, sc.holonomy.iy,
                           sc.start_cone_point, sc.end_cone_point,
                           sc.fingerprint);
  };
  std::map<decltype(key(e.connections[0])), int> index;
  for (const SaddleConnection& sc : e.connections) ++index[key(sc)];
  for (const SaddleConnection& sc : e.connections) {
    SaddleConnection rev;
    rev.holonomy = negate(sc.holonomy);
    rev.start_cone_point = sc.end_cone_point;
    rev.end_cone_point = sc.start_cone_point;
    for (int f : sc.fingerprint) rev.fingerprint.push_back(-f);
    CHECK(index.count(key(rev)) == 1);
  }

  // deterministic and sorted output
  const Enumeration again = saddle_connections(l3, 6.0);
  REQUIRE(again.connections.size() == e.connections.size());
  for (std::size_t i = 0; i < e.connections.size(); ++i) {
    CHECK(key(again.connections[i]) == key(e.connections[i]));
    // ties are possible: parallel copies in different squares can share
    // endpoints and have empty fingerprints
    if (i > 0)
      CHECK_FALSE(key(e.connections[i]) < key(e.connections[i - 1]));
  }
}

TEST_CASE("polygon tracing agrees with the exact origami tracer") {
  const HolonomySet torus_poly = holonomy_set(square_torus_polygon(), 10.0);
  const HolonomySet torus_orig =
      holonomy_set(builtin_origami("torus"), 10.0);
  const auto tp = sorted_holonomies(torus_poly);
  const auto to = sorted_holonomies(torus_orig);
  REQUIRE(tp.size() == to.size());
  for (std::size_t i = 0; i < tp.size(); ++i) {
    CHECK(tp[i][0] == doctest::Approx(to[i][0]).epsilon(1e-9));
    CHECK(tp[i][1] == doctest::Approx(to[i][1]).epsilon(1e-9));
    CHECK(tp[i][2] == to[i][2]);
  }

  const HolonomySet l_poly = holonomy_set(l_shape_polygon(), 8.0);
  const HolonomySet l_orig = holonomy_set(builtin_origami("l3"), 8.0);
  const auto lp = sorted_holonomies(l_poly);
  const auto lo = sorted_holonomies(l_orig);
  REQUIRE(lp.size() == lo.size());
  for (std::size_t i = 0; i < lp.size(); ++i) {
    CHECK(lp[i][0] == doctest::Approx(lo[i][0]).epsilon(1e-9));
    CHECK(lp[i][1] == doctest::Approx(lo[i][1]).epsilon(1e-9));
    CHECK(lp[i][2] == lo[i][2]);
  }

  // exact lattice data in the polygons: no near-miss warnings
  CHECK(saddle_connections(l_shape_polygon(), 8.0).warnings.empty());
}

TEST_CASE("near-vertex passes on perturbed data produce warnings") {
  const double d = 1e-10;
  const PolygonSurface wobbly = polygon_surface_new(
      {{Vec2::real(0, 0), Vec2::real(1, 0), Vec2::real(1, 1),
        Vec2::real(d, 1)}},
      {{0, 0, 0, 2}, {0, 1, 0, 3}}, "wobbly");
  const Enumeration e = saddle_connections(wobbly, 3.0);
  CHECK(!e.warnings.empty());
  CHECK(!e.connections.empty());
}

TEST_CASE("systole and second systole") {
  CHECK(systole(builtin_origami("torus")) == 1.0);
  CHECK(second_systole(builtin_origami("torus")) == 1.0);
  CHECK(systole(builtin_origami("l3")) == 1.0);
  CHECK(second_systole(builtin_origami("l3")) == 1.0);
  CHECK(systole(builtin_origami("cyl2")) == 1.0);
  CHECK(second_systole(builtin_origami("cyl2")) == 1.0);
  CHECK(systole(l_shape_polygon()) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(second_systole(square_torus_polygon()) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("holonomies transform equivariantly under the group action") {
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;  // operator norm of T^-1
  const Origami l3 = builtin_origami("l3");
  const HolonomySet before = holonomy_set(l3, 8.0 / phi);
  const HolonomySet after = holonomy_set(apply_gen(Gen::T, l3), 8.0);
  const auto target = integer_pairs(after);
  for (const Vec2& v : before.vectors) {
    const Vec2 image = mat_apply(gen_matrix(Gen::T), v);
    CHECK(std::binary_search(target.begin(), target.end(),
                             std::make_pair(image.ix, image.iy)));
  }
}

TEST_CASE("radius validation") {
  CHECK_THROWS_AS(saddle_connections(builtin_origami("torus"), 0.0), Error);
  CHECK_THROWS_AS(holonomy_set(builtin_origami("torus"), -2.0), Error);
  CHECK_THROWS_AS(saddle_connections(square_torus_polygon(), 0.0), Error);
  try {
    holonomy_set(builtin_origami("torus"), -2.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RadiusNonPositive);
  }
}

}  // TEST_SUITE
