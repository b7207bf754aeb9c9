#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include <doctest.h>

#include "saddlepairs/errors.hpp"
#include "saddlepairs/poisson.hpp"

using namespace saddlepairs;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalInvariant;
}

}  // namespace

TEST_SUITE("poisson") {

TEST_CASE("generator streams are deterministic and distinct") {
  Rng a(42), b(42);
  for (int i = 0; i < 64; ++i) CHECK(a.next() == b.next());
  Rng c(42, 1);
  bool differs = false;
  Rng a2(42);
  for (int i = 0; i < 8; ++i) differs = differs || (a2.next() != c.next());
  CHECK(differs);

  Rng u(7);
  for (int i = 0; i < 10000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    const double y = u.uniform_pos();
    CHECK(y > 0.0);
    CHECK(y <= 1.0);
  }
}

TEST_CASE("poisson deviates have the right moments") {
  // both branches: product inversion below 10, transformed rejection above
  for (const double mu : {0.5, 3.0, 25.0, 80.0}) {
    Rng rng(1000 + static_cast<std::uint64_t>(mu));
    const int n = 40000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
      const long long k = poisson_deviate(rng, mu);
      CHECK(k >= 0);
      sum += static_cast<double>(k);
      sumsq += static_cast<double>(k) * static_cast<double>(k);
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    // 5 sigma bands around the Poisson moments
    CHECK(std::abs(mean - mu) <= 5.0 * std::sqrt(mu / n));
    CHECK(std::abs(var - mu) <=
          5.0 * std::sqrt((mu + 3.0 * mu * mu) / n) + 0.05 * mu);
  }
  Rng rng(1);
  CHECK(poisson_deviate(rng, 0.0) == 0);
}

TEST_CASE("disk samples are reproducible and uniform") {
  const PoissonSample s1 = sample(1.0, 5.0, 99);
  const PoissonSample s2 = sample(1.0, 5.0, 99);
  REQUIRE(s1.points.size() == s2.points.size());
  for (std::size_t i = 0; i < s1.points.size(); ++i) {
    CHECK(s1.points[i].x == s2.points[i].x);
    CHECK(s1.points[i].y == s2.points[i].y);
  }
  CHECK(!sample(1.0, 5.0, 100).points.empty());

  // counts follow the area law and points stay in the window
  double total = 0.0;
  long long quadrant = 0;
  const int seeds = 400;
  for (int seed = 0; seed < seeds; ++seed) {
    const PoissonSample s = sample(2.0, 3.0, 7000 + seed);
    total += static_cast<double>(s.points.size());
    for (const Vec2& p : s.points) {
      CHECK(norm(p) <= 3.0);
      if (p.x > 0 && p.y > 0) ++quadrant;
    }
  }
  const double mu = 2.0 * M_PI * 9.0;
  CHECK(std::abs(total / seeds - mu) <= 5.0 * std::sqrt(mu / seeds));
  // quadrant occupancy is a quarter of the mass
  CHECK(std::abs(static_cast<double>(quadrant) / total - 0.25) < 0.02);

  CHECK(code_of([] { sample(0.0, 1.0, 1); }) == ErrorCode::NonPositiveParams);
  CHECK(code_of([] { sample(1.0, -1.0, 1); }) ==
        ErrorCode::NonPositiveParams);
}

TEST_CASE("cell count law") {
  const std::vector<CellBox> cells{{1.0, 1.0, 2.0, 2.0},
                                   {-2.0, -1.0, -1.0, 1.0},
                                   {0.0, -2.0, 1.0, -1.0}};
  const CellCountResult res = cell_count_test(1.0, cells, 4000, 2718);
  CHECK(res.trials == 4000);
  CHECK(res.window_radius == doctest::Approx(std::hypot(2.0, 2.0)));
  REQUIRE(res.p_value.size() == 3);
  REQUIRE(res.cell_area.size() == 3);
  CHECK(res.cell_area[0] == doctest::Approx(1.0));
  CHECK(res.cell_area[1] == doctest::Approx(2.0));
  for (int c = 0; c < 3; ++c) {
    CHECK(res.degrees[c] > 0);
    CHECK(res.statistic[c] >= 0.0);
    CHECK(res.p_value[c] > 0.01);  // the law holds at this seed
    CHECK(res.correlation[c][c] == doctest::Approx(1.0));
    for (int d = 0; d < 3; ++d) {
      if (c != d) CHECK(std::abs(res.correlation[c][d]) < 0.06);
      CHECK(res.correlation[c][d] ==
            doctest::Approx(res.correlation[d][c]));
    }
  }

  // half-open boxes: sharing a face is not an overlap
  CHECK_NOTHROW(cell_count_test(
      1.0, {{0, 0, 1, 1}, {1.0, 0.0, 2.0, 1.0}}, 50, 3));
  CHECK(code_of([] {
          cell_count_test(1.0, {{0, 0, 2, 2}, {1, 1, 3, 3}}, 50, 3);
        }) == ErrorCode::OverlappingCells);
  CHECK(code_of([] { cell_count_test(-1.0, {{0, 0, 1, 1}}, 50, 3); }) ==
        ErrorCode::NonPositiveParams);
}

TEST_CASE("pair volume Monte Carlo") {
  const double v1 = disk_pair_volume_mc(0.5, 4.0, 11, 2000000);
  CHECK(v1 == disk_pair_volume_mc(0.5, 4.0, 11, 2000000));
  // thin-band regime: the volume is close to 4 pi A R^2 and nearly linear
  // in the area bound
  CHECK(std::abs(v1 - 4.0 * M_PI * 0.5 * 16.0) < 0.15 * v1);
  const double v2 = disk_pair_volume_mc(1.0, 4.0, 11, 2000000);
  CHECK(std::abs(v2 - 2.0 * v1) < 0.15 * v2);
}

TEST_CASE("poisson pair growth tracks the geometric prediction") {
  const std::vector<double> radii{4.0, 6.0, 8.0};
  const PoissonPairGrowth g =
      poisson_pair_growth(1.0, 1.0, radii, 300, 1234);
  REQUIRE(g.ratio.size() == radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(g.predicted[i] > 0.0);
    CHECK(std::abs(g.ratio[i] - 1.0) < 0.15);
  }
  CHECK(code_of([&] { poisson_pair_growth(0.0, 1.0, radii, 10, 1); }) ==
        ErrorCode::NonPositiveParams);
  CHECK_THROWS_AS(poisson_pair_growth(1.0, 1.0, {1.0, 2.0}, 10, 1), Error);
}

}  // TEST_SUITE
