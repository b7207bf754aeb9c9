#include "saddlepairs/siegel_veech.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "saddlepairs/arcs.hpp"
#include "saddlepairs/counting.hpp"
#include "saddlepairs/errors.hpp"
#include "saddlepairs/threads.hpp"

namespace saddlepairs {

namespace {

// Transforms sum over the entries as given (deduped sets give the
// distinct-vector transform).
struct Filtered {
  std::vector<Vec2> v;
  std::vector<double> n2;
};

Filtered filter_by_norm(const HolonomySet& set, double bound) {
  Filtered f;
  const double b2 = bound * bound;
  for (std::size_t i = 0; i < set.vectors.size(); ++i) {
    const double n2 = norm2(set.vectors[i]);
    if (n2 > b2) continue;
    f.v.push_back(set.vectors[i]);
    f.n2.push_back(n2);
  }
  return f;
}

}  // namespace

long long sv_transform(const HolonomySet& set, const Region& region,
                       int threads) {
  const double support = support_radius(region);
  require(std::isfinite(support) && set.radius >= support,
          ErrorCode::SupportNotCovered,
          "enumeration radius does not cover the region's support");
  const Filtered f = filter_by_norm(set, support);
  const std::size_t n = f.v.size();
  if (region.tag == RegionTag::Trapezoid) {
    long long total = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (region_contains(region, f.v[i])) ++total;
    return total;
  }
  std::vector<long long> partial(kPairChunks, 0);
  parallel_chunks(kPairChunks, worker_count(threads), [&](int chunk) {
    const std::size_t lo = n * static_cast<std::size_t>(chunk) / kPairChunks;
    const std::size_t hi =
        n * (static_cast<std::size_t>(chunk) + 1) / kPairChunks;
    long long sum = 0;
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (region_contains(region, f.v[i], f.v[j])) ++sum;
    partial[chunk] = sum;
  });
  long long total = 0;
  for (long long p : partial) total += p;
  return total;
}

double circle_average_transform(const HolonomySet& set, double t,
                                double area_bound, double tol, int threads) {
  require(std::isfinite(t), ErrorCode::NonPositiveParams,
          "flow time must be finite");
  require(tol > 0.0, ErrorCode::NonPositiveTolerance,
          "tolerance must be positive");
  const double mnf = mate_norm_factor(t, area_bound);
  const double zmax = std::sqrt(2.0 * std::cosh(2.0 * t));
  require(set.radius >= zmax * mnf, ErrorCode::EnumerationRadiusTooSmall,
          "enumeration radius does not cover the circle-average support");

  const Filtered f = filter_by_norm(set, zmax * mnf);
  std::vector<std::size_t> order(f.v.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return f.n2[a] < f.n2[b]; });
  Filtered s;
  for (std::size_t i : order) {
    s.v.push_back(f.v[i]);
    s.n2.push_back(f.n2[i]);
  }
  const std::size_t zend = static_cast<std::size_t>(
      std::upper_bound(s.n2.begin(), s.n2.end(), zmax * zmax) - s.n2.begin());
  const double mnf2 = mnf * mnf;

  std::vector<double> partial(kPairChunks, 0.0);
  parallel_chunks(kPairChunks, worker_count(threads), [&](int chunk) {
    const std::size_t lo = zend * static_cast<std::size_t>(chunk) / kPairChunks;
    const std::size_t hi =
        zend * (static_cast<std::size_t>(chunk) + 1) / kPairChunks;
    double sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::size_t jend = static_cast<std::size_t>(
          std::upper_bound(s.n2.begin(), s.n2.end(), s.n2[i] * mnf2) -
          s.n2.begin());
      for (std::size_t j = 0; j < jend; ++j) {
        if (wedge(s.v[i], s.v[j]) > area_bound) continue;
        sum += arc_measure(s.v[i], s.v[j], t, area_bound, tol);
      }
    }
    partial[chunk] = sum;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total / (2.0 * M_PI);
}

double approximation_error(const HolonomySet& set, double t, double area_bound,
                           double tol, int threads) {
  const double average = circle_average_transform(set, t, area_bound, tol,
                                                  threads);
  const double e2t = std::exp(2.0 * t);
  const long long shell =
      count_pairs_annulus(set, std::exp(t), area_bound, threads);
  return std::abs(static_cast<double>(shell) - M_PI * e2t * average) / e2t;
}

}  // namespace saddlepairs
