#include "saddlepairs/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <utility>

#include "saddlepairs/arcs.hpp"
#include "saddlepairs/errors.hpp"
#include "saddlepairs/threads.hpp"

namespace saddlepairs {

namespace {

// Vectors of norm <= R sorted by (squared norm, x, y). Counts are over the
// entries as given: a deduped set yields distinct-vector counts, a raw set
// counts every connection separately. Equal vectors end up adjacent, which
// the exclusion passes rely on.
struct SortedView {
  std::vector<Vec2> v;
  std::vector<double> n2;
  bool all_exact = true;

  std::size_t size() const { return v.size(); }

  // index one past the last entry with squared norm <= bound
  std::size_t upper(double bound) const {
    return static_cast<std::size_t>(
        std::upper_bound(n2.begin(), n2.end(), bound) - n2.begin());
  }
};

SortedView sorted_view(const HolonomySet& set, double R) {
  require(R <= set.radius, ErrorCode::RadiusExceedsEnumeration,
          "count radius exceeds the enumerated radius");
  const double R2 = R * R;
  std::vector<std::size_t> idx;
  idx.reserve(set.vectors.size());
  for (std::size_t i = 0; i < set.vectors.size(); ++i)
    if (norm2(set.vectors[i]) <= R2) idx.push_back(i);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double na = norm2(set.vectors[a]), nb = norm2(set.vectors[b]);
    if (na != nb) return na < nb;
    const Vec2& u = set.vectors[a];
    const Vec2& w = set.vectors[b];
    return u.x != w.x ? u.x < w.x : u.y < w.y;
  });
  SortedView view;
  view.v.reserve(idx.size());
  view.n2.reserve(idx.size());
  for (std::size_t i : idx) {
    view.v.push_back(set.vectors[i]);
    view.n2.push_back(norm2(set.vectors[i]));
    view.all_exact = view.all_exact && set.vectors[i].exact;
  }
  return view;
}

long long pair_loop(const SortedView& s, double area_bound, bool include_equal,
                    double shell_lo2, int threads) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  std::vector<long long> partial(kPairChunks, 0);
  const int workers = worker_count(threads);
  parallel_chunks(kPairChunks, workers, [&](int chunk) {
    const std::size_t lo = n * static_cast<std::size_t>(chunk) / kPairChunks;
    const std::size_t hi =
        n * (static_cast<std::size_t>(chunk) + 1) / kPairChunks;
    long long sum = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      if (s.n2[i] < shell_lo2) continue;
      const std::size_t jend = s.upper(s.n2[i]);
      const Vec2& z = s.v[i];
      if (s.all_exact) {
        const std::int64_t zx = z.ix, zy = z.iy;
        for (std::size_t j = 0; j < jend; ++j) {
          const Vec2& w = s.v[j];
          const std::int64_t cr = zx * w.iy - zy * w.ix;
          if (static_cast<double>(std::llabs(cr)) > area_bound) continue;
          if (!include_equal && w.ix == zx && w.iy == zy) continue;
          ++sum;
        }
      } else {
        for (std::size_t j = 0; j < jend; ++j) {
          const Vec2& w = s.v[j];
          if (wedge(z, w) > area_bound) continue;
          if (!include_equal && w == z) continue;
          ++sum;
        }
      }
    }
    partial[chunk] = sum;
  });
  long long total = 0;
  for (long long p : partial) total += p;
  return total;
}

}  // namespace

long long count_single(const HolonomySet& set, double R) {
  return static_cast<long long>(sorted_view(set, R).size());
}

long long count_pairs(const HolonomySet& set, double R, double area_bound,
                      bool include_equal, int threads) {
  require(area_bound >= 0.0, ErrorCode::NonPositiveParams,
          "area bound must be nonnegative");
  return pair_loop(sorted_view(set, R), area_bound, include_equal,
                   -1.0, threads);
}

long long count_pairs_annulus(const HolonomySet& set, double R,
                              double area_bound, int threads) {
  require(area_bound >= 0.0, ErrorCode::NonPositiveParams,
          "area bound must be nonnegative");
  return pair_loop(sorted_view(set, R), area_bound, /*include_equal=*/true,
                   (R / 2.0) * (R / 2.0), threads);
}

long long count_parallel(const HolonomySet& set, double R,
                         bool include_equal) {
  const SortedView s = sorted_view(set, R);
  const std::size_t n = s.size();
  if (n == 0) return 0;

  // number of entries equal to v[j] (equal vectors are adjacent in the view)
  std::vector<long long> equal_count(n, 0);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && s.v[j] == s.v[i]) ++j;
    for (std::size_t k = i; k < j; ++k)
      equal_count[k] = static_cast<long long>(j - i);
    i = j;
  }

  long long total = 0;
  if (s.all_exact) {
    // group by the line through the origin: primitive direction, sign fixed
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>>
        classes;
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t px = s.v[i].ix, py = s.v[i].iy;
      const std::int64_t g = std::gcd(std::llabs(px), std::llabs(py));
      px /= g;
      py /= g;
      if (px < 0 || (px == 0 && py < 0)) {
        px = -px;
        py = -py;
      }
      classes[{px, py}].push_back(i);  // indices stay norm-sorted
    }
    for (const auto& [key, members] : classes) {
      (void)key;
      // entries of the class with norm <= each member's, ties included
      long long running = 0;
      std::size_t a = 0;
      std::vector<long long> through(members.size(), 0);
      while (a < members.size()) {
        std::size_t b = a;
        while (b < members.size() && s.n2[members[b]] == s.n2[members[a]]) ++b;
        running += static_cast<long long>(b - a);
        for (std::size_t k = a; k < b; ++k) through[k] = running;
        a = b;
      }
      for (std::size_t k = 0; k < members.size(); ++k) {
        const std::size_t j = members[k];
        total += through[k] - (include_equal ? 0 : equal_count[j]);
      }
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i <= j; ++i) {
        if (s.n2[i] > s.n2[j]) break;  // sorted: nothing longer follows
        if (!is_parallel(s.v[i], s.v[j])) continue;
        if (!include_equal && s.v[i] == s.v[j]) continue;
        ++total;
        if (i != j && s.n2[i] == s.n2[j])
          ++total;  // the reversed order also satisfies the norm condition
      }
    }
  }
  return total;
}

ErrorDecomposition error_decomposition(const HolonomySet& set, double t,
                                       double area_bound, double tol,
                                       int threads) {
  require(std::isfinite(t), ErrorCode::NonPositiveParams,
          "flow time must be finite");
  require(tol > 0.0, ErrorCode::NonPositiveTolerance,
          "tolerance must be positive");
  const double mnf = mate_norm_factor(t, area_bound);  // validates area_bound
  const double cosh2t = std::cosh(2.0 * t);
  const double support = std::sqrt(2.0 * cosh2t) * mnf;
  require(set.radius >= support, ErrorCode::EnumerationRadiusTooSmall,
          "enumeration radius does not cover the decomposition support");

  const SortedView s = sorted_view(set, std::min(support, set.radius));
  const std::size_t zend = s.upper(2.0 * cosh2t);  // z candidates

  const double e2t = std::exp(2.0 * t);
  const double shell_lo2 = e2t / 4.0;
  const double split2 = cosh2t / 2.0;           // main/near vs inner shell
  const double ratio2 = 1.0 + std::exp(-4.0 * t);  // near-equal norm ratio
  const double mnf2 = mnf * mnf;

  struct Partial {
    double main = 0, inner = 0, near = 0, outer = 0, swapped = 0;
    double arcs = 0;
    long long shell = 0, positive = 0;
  };
  std::vector<Partial> partial(kPairChunks);
  const int workers = worker_count(threads);
  parallel_chunks(kPairChunks, workers, [&](int chunk) {
    const std::size_t lo = zend * static_cast<std::size_t>(chunk) / kPairChunks;
    const std::size_t hi =
        zend * (static_cast<std::size_t>(chunk) + 1) / kPairChunks;
    Partial p;
    for (std::size_t i = lo; i < hi; ++i) {
      const Vec2& z = s.v[i];
      const double nz2 = s.n2[i];
      const std::size_t jend = s.upper(nz2 * mnf2);
      for (std::size_t j = 0; j < jend; ++j) {
        const Vec2& w = s.v[j];
        if (wedge(z, w) > area_bound) continue;
        const double nw2 = s.n2[j];
        const bool in_da =
            nz2 >= shell_lo2 && nz2 <= e2t && nw2 <= nz2;
        const double arc = arc_measure(z, w, t, area_bound, tol);
        if (!in_da && arc == 0.0) continue;
        const double term = (in_da ? 1.0 : 0.0) - (e2t / 2.0) * arc;
        if (in_da && nz2 >= split2) {
          if (nw2 < nz2 / ratio2)
            p.main += term;
          else
            p.near += term;
        } else if (in_da) {
          p.inner += term;
        } else if (nz2 > e2t) {
          p.outer += term;
        } else {
          p.swapped += term;
        }
        if (in_da) ++p.shell;
        if (arc > 0.0) {
          p.arcs += arc;
          ++p.positive;
        }
      }
    }
    partial[chunk] = p;
  });

  ErrorDecomposition out;
  out.t = t;
  out.area_bound = area_bound;
  for (const Partial& p : partial) {
    out.main += p.main;
    out.inner_shell += p.inner;
    out.near_equal += p.near;
    out.outer_shell += p.outer;
    out.swapped += p.swapped;
    out.circle_average += p.arcs;
    out.shell_pairs += p.shell;
    out.positive_arc_pairs += p.positive;
  }
  out.circle_average /= 2.0 * M_PI;
  const double identity = static_cast<double>(out.shell_pairs) -
                          M_PI * e2t * out.circle_average;
  const double regions = out.main + out.inner_shell + out.near_equal +
                         out.outer_shell + out.swapped;
  out.residual = std::abs(identity - regions);
  return out;
}

GrowthFit fit_growth(const std::vector<double>& radii,
                     const std::vector<double>& counts) {
  require(radii.size() >= 3, ErrorCode::InsufficientRadii,
          "growth fit needs at least three radii");
  require(radii.size() == counts.size(), ErrorCode::InsufficientRadii,
          "growth fit needs one count per radius");
  GrowthFit fit;
  fit.radii = radii;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(radii[i] > 0.0 && (i == 0 || radii[i] > radii[i - 1]),
            ErrorCode::InsufficientRadii,
            "growth radii must be positive and strictly increasing");
    fit.ratios.push_back(counts[i] / (radii[i] * radii[i]));
  }
  double mean = 0.0;
  for (double r : fit.ratios) mean += r;
  mean /= static_cast<double>(fit.ratios.size());
  double var = 0.0;
  for (double r : fit.ratios) var += (r - mean) * (r - mean);
  var /= static_cast<double>(fit.ratios.size());
  fit.mean = mean;
  fit.coefficient_of_variation = mean != 0.0 ? std::sqrt(var) / mean : 0.0;
  return fit;
}

GrowthFit estimate_pair_growth(const HolonomySet& set, double area_bound,
                               const std::vector<double>& radii,
                               int threads) {
  require(radii.size() >= 3, ErrorCode::InsufficientRadii,
          "pair growth needs at least three radii");
  std::vector<double> counts;
  for (double R : radii)
    counts.push_back(static_cast<double>(
        count_pairs(set, R, area_bound, /*include_equal=*/true, threads)));
  return fit_growth(radii, counts);
}

PairCountReport pair_count_report(const HolonomySet& set, double R,
                                  double area_bound, int threads) {
  require(R > 0.0, ErrorCode::RadiusNonPositive,
          "report radius must be positive");
  PairCountReport rep;
  rep.radius = R;
  rep.area_bound = area_bound;
  rep.vector_count = count_single(set, R);
  rep.pair_count = count_pairs(set, R, area_bound, true, threads);
  rep.shell_pair_count = count_pairs_annulus(set, R, area_bound, threads);
  rep.parallel_pair_count = count_parallel(set, R, false);
  rep.pair_ratio = static_cast<double>(rep.pair_count) / (R * R);
  rep.parallel_ratio = static_cast<double>(rep.parallel_pair_count) / (R * R);
  return rep;
}

}  // namespace saddlepairs
