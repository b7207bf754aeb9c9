#pragma once

#include <cstdint>
#include <vector>

#include "saddlepairs/enumerate.hpp"
#include "saddlepairs/planar.hpp"

namespace saddlepairs {

// Counts range over the stored entries: each entry contributes once to
// single counts and each ordered pair of entries once to pair counts. A
// deduped set therefore gives distinct-vector counts (the counting functions
// of the holonomy set proper); a raw set counts individual connections.

// #{v : |v| <= R}.  Requires R <= set.radius.
long long count_single(const HolonomySet& set, double R);

// Ordered pairs (z, w) with |z ^ w| <= area_bound and |w| <= |z| <= R.
// include_equal keeps pairs whose vectors coincide (the diagonal), matching
// the counted set; pass false to drop them.
long long count_pairs(const HolonomySet& set, double R, double area_bound,
                      bool include_equal = true, int threads = 0);

// As count_pairs with z restricted to the closed shell R/2 <= |z| <= R.
long long count_pairs_annulus(const HolonomySet& set, double R,
                              double area_bound, int threads = 0);

// Ordered pairs (z, w) of parallel vectors with |z| <= |w| <= R (note the
// reversed norm order).  Parallelism is an exact zero cross product.
long long count_parallel(const HolonomySet& set, double R,
                         bool include_equal = false);

// Decomposition of the renormalized circle-average approximation at time t:
//   shell_pairs - pi e^{2t} * circle_average = main + inner_shell
//                 + near_equal + outer_shell + swapped   (up to rounding)
// Each ordered pair lands in exactly one bucket; the residual reports how
// far the accumulated identity is from exact.
struct ErrorDecomposition {
  double t = 0.0;
  double area_bound = 0.0;
  double main = 0.0;
  double inner_shell = 0.0;
  double near_equal = 0.0;
  double outer_shell = 0.0;
  double swapped = 0.0;
  long long shell_pairs = 0;       // pairs with z in the closed dyadic shell
  double circle_average = 0.0;     // sum of pair arc measures / 2 pi
  long long positive_arc_pairs = 0;
  double residual = 0.0;
};

ErrorDecomposition error_decomposition(const HolonomySet& set, double t,
                                       double area_bound, double tol = 1e-10,
                                       int threads = 0);

// Pair-count growth ratios count / R^2 over a ladder of radii.
struct GrowthFit {
  std::vector<double> radii;
  std::vector<double> ratios;
  double mean = 0.0;
  double coefficient_of_variation = 0.0;
};

GrowthFit fit_growth(const std::vector<double>& radii,
                     const std::vector<double>& counts);

// Ratios count_pairs(R, area_bound) / R^2; needs >= 3 strictly increasing
// radii, all within the enumerated radius.
GrowthFit estimate_pair_growth(const HolonomySet& set, double area_bound,
                               const std::vector<double>& radii,
                               int threads = 0);

// One row of headline counts at a single radius.
struct PairCountReport {
  double radius = 0.0;
  double area_bound = 0.0;
  long long vector_count = 0;
  long long pair_count = 0;
  long long shell_pair_count = 0;
  long long parallel_pair_count = 0;
  double pair_ratio = 0.0;      // pair_count / R^2
  double parallel_ratio = 0.0;  // parallel_pair_count / R^2
};

PairCountReport pair_count_report(const HolonomySet& set, double R,
                                  double area_bound, int threads = 0);

}  // namespace saddlepairs
