#pragma once

#include <string>
#include <vector>

#include "saddlepairs/counting.hpp"
#include "saddlepairs/enumerate.hpp"

namespace saddlepairs {

// One cusp of the affine symmetry group: the orbit constant of its longest
// core curve and the core-curve lengths in descending order.
struct Cusp {
  double c1 = 0.0;
  std::vector<double> lengths;
};

struct CuspData {
  std::vector<Cusp> cusps;
};

// The printed closed form sums (j-1) over j = 1..m-1; the ordered-pairs
// convention sums (m-j) over j = 1..m, which matches the displayed pair-count
// identity. Both use the squared length ratios r_j = lengths[0]/lengths[j-1].
enum class LatticeConvention { AsPrinted, OrderedPairs };

// Asymptotic parallel-pair density constant from cusp data.
double lattice_constant(const CuspData& data, LatticeConvention convention);

// JSON document {"cusps": [{"c1": real, "lengths": [desc reals]}, ...]}.
CuspData cusp_data_from_json(const std::string& text);
std::string cusp_data_to_json(const CuspData& data);

// Empirical parallel-pair growth: count_parallel(R) / R^2 over the ladder.
GrowthFit parallel_growth(const HolonomySet& set,
                          const std::vector<double>& radii);

}  // namespace saddlepairs
