#pragma once

#include <cstdint>
#include <vector>

#include "saddlepairs/counting.hpp"
#include "saddlepairs/planar.hpp"

namespace saddlepairs {

// Reproducible generator: xoshiro256** seeded through splitmix64. Substreams
// are derived from (seed, stream) so parallel trials stay independent of the
// worker count. Recorded in reports so results are reproducible elsewhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);
  std::uint64_t next();
  double uniform();      // [0, 1)
  double uniform_pos();  // (0, 1]

 private:
  std::uint64_t state_[4];
};

// Poisson deviate with mean mu: product inversion for small mu, transformed
// rejection (PTRS) for large mu.
long long poisson_deviate(Rng& rng, double mu);

struct PoissonSample {
  double intensity = 0.0;
  double window_radius = 0.0;
  std::uint64_t seed = 0;
  std::vector<Vec2> points;
};

// K ~ Poisson(intensity * pi * r^2) points uniform in the disk of radius r.
PoissonSample sample(double intensity, double window_radius,
                     std::uint64_t seed);

// Axis-aligned box [x0, x1) x [y0, y1).
struct CellBox {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
};

// Count-law check: over many seeded trials, per-cell count histograms are
// tested against the Poisson(intensity * area) law (chi-square with small
// expected bins pooled), and pairwise count correlations are reported. The
// window is the smallest disk containing every cell.
struct CellCountResult {
  double intensity = 0.0;
  double window_radius = 0.0;
  long long trials = 0;
  std::vector<double> cell_area;
  std::vector<double> statistic;     // chi-square per cell
  std::vector<int> degrees;          // degrees of freedom per cell
  std::vector<double> p_value;
  std::vector<std::vector<double>> correlation;  // pairwise Pearson
};

CellCountResult cell_count_test(double intensity,
                                const std::vector<CellBox>& cells,
                                long long trials, std::uint64_t seed,
                                int threads = 0);

// Monte Carlo volume of {(z, w) in (disk R)^2 : |w| <= |z|, |z ^ w| <= A}.
double disk_pair_volume_mc(double area_bound, double R, std::uint64_t seed,
                           long long samples = 10000000);

// Empirical distinct-ordered-pair growth of Poisson configurations against
// the geometric-probability prediction intensity^2 * pair volume / R^2.
struct PoissonPairGrowth {
  GrowthFit empirical;             // mean pair count / R^2 per radius
  std::vector<double> predicted;   // intensity^2 * volume / R^2
  std::vector<double> ratio;       // empirical / predicted (0 when predicted 0)
};

PoissonPairGrowth poisson_pair_growth(double intensity, double area_bound,
                                      const std::vector<double>& radii,
                                      long long trials, std::uint64_t seed,
                                      int threads = 0);

}  // namespace saddlepairs
