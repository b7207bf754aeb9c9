#include "saddlepairs/poisson.hpp"

#include <algorithm>
#include <cmath>

#include "saddlepairs/errors.hpp"
#include "saddlepairs/stats.hpp"
#include "saddlepairs/threads.hpp"

namespace saddlepairs {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed ^ (0xD2B74407B1CE6E93ULL * (stream + 1));
  for (auto& s : state_) s = splitmix64(x);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double Rng::uniform_pos() {
  return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

long long poisson_deviate(Rng& rng, double mu) {
  require(mu >= 0.0 && std::isfinite(mu), ErrorCode::NonPositiveParams,
          "Poisson mean must be finite and nonnegative");
  if (mu == 0.0) return 0;
  if (mu < 10.0) {
    const double limit = std::exp(-mu);
    long long k = 0;
    double product = 1.0;
    do {
      ++k;
      product *= rng.uniform_pos();
    } while (product > limit);
    return k - 1;
  }
  // transformed rejection with squeeze (PTRS)
  const double b = 0.931 + 2.53 * std::sqrt(mu);
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mu = std::log(mu);
  for (;;) {
    const double u = rng.uniform() - 0.5;
    const double v = rng.uniform_pos();
    const double us = 0.5 - std::abs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mu + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long long>(kf);
    if (kf < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        kf * log_mu - mu - std::lgamma(kf + 1.0))
      return static_cast<long long>(kf);
  }
}

namespace {

Vec2 disk_point(Rng& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  const double theta = 2.0 * M_PI * rng.uniform();
  return Vec2::real(r * std::cos(theta), r * std::sin(theta));
}

void fill_sample(Rng& rng, double intensity, double window_radius,
                 std::vector<Vec2>& points) {
  const long long count =
      poisson_deviate(rng, intensity * M_PI * window_radius * window_radius);
  points.clear();
  points.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i)
    points.push_back(disk_point(rng, window_radius));
}

}  // namespace

PoissonSample sample(double intensity, double window_radius,
                     std::uint64_t seed) {
  require(intensity > 0.0, ErrorCode::NonPositiveParams,
          "intensity must be positive");
  require(window_radius > 0.0, ErrorCode::NonPositiveParams,
          "window radius must be positive");
  PoissonSample out;
  out.intensity = intensity;
  out.window_radius = window_radius;
  out.seed = seed;
  Rng rng(seed, 0);
  fill_sample(rng, intensity, window_radius, out.points);
  return out;
}

namespace {

bool boxes_overlap(const CellBox& a, const CellBox& b) {
  return std::max(a.x0, b.x0) < std::min(a.x1, b.x1) &&
         std::max(a.y0, b.y0) < std::min(a.y1, b.y1);
}

bool in_box(const CellBox& c, const Vec2& p) {
  return p.x >= c.x0 && p.x < c.x1 && p.y >= c.y0 && p.y < c.y1;
}

}  // namespace

CellCountResult cell_count_test(double intensity,
                                const std::vector<CellBox>& cells,
                                long long trials, std::uint64_t seed,
                                int threads) {
  require(intensity > 0.0, ErrorCode::NonPositiveParams,
          "intensity must be positive");
  require(trials > 0, ErrorCode::NonPositiveParams,
          "trial count must be positive");
  require(!cells.empty(), ErrorCode::NonPositiveParams,
          "cell list must be nonempty");
  for (const CellBox& c : cells)
    require(c.x0 <= c.x1 && c.y0 <= c.y1, ErrorCode::NonPositiveParams,
            "cell corners must be ordered");
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = i + 1; j < cells.size(); ++j)
      require(!boxes_overlap(cells[i], cells[j]), ErrorCode::OverlappingCells,
              "cells " + std::to_string(i) + " and " + std::to_string(j) +
                  " overlap");

  double window = 0.0;
  for (const CellBox& c : cells)
    for (double x : {c.x0, c.x1})
      for (double y : {c.y0, c.y1}) window = std::max(window, std::hypot(x, y));
  require(window > 0.0, ErrorCode::NonPositiveParams,
          "cells collapse to the origin");

  const std::size_t ncells = cells.size();
  // fixed histogram span per cell; counts beyond it pool into the last slot
  std::vector<double> mean(ncells);
  std::vector<std::size_t> bins(ncells);
  for (std::size_t c = 0; c < ncells; ++c) {
    mean[c] = intensity * (cells[c].x1 - cells[c].x0) *
              (cells[c].y1 - cells[c].y0);
    bins[c] = static_cast<std::size_t>(
        std::ceil(mean[c] + 12.0 * std::sqrt(mean[c] + 1.0) + 20.0));
  }

  struct Partial {
    std::vector<std::vector<long long>> hist;   // per cell
    std::vector<long long> sum, sum2;           // per cell
    std::vector<long long> cross;               // per unordered cell pair
  };
  const int chunks = static_cast<int>(
      std::min<long long>(trials, kPairChunks));
  std::vector<Partial> partial(chunks);
  parallel_chunks(chunks, worker_count(threads), [&](int chunk) {
    Partial p;
    p.hist.resize(ncells);
    for (std::size_t c = 0; c < ncells; ++c) p.hist[c].assign(bins[c] + 1, 0);
    p.sum.assign(ncells, 0);
    p.sum2.assign(ncells, 0);
    p.cross.assign(ncells * ncells, 0);
    const long long lo = trials * chunk / chunks;
    const long long hi = trials * (chunk + 1) / chunks;
    std::vector<Vec2> points;
    std::vector<long long> count(ncells);
    for (long long trial = lo; trial < hi; ++trial) {
      Rng rng(seed, static_cast<std::uint64_t>(trial));
      fill_sample(rng, intensity, window, points);
      std::fill(count.begin(), count.end(), 0);
      for (const Vec2& pt : points)
        for (std::size_t c = 0; c < ncells; ++c)
          if (in_box(cells[c], pt)) ++count[c];
      for (std::size_t c = 0; c < ncells; ++c) {
        const std::size_t slot = static_cast<std::size_t>(
            std::min<long long>(count[c], static_cast<long long>(bins[c])));
        ++p.hist[c][slot];
        p.sum[c] += count[c];
        p.sum2[c] += count[c] * count[c];
        for (std::size_t d = c + 1; d < ncells; ++d)
          p.cross[c * ncells + d] += count[c] * count[d];
      }
    }
    partial[chunk] = std::move(p);
  });

  // combine
  std::vector<std::vector<long long>> hist(ncells);
  std::vector<long long> sum(ncells, 0), sum2(ncells, 0);
  std::vector<long long> cross(ncells * ncells, 0);
  for (std::size_t c = 0; c < ncells; ++c) hist[c].assign(bins[c] + 1, 0);
  for (const Partial& p : partial) {
    if (p.hist.empty()) continue;
    for (std::size_t c = 0; c < ncells; ++c) {
      for (std::size_t s = 0; s <= bins[c]; ++s) hist[c][s] += p.hist[c][s];
      sum[c] += p.sum[c];
      sum2[c] += p.sum2[c];
      for (std::size_t d = c + 1; d < ncells; ++d)
        cross[c * ncells + d] += p.cross[c * ncells + d];
    }
  }

  CellCountResult out;
  out.intensity = intensity;
  out.window_radius = window;
  out.trials = trials;
  out.correlation.assign(ncells, std::vector<double>(ncells, 0.0));
  const double tn = static_cast<double>(trials);
  for (std::size_t c = 0; c < ncells; ++c) {
    out.cell_area.push_back(mean[c] / intensity);
    // Poisson pmf over the histogram span, pooled so expected counts >= 5
    std::vector<double> pmf(bins[c] + 1, 0.0);
    double tail = 1.0;
    if (mean[c] > 0.0) {
      double logp = -mean[c];
      for (std::size_t k = 0; k < bins[c]; ++k) {
        if (k > 0) logp += std::log(mean[c]) - std::log(static_cast<double>(k));
        pmf[k] = std::exp(logp);
        tail -= pmf[k];
      }
    } else {
      pmf[0] = 1.0;
      tail = 0.0;
    }
    pmf[bins[c]] = std::max(tail, 0.0);
    std::vector<double> exp_bin;
    std::vector<long long> obs_bin;
    double exp_acc = 0.0;
    long long obs_acc = 0;
    for (std::size_t k = 0; k <= bins[c]; ++k) {
      exp_acc += tn * pmf[k];
      obs_acc += hist[c][k];
      if (exp_acc >= 5.0) {
        exp_bin.push_back(exp_acc);
        obs_bin.push_back(obs_acc);
        exp_acc = 0.0;
        obs_acc = 0;
      }
    }
    if (exp_acc > 0.0 || obs_acc > 0) {
      // fold the final sliver into the previous pooled bin
      if (exp_bin.empty()) {
        exp_bin.push_back(exp_acc);
        obs_bin.push_back(obs_acc);
      } else {
        exp_bin.back() += exp_acc;
        obs_bin.back() += obs_acc;
      }
    }
    double stat = 0.0;
    for (std::size_t k = 0; k < exp_bin.size(); ++k) {
      const double diff = static_cast<double>(obs_bin[k]) - exp_bin[k];
      stat += diff * diff / std::max(exp_bin[k], 1e-12);
    }
    const int dof = static_cast<int>(exp_bin.size()) - 1;
    out.statistic.push_back(stat);
    out.degrees.push_back(std::max(dof, 0));
    out.p_value.push_back(dof > 0 ? chi_square_tail(stat, dof) : 1.0);
    for (std::size_t d = 0; d < ncells; ++d) {
      if (d == c) {
        out.correlation[c][d] = 1.0;
        continue;
      }
      const std::size_t a = std::min(c, d), b = std::max(c, d);
      const double cov = static_cast<double>(cross[a * ncells + b]) / tn -
                         (static_cast<double>(sum[c]) / tn) *
                             (static_cast<double>(sum[d]) / tn);
      const double var_c = static_cast<double>(sum2[c]) / tn -
                           (static_cast<double>(sum[c]) / tn) *
                               (static_cast<double>(sum[c]) / tn);
      const double var_d = static_cast<double>(sum2[d]) / tn -
                           (static_cast<double>(sum[d]) / tn) *
                               (static_cast<double>(sum[d]) / tn);
      out.correlation[c][d] =
          var_c > 0.0 && var_d > 0.0 ? cov / std::sqrt(var_c * var_d) : 0.0;
    }
  }
  return out;
}

double disk_pair_volume_mc(double area_bound, double R, std::uint64_t seed,
                           long long samples) {
  require(area_bound >= 0.0, ErrorCode::NonPositiveParams,
          "area bound must be nonnegative");
  require(R > 0.0, ErrorCode::NonPositiveParams, "radius must be positive");
  require(samples > 0, ErrorCode::NonPositiveParams,
          "sample count must be positive");
  Rng rng(seed, 0x766f6c);
  long long hits = 0;
  for (long long i = 0; i < samples; ++i) {
    const Vec2 z = disk_point(rng, R);
    const Vec2 w = disk_point(rng, R);
    if (norm2(w) <= norm2(z) && wedge(z, w) <= area_bound) ++hits;
  }
  const double disk_area = M_PI * R * R;
  return static_cast<double>(hits) / static_cast<double>(samples) * disk_area *
         disk_area;
}

PoissonPairGrowth poisson_pair_growth(double intensity, double area_bound,
                                      const std::vector<double>& radii,
                                      long long trials, std::uint64_t seed,
                                      int threads) {
  require(intensity > 0.0, ErrorCode::NonPositiveParams,
          "intensity must be positive");
  require(area_bound >= 0.0, ErrorCode::NonPositiveParams,
          "area bound must be nonnegative");
  require(trials > 0, ErrorCode::NonPositiveParams,
          "trial count must be positive");

  PoissonPairGrowth out;
  std::vector<double> means;
  for (std::size_t ri = 0; ri < radii.size(); ++ri) {
    const double R = radii[ri];
    require(R > 0.0, ErrorCode::NonPositiveParams, "radii must be positive");
    const int chunks = static_cast<int>(
        std::min<long long>(trials, kPairChunks));
    std::vector<long long> partial(chunks, 0);
    parallel_chunks(chunks, worker_count(threads), [&](int chunk) {
      const long long lo = trials * chunk / chunks;
      const long long hi = trials * (chunk + 1) / chunks;
      long long pairs = 0;
      std::vector<Vec2> points;
      std::vector<double> n2;
      for (long long trial = lo; trial < hi; ++trial) {
        Rng rng(seed, static_cast<std::uint64_t>(ri) * 0x10000000ULL +
                          static_cast<std::uint64_t>(trial) + 1);
        fill_sample(rng, intensity, R, points);
        n2.clear();
        for (const Vec2& p : points) n2.push_back(norm2(p));
        for (std::size_t i = 0; i < points.size(); ++i)
          for (std::size_t j = 0; j < points.size(); ++j) {
            if (i == j || n2[j] > n2[i]) continue;
            if (wedge(points[i], points[j]) <= area_bound) ++pairs;
          }
      }
      partial[chunk] = pairs;
    });
    long long pairs = 0;
    for (long long p : partial) pairs += p;
    means.push_back(static_cast<double>(pairs) / static_cast<double>(trials));

    const double volume = disk_pair_volume_mc(
        area_bound, R, seed ^ (0x9E3779B97F4A7C15ULL + ri));
    out.predicted.push_back(intensity * intensity * volume / (R * R));
  }
  out.empirical = fit_growth(radii, means);
  for (std::size_t i = 0; i < radii.size(); ++i)
    out.ratio.push_back(out.predicted[i] > 0.0
                            ? out.empirical.ratios[i] / out.predicted[i]
                            : 0.0);
  return out;
}

}  // namespace saddlepairs
