#include "saddlepairs/stats.hpp"

#include <cmath>

#include "saddlepairs/errors.hpp"

namespace saddlepairs {

namespace {

// Series gamma(a,x)/Gamma(a) = x^a e^-x / Gamma(a) * sum x^n / (a)_{n+1}.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-16) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Lentz continued fraction for Q(a,x); converges for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_p(double a, double x) {
  require(a > 0.0, ErrorCode::NonPositiveParams, "gamma shape must be positive");
  require(x >= 0.0, ErrorCode::NonPositiveParams, "gamma argument must be >= 0");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_cf(a, x);
}

double chi_square_tail(double stat, int dof) {
  require(dof > 0, ErrorCode::NonPositiveParams,
          "chi-square needs positive degrees of freedom");
  if (stat <= 0.0) return 1.0;
  return 1.0 - regularized_gamma_p(dof / 2.0, stat / 2.0);
}

}  // namespace saddlepairs
