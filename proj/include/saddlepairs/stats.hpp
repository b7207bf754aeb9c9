#pragma once

namespace saddlepairs {

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a), for
// a > 0, x >= 0. Series expansion for x < a + 1, continued fraction
// otherwise; absolute accuracy around 1e-14.
double regularized_gamma_p(double a, double x);

// Upper tail of the chi-square distribution with dof degrees of freedom:
// P(X >= stat) = 1 - P(dof/2, stat/2).
double chi_square_tail(double stat, int dof);

}  // namespace saddlepairs
