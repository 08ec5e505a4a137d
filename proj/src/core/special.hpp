#pragma once

namespace umo {

// Rational-approximation error function used by the Gaussian comparison
// operator. Guaranteed absolute error below 1e-7 against the true erf
// (in practice near machine precision); kept separate from the std::erf
// based oracle path so the two routes stay independent.
double erf_approx(double x);

// Standard normal CDF and inverse CDF (oracle-grade, std::erf based).
double normal_cdf(double z);
double normal_quantile(double p);

// Regularized incomplete beta and friends for Beta(a, b) on [0, 1].
double beta_pdf(double a, double b, double x);
double beta_cdf(double a, double b, double x);
double beta_quantile(double a, double b, double p);

}  // namespace umo
