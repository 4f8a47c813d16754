#pragma once

// Scalar special functions used throughout the library.  All functions are
// pure, allocation-free and thread-safe.

namespace klent::specfun {

// Psi(x), first logarithmic derivative of Gamma.  x > 0.
// For integer k >= 1 this agrees with -gamma + sum_{j<k} 1/j.
double digamma(double x);

// Psi'(x), second logarithmic derivative of Gamma.  x > 0.
double trigamma(double x);

// log Gamma(x), x > 0.
double log_gamma(double x);

// Gamma(j + a) / Gamma(j), evaluated as exp(lgamma difference).
// Requires j > 0 and j + a > 0.
double gamma_ratio(double j, double a);

// Volume of the unit Euclidean ball in dimension d >= 1.
double unit_ball_volume(int d);

// Regularised incomplete beta function I_{a,b}(x), a,b > 0, x in [0,1].
double reg_inc_beta(double a, double b, double x);

// z with Phi(z) = 1 - p, for p in (0,1); i.e. the upper-tail standard
// normal quantile.
double normal_quantile(double p);

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr double pi = 3.14159265358979323846264338327950288;

}  // namespace klent::specfun
