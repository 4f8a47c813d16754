#pragma once

#include <vector>

namespace klent {

// Settings for the fixed-k variance-inflation evaluation.  s_max bounds the
// (s,t) integration square; the e^{-s-t} envelope bounds the discarded tail
// and is folded into the reported error.
struct InflationSpec {
    int d = 1;
    int k = 1;
    double s_max = 0.0;    // 0 means the default k + 40
    double rel_tol = 1e-4;
};

struct InflationResult {
    double value = 0.0;        // the full inflation expression
    double integral = 0.0;     // the triple-integral term alone
    double error_bound = 0.0;  // quadrature + truncation error estimate
    bool converged = true;
};

// Normalised volume of the intersection of balls of volume-parameters s
// (centred at the origin) and t (centre at volume-distance r), i.e.
// radii s^{1/d}, t^{1/d} and centre separation r^{1/d}, divided by V_d.
// Computed from the two spherical-cap decomposition via the regularised
// incomplete beta function.
double ball_intersection_alpha(double r, double s, double t, int d);

// The covariance kernel of the fixed-k limit: a difference between a
// coupled bivariate Poisson tail sum (overlap mass alpha) and the
// independent product, with the neighbour-order thresholds adjusted by
// whether the other centre lies inside each ball.
double t_k(double r, double s, double t, int k, int d);

// Distribution-free asymptotic variance inflation of the fixed-k estimator:
// trigamma term + triple integral - 1 plus the singular-component
// corrections (the k = 1 case uses the + 2 log 2 form).
// Throws QuadratureError if the requested tolerance cannot be reached.
InflationResult inflation_value(const InflationSpec& spec);

struct InflationCell {
    int d;
    int k;
    double value;
};

// The 5x5 (d in {1,2,3,5,10}, k in 1..5) reference grid.
std::vector<InflationCell> inflation_table(double rel_tol = 1e-4);

}  // namespace klent
