#pragma once

#include <cstddef>

#include "klent/estimator.hpp"
#include "klent/weights.hpp"

namespace klent {

struct VarianceEstimate {
    double value = 0.0;   // max(V_tilde, 0)
    bool clamped = false; // V_tilde was negative
    double raw = 0.0;     // V_tilde before clamping
};

// Plug-in variance estimate (1/n) sum_i sum_j w_j log^2 xi - h_hat^2,
// clamped at zero.  h_hat must be the weighted estimate from the same xi
// and w.
VarianceEstimate variance_estimate(const XiMatrix& xi, const WeightVector& w,
                                   double h_hat);

// Asymptotic CI: h_hat -+ n^{-1/2} z_{q/2} v_hat^{1/2} with q = 1 - level.
ConfidenceInterval confidence_interval(double h_hat, double v_hat, std::size_t n,
                                       double level);

}  // namespace klent
