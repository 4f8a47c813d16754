#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "klent/knn.hpp"
#include "klent/weights.hpp"

namespace klent {

// Rescaled neighbour ball volumes xi[i][j] = e^{-Psi(j+1)} V_d (n-1) rho^d,
// stored as log values; the estimator only ever needs log xi and the raw
// products overflow for large d.
struct XiMatrix {
    std::vector<double> log_xi;  // n * k entries
    std::size_t n = 0;
    std::size_t k = 0;
    std::size_t d = 0;

    double log_value(std::size_t i, std::size_t j) const { return log_xi[i * k + j]; }
    double value(std::size_t i, std::size_t j) const;
};

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;
};

struct EntropyEstimate {
    double h_hat = 0.0;  // nats
    std::size_t n = 0;
    std::size_t d = 0;
    int k = 0;
    WeightVector weights;
    std::optional<double> variance_hat;
    bool variance_clamped = false;
    std::optional<ConfidenceInterval> ci;
};

// log xi values from neighbour distances; requires all distances > 0.
XiMatrix xi_values(const NeighbourDistances& nd, std::size_t n, std::size_t d);

// Classical k-nearest-neighbour entropy estimate (unit mass at k).
EntropyEstimate kl_estimate(const PointCloud& cloud, int k,
                            KnnBackend backend = KnnBackend::tree);

// Weighted estimate (1/n) sum_i sum_j w_j log xi_(j),i.  Only support
// indices of w contribute.
EntropyEstimate weighted_kl_estimate(const PointCloud& cloud, const WeightVector& w,
                                     KnnBackend backend = KnnBackend::tree);

// Same, reusing a precomputed XiMatrix (the harness computes xi once per
// replicate and feeds both the estimate and the variance path).
double weighted_estimate_from_xi(const XiMatrix& xi, const WeightVector& w);

}  // namespace klent
