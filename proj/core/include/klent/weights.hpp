#pragma once

#include <vector>

namespace klent {

// Length-k weight vector for the weighted entropy estimator, together with
// the dimension it was built for and its nonzero support (ascending).
struct WeightVector {
    std::vector<double> w;
    int k = 0;
    int d = 0;
    std::vector<int> support;  // 1-based neighbour orders j with w_j != 0
};

// Residuals of the defining constraints of the weight class: the weights
// must sum to one and the Gamma-ratio moments must vanish for
// l = 1..floor(d/4).  Moment residuals are reported relative to the largest
// term in the sum.
struct WeightReport {
    double sum_residual = 0.0;                // |sum w_j - 1|
    std::vector<double> moment_residuals;     // one per l, normalised
    bool in_class = false;                    // under 1e-10 / 1e-8 tolerances
};

// Unit mass at neighbour order k; the weighted estimator with these weights
// is exactly the classical unweighted one.
WeightVector unit_weights(int k, int d);

// The canonical weight vector supported on j_t = floor(t*k/d),
// t = 1..floor(d/4)+1, obtained by solving the small Gamma-ratio linear
// system.  For d <= 3 this is the unit mass at floor(k/d).
//
// Throws std::invalid_argument when floor(k/d) < 1 and IllConditionedError
// when the system's condition number exceeds 1e8 (k below the usable
// threshold for this d).
WeightVector canonical_weights(int k, int d);

WeightReport validate_weights(const WeightVector& wv, int k, int d);

inline constexpr double kWeightSumTol = 1e-10;
inline constexpr double kWeightMomentTol = 1e-8;
inline constexpr double kWeightConditionLimit = 1e8;

}  // namespace klent
