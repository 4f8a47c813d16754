#include "klent/estimator.hpp"

#include <cmath>
#include <stdexcept>

#include "klent/errors.hpp"
#include "klent/specfun.hpp"

namespace klent {

double XiMatrix::value(std::size_t i, std::size_t j) const {
    return std::exp(log_value(i, j));
}

XiMatrix xi_values(const NeighbourDistances& nd, std::size_t n, std::size_t d) {
    if (nd.n != n) throw std::invalid_argument("xi_values: n mismatch");
    XiMatrix xi;
    xi.n = n;
    xi.k = nd.k;
    xi.d = d;
    xi.log_xi.resize(n * nd.k);

    const double log_vd = std::log(specfun::unit_ball_volume(static_cast<int>(d)));
    const double log_nm1 = std::log(static_cast<double>(n - 1));
    std::vector<double> psi(nd.k);
    for (std::size_t j = 0; j < nd.k; ++j) {
        psi[j] = specfun::digamma(static_cast<double>(j + 1));
    }

    std::vector<std::pair<std::size_t, std::size_t>> zero_pairs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < nd.k; ++j) {
            const double rho = nd(i, j);
            if (rho <= 0.0) {
                zero_pairs.emplace_back(i, i);
                break;
            }
            xi.log_xi[i * nd.k + j] =
                static_cast<double>(d) * std::log(rho) + log_vd + log_nm1 - psi[j];
        }
    }
    if (!zero_pairs.empty()) throw ZeroDistanceError(std::move(zero_pairs));
    return xi;
}

double weighted_estimate_from_xi(const XiMatrix& xi, const WeightVector& w) {
    if (static_cast<std::size_t>(w.k) > xi.k) {
        throw std::invalid_argument("weighted_estimate_from_xi: weight length exceeds k");
    }
    // Weights can exceed 3 in magnitude and terms cancel, so the double sum
    // is accumulated with Kahan compensation in input order.
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < xi.n; ++i) {
        for (int j : w.support) {
            const double term = w.w[j - 1] * xi.log_value(i, static_cast<std::size_t>(j - 1));
            const double y = term - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    return sum / static_cast<double>(xi.n);
}

EntropyEstimate weighted_kl_estimate(const PointCloud& cloud, const WeightVector& w,
                                     KnnBackend backend) {
    if (static_cast<std::size_t>(w.k) > cloud.n - 1) {
        throw std::invalid_argument("weighted_kl_estimate: weight vector longer than n-1");
    }
    const NeighbourDistances nd =
        all_knn_distances(cloud, static_cast<std::size_t>(w.k), backend);
    const XiMatrix xi = xi_values(nd, cloud.n, cloud.d);

    EntropyEstimate est;
    est.h_hat = weighted_estimate_from_xi(xi, w);
    est.n = cloud.n;
    est.d = cloud.d;
    est.k = w.k;
    est.weights = w;
    return est;
}

EntropyEstimate kl_estimate(const PointCloud& cloud, int k, KnnBackend backend) {
    return weighted_kl_estimate(cloud, unit_weights(k, static_cast<int>(cloud.d)), backend);
}

}  // namespace klent
