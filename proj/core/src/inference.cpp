#include "klent/inference.hpp"

#include <cmath>
#include <stdexcept>

#include "klent/specfun.hpp"

namespace klent {

VarianceEstimate variance_estimate(const XiMatrix& xi, const WeightVector& w,
                                   double h_hat) {
    if (static_cast<std::size_t>(w.k) > xi.k) {
        throw std::invalid_argument("variance_estimate: weight length exceeds k");
    }
    double sum = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < xi.n; ++i) {
        for (int j : w.support) {
            const double lx = xi.log_value(i, static_cast<std::size_t>(j - 1));
            const double term = w.w[j - 1] * lx * lx;
            const double y = term - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }
    VarianceEstimate out;
    out.raw = sum / static_cast<double>(xi.n) - h_hat * h_hat;
    out.clamped = out.raw < 0.0;
    out.value = out.clamped ? 0.0 : out.raw;
    return out;
}

ConfidenceInterval confidence_interval(double h_hat, double v_hat, std::size_t n,
                                       double level) {
    if (!(level > 0.0) || !(level < 1.0)) {
        throw std::invalid_argument("confidence_interval: level must lie in (0,1)");
    }
    if (n < 2) throw std::invalid_argument("confidence_interval: need n >= 2");
    if (v_hat < 0.0) throw std::invalid_argument("confidence_interval: v_hat must be >= 0");

    const double q = 1.0 - level;
    const double z = specfun::normal_quantile(q / 2.0);
    const double half_width = z * std::sqrt(v_hat / static_cast<double>(n));
    return {h_hat - half_width, h_hat + half_width, level};
}

}  // namespace klent
