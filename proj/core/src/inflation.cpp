#include "klent/inflation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "klent/errors.hpp"
#include "klent/quadrature.hpp"
#include "klent/specfun.hpp"

namespace klent {

namespace {

// Signed-height spherical cap volume as a fraction of the full ball volume:
// the fraction of a radius-R ball lying in the half-space {x_1 >= a}, for
// |a| <= R.
double cap_fraction(double radius, double height, int d) {
    const double x = 1.0 - (height / radius) * (height / radius);
    const double half =
        0.5 * specfun::reg_inc_beta(0.5 * (d + 1), 0.5, std::clamp(x, 0.0, 1.0));
    return height >= 0.0 ? half : 1.0 - half;
}

}  // namespace

double ball_intersection_alpha(double r, double s, double t, int d) {
    if (r < 0.0 || s < 0.0 || t < 0.0) {
        throw std::domain_error("ball_intersection_alpha: negative input");
    }
    if (d < 1) throw std::domain_error("ball_intersection_alpha: d must be >= 1");
    if (s == 0.0 || t == 0.0) return 0.0;

    const double inv_d = 1.0 / d;
    const double r1 = std::pow(s, inv_d);
    const double r2 = std::pow(t, inv_d);
    const double sep = std::pow(r, inv_d);

    if (sep >= r1 + r2) return 0.0;                  // disjoint
    if (sep <= std::fabs(r1 - r2)) return std::min(s, t);  // containment

    // Lens: one cap from each ball on either side of the radical plane.
    const double h1 = 0.5 * (sep + (r1 * r1 - r2 * r2) / sep);
    const double h2 = sep - h1;
    return s * cap_fraction(r1, h1, d) + t * cap_fraction(r2, h2, d);
}

namespace {

// T_k given a precomputed overlap alpha, scaled by exp(log_damp).  The two
// tail sums are evaluated with identical loop structure so that the disjoint
// case (alpha = 0 and both thresholds equal) cancels exactly.  With
// log_damp = -(s + t) both terms are genuine probabilities in [0, 1], which
// keeps the integrand well conditioned for large s, t (the raw T_k grows
// like e^alpha).
double t_k_given_alpha(double alpha, double r, double s, double t, int k,
                       double log_damp) {
    const int thr_s = k - 1 - (r < s ? 1 : 0);
    const int thr_t = k - 1 - (r < t ? 1 : 0);
    const int thr_shared = std::min(thr_s, thr_t);  // = k-1-1{r < max(s,t)}

    if (thr_s < 0 || thr_t < 0) {
        // k = 1 with the other centre inside the ball: both sums are empty.
        return 0.0;
    }

    double fact[8];
    fact[0] = 1.0;
    for (int i = 1; i <= k; ++i) fact[i] = fact[i - 1] * i;

    auto powers = [&](double base, int count, double* out) {
        out[0] = 1.0;
        for (int i = 1; i <= count; ++i) out[i] = out[i - 1] * base;
    };
    double pow_s[8], pow_t[8], pow_sa[8], pow_ta[8], pow_a[8];
    powers(s, k, pow_s);
    powers(t, k, pow_t);
    powers(s - alpha, k, pow_sa);
    powers(t - alpha, k, pow_ta);
    powers(alpha, k, pow_a);

    double coupled = 0.0;
    for (int shared = 0; shared <= thr_shared; ++shared) {
        double level = 0.0;
        for (int i = 0; i <= thr_s - shared; ++i) {
            double row = 0.0;
            for (int j = 0; j <= thr_t - shared; ++j) {
                row += pow_ta[j] / fact[j];
            }
            level += row * pow_sa[i] / fact[i];
        }
        coupled += level * pow_a[shared] / fact[shared];
    }
    coupled *= std::exp(alpha + log_damp);

    double independent = 0.0;
    {
        double level = 0.0;
        for (int i = 0; i <= thr_s; ++i) {
            double row = 0.0;
            for (int j = 0; j <= thr_t; ++j) {
                row += pow_t[j] / fact[j];
            }
            level += row * pow_s[i] / fact[i];
        }
        independent = level * std::exp(log_damp);
    }
    return coupled - independent;
}

}  // namespace

double t_k(double r, double s, double t, int k, int d) {
    if (k < 1) throw std::domain_error("t_k: k must be >= 1");
    if (k > 7) throw std::domain_error("t_k: fixed-k evaluation supports k <= 7");
    return t_k_given_alpha(ball_intersection_alpha(r, s, t, d), r, s, t, k, 0.0);
}

namespace {

// exp(-s-t) * T_k(r, s, t): the damped kernel used inside the quadrature.
double t_k_damped(double r, double s, double t, int k, int d) {
    return t_k_given_alpha(ball_intersection_alpha(r, s, t, d), r, s, t, k,
                           -(s + t));
}

}  // namespace

namespace {

// Smallest (s,t) at which the integrand is evaluated directly; below this
// the integrand is frozen at the boundary value (it extends continuously
// to the axes, where T_k vanishes bilinearly).
constexpr double kAxisClamp = 1e-6;

struct InnerIntegrand {
    int k, d;
    double tol;
    mutable bool converged = true;

    // g(s,t) = (e^{-s-t}/(s t)) * int_0^{rmax} T_k(r,s,t) dr
    double operator()(double s_in, double t_in) const {
        const double s = std::max(s_in, kAxisClamp);
        const double t = std::max(t_in, kAxisClamp);
        const double inv_d = 1.0 / d;
        const double rs = std::pow(s, inv_d);
        const double rt = std::pow(t, inv_d);
        const double r_disjoint = std::pow(rs + rt, d);

        // The integrand vanishes bilinearly at the axes and decays like
        // e^{-s-t}, so budget the r-integral tolerance with both factors.
        // Floor: below this the whole (s,t) region contributes nothing at
        // the overall target, so chasing tighter r-integrals is wasted work.
        const double scale = std::max(s * t * std::exp(-s - t), 1e-12);

        // The indicator thresholds jump at r = s and r = t, and the
        // containment boundary introduces a kink; integrate each smooth
        // segment separately.
        double bps[5] = {0.0, std::pow(std::fabs(rs - rt), d), std::min(s, t),
                         std::max(s, t), r_disjoint};
        std::sort(bps, bps + 5);

        double total = 0.0;
        for (int seg = 0; seg + 1 < 5; ++seg) {
            const double a = bps[seg], b = std::min(bps[seg + 1], r_disjoint);
            if (!(b > a)) continue;
            const QuadResult q = integrate_adaptive(
                [&](double r) { return t_k_damped(r, s, t, k, d); }, a, b,
                tol * scale * std::max(1.0, (b - a) / r_disjoint), 36);
            if (!q.converged) converged = false;
            total += q.value;
        }
        return total / (s * t);
    }
};

}  // namespace

InflationResult inflation_value(const InflationSpec& spec) {
    const int k = spec.k;
    const int d = spec.d;
    if (k < 1 || d < 1) throw std::invalid_argument("inflation_value: k, d must be >= 1");
    if (k > 7) throw std::invalid_argument("inflation_value: supports k <= 7");
    const double s_max = spec.s_max > 0.0 ? spec.s_max : k + 40.0;
    const double target = std::max(spec.rel_tol, 1e-8) * 2.0;

    InnerIntegrand inner{k, d, 0.02 * target};

    // Symmetric in (s,t): integrate over s <= t and double.
    bool outer_converged = true;
    auto s_integral = [&](double t) {
        const double tol_s = std::max(0.05 * target * std::exp(-t), 1e-14);
        const QuadResult q =
            integrate_adaptive([&](double s) { return inner(s, t); }, 0.0, t,
                               tol_s, 30);
        if (!q.converged) outer_converged = false;
        return 2.0 * q.value;
    };
    const QuadResult outer =
        integrate_adaptive(s_integral, 0.0, s_max, 0.4 * target, 24);

    // Tail beyond the [0, s_max]^2 square.  Both terms of the damped kernel
    // are Poisson tail probabilities bounded by k max(s,t)^{k-1} e^{-max(s,t)}
    // and the r-support has measure at most 2^d max(s,t), so the whole tail
    // is below this envelope for s_max well past k.
    const double tail_bound = std::pow(2.0, d + 1) * k *
                              std::pow(s_max, static_cast<double>(k) + 1.0) *
                              std::exp(-s_max);

    InflationResult res;
    res.integral = outer.value;
    res.error_bound = outer.error + tail_bound;
    res.converged = outer_converged && inner.converged && outer.error <= target;

    double value = specfun::trigamma(k) + outer.value - 1.0;
    if (k == 1) {
        value += 2.0 * std::log(2.0);
    } else {
        // Singular-component corrections for k >= 2 (binomials via lgamma).
        const double log2 = std::log(2.0);
        const double binom_central =
            std::exp(specfun::log_gamma(2.0 * k - 1.0) -
                     2.0 * specfun::log_gamma(static_cast<double>(k)) -
                     (2.0 * k - 2.0) * log2);
        value += binom_central *
                 (specfun::digamma(2.0 * k - 1.0) - specfun::digamma(k) - log2);
        double sum = 0.0;
        for (int j = 0; j <= k - 2; ++j) {
            const double binom = std::exp(specfun::log_gamma(k + j + 0.0) -
                                          specfun::log_gamma(j + 1.0) -
                                          specfun::log_gamma(static_cast<double>(k)));
            sum += std::exp(-(k + j) * log2) * binom *
                   (1.0 - (k - j) * (specfun::digamma(k + j + 0.0) - log2 -
                                     specfun::digamma(k)));
        }
        value += sum / (k - 1.0);
    }
    res.value = value;

    if (!res.converged) {
        throw QuadratureError("inflation_value: quadrature did not reach tolerance",
                              res.value, res.error_bound);
    }
    return res;
}

std::vector<InflationCell> inflation_table(double rel_tol) {
    std::vector<InflationCell> cells;
    for (int d : {1, 2, 3, 5, 10}) {
        for (int k = 1; k <= 5; ++k) {
            InflationSpec spec;
            spec.d = d;
            spec.k = k;
            spec.rel_tol = rel_tol;
            cells.push_back({d, k, inflation_value(spec).value});
        }
    }
    return cells;
}

}  // namespace klent
