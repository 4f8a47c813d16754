#include "klent/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <utility>

#include "klent/errors.hpp"
#include "klent/specfun.hpp"

namespace klent {

namespace {

// Dense LU with partial pivoting for the tiny d'xd' systems (d' <= 3 for
// d <= 10).  Returns false if a pivot vanishes.
bool lu_factor(std::vector<double>& a, std::vector<int>& piv, int m) {
    for (int i = 0; i < m; ++i) piv[i] = i;
    for (int col = 0; col < m; ++col) {
        int p = col;
        for (int r = col + 1; r < m; ++r) {
            if (std::fabs(a[r * m + col]) > std::fabs(a[p * m + col])) p = r;
        }
        if (a[p * m + col] == 0.0) return false;
        if (p != col) {
            for (int c = 0; c < m; ++c) std::swap(a[p * m + c], a[col * m + c]);
            std::swap(piv[p], piv[col]);
        }
        for (int r = col + 1; r < m; ++r) {
            const double f = a[r * m + col] / a[col * m + col];
            a[r * m + col] = f;
            for (int c = col + 1; c < m; ++c) a[r * m + c] -= f * a[col * m + c];
        }
    }
    return true;
}

void lu_solve(const std::vector<double>& lu, const std::vector<int>& piv, int m,
              const std::vector<double>& b, std::vector<double>& x) {
    for (int i = 0; i < m; ++i) x[i] = b[piv[i]];
    for (int i = 1; i < m; ++i) {
        for (int j = 0; j < i; ++j) x[i] -= lu[i * m + j] * x[j];
    }
    for (int i = m - 1; i >= 0; --i) {
        for (int j = i + 1; j < m; ++j) x[i] -= lu[i * m + j] * x[j];
        x[i] /= lu[i * m + i];
    }
}

double norm1(const std::vector<double>& a, int m) {
    double best = 0.0;
    for (int c = 0; c < m; ++c) {
        double s = 0.0;
        for (int r = 0; r < m; ++r) s += std::fabs(a[r * m + c]);
        best = std::max(best, s);
    }
    return best;
}

}  // namespace

WeightVector unit_weights(int k, int d) {
    if (k < 1) throw std::invalid_argument("unit_weights: k must be >= 1");
    WeightVector wv;
    wv.k = k;
    wv.d = d;
    wv.w.assign(static_cast<std::size_t>(k), 0.0);
    wv.w[k - 1] = 1.0;
    wv.support = {k};
    return wv;
}

WeightVector canonical_weights(int k, int d) {
    if (d < 1) throw std::invalid_argument("canonical_weights: d must be >= 1");
    if (k / d < 1) throw std::invalid_argument("canonical_weights: k too small for d");

    const int dprime = d / 4 + 1;
    std::vector<int> support(dprime);
    for (int t = 1; t <= dprime; ++t) {
        support[t - 1] = static_cast<int>((static_cast<long long>(t) * k) / d);
    }

    WeightVector wv;
    wv.k = k;
    wv.d = d;
    wv.w.assign(static_cast<std::size_t>(k), 0.0);
    wv.support = support;

    if (dprime == 1) {
        wv.w[support[0] - 1] = 1.0;
        return wv;
    }

    // A_{lt} = Gamma(j_t + 2(l-1)/d) / Gamma(j_t) * k^{-2(l-1)/d}; the
    // rescaling by k keeps all entries O(1).
    std::vector<double> a(static_cast<std::size_t>(dprime) * dprime);
    for (int l = 0; l < dprime; ++l) {
        const double shift = 2.0 * l / d;
        for (int t = 0; t < dprime; ++t) {
            a[l * dprime + t] =
                specfun::gamma_ratio(support[t], shift) * std::pow(k, -shift);
        }
    }

    std::vector<double> lu = a;
    std::vector<int> piv(dprime);
    if (!lu_factor(lu, piv, dprime)) {
        throw IllConditionedError("canonical_weights: singular weight system",
                                  std::numeric_limits<double>::infinity());
    }

    // 1-norm condition estimate via the explicit inverse (the system is tiny).
    std::vector<double> inv(static_cast<std::size_t>(dprime) * dprime);
    std::vector<double> e(dprime, 0.0), col(dprime);
    for (int c = 0; c < dprime; ++c) {
        e.assign(dprime, 0.0);
        e[c] = 1.0;
        lu_solve(lu, piv, dprime, e, col);
        for (int r = 0; r < dprime; ++r) inv[r * dprime + c] = col[r];
    }
    const double cond = norm1(a, dprime) * norm1(inv, dprime);
    if (!(cond < kWeightConditionLimit)) {
        throw IllConditionedError("canonical_weights: ill-conditioned weight system", cond);
    }

    for (int t = 0; t < dprime; ++t) {
        wv.w[support[t] - 1] = inv[t * dprime + 0];  // (A^-1 e_1)_t
    }
    return wv;
}

WeightReport validate_weights(const WeightVector& wv, int k, int d) {
    if (static_cast<int>(wv.w.size()) != k) {
        throw std::invalid_argument("validate_weights: weight length != k");
    }
    WeightReport report;

    double sum = 0.0;
    for (double x : wv.w) sum += x;
    report.sum_residual = std::fabs(sum - 1.0);

    const int nmoments = d / 4;
    report.moment_residuals.reserve(nmoments);
    bool ok = report.sum_residual < kWeightSumTol;
    for (int l = 1; l <= nmoments; ++l) {
        const double shift = 2.0 * l / d;
        double acc = 0.0;
        double largest = 0.0;
        for (int j = 1; j <= k; ++j) {
            if (wv.w[j - 1] == 0.0) continue;
            const double term = wv.w[j - 1] * specfun::gamma_ratio(j, shift);
            acc += term;
            largest = std::max(largest, std::fabs(term));
        }
        const double res = largest > 0.0 ? std::fabs(acc) / largest : std::fabs(acc);
        report.moment_residuals.push_back(res);
        ok = ok && res < kWeightMomentTol;
    }
    report.in_class = ok;
    return report;
}

}  // namespace klent
