#include "klent/densities.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "klent/errors.hpp"
#include "klent/quadrature.hpp"
#include "klent/specfun.hpp"

namespace klent {

using specfun::digamma;
using specfun::log_gamma;
using specfun::pi;
using specfun::trigamma;

double DensityModel::laplacian(std::span<const double>) const {
    throw std::runtime_error(name() + ": model does not provide a density Laplacian");
}

namespace {

double sq_norm(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

class Gaussian final : public DensityModel {
public:
    explicit Gaussian(std::size_t d) : d_(d), name_("gaussian") {
        if (d < 1) throw std::invalid_argument("gaussian: d must be >= 1");
    }

    const std::string& name() const override { return name_; }
    std::size_t dim() const override { return d_; }

    PointCloud sample(RngStream& rng, std::size_t n) const override {
        PointCloud cloud{std::vector<double>(n * d_), n, d_};
        for (double& v : cloud.data) v = rng.normal();
        return cloud;
    }

    double log_density(std::span<const double> x) const override {
        return -0.5 * d_ * std::log(2.0 * pi) - 0.5 * sq_norm(x);
    }

    double entropy() const override {
        return 0.5 * d_ * std::log(2.0 * pi * std::exp(1.0));
    }

    // log f = const - ||X||^2/2 with ||X||^2 chi-square_d, so
    // Var = Var(chi2_d)/4 = d/2.
    double logdensity_variance() const override { return 0.5 * d_; }

    bool has_laplacian() const override { return true; }
    double laplacian(std::span<const double> x) const override {
        return (sq_norm(x) - static_cast<double>(d_)) * std::exp(log_density(x));
    }
    bool spherically_symmetric() const override { return true; }

private:
    std::size_t d_;
    std::string name_;
};

class UniformCube final : public DensityModel {
public:
    explicit UniformCube(std::size_t d) : d_(d), name_("uniform_cube") {
        if (d < 1) throw std::invalid_argument("uniform_cube: d must be >= 1");
    }

    const std::string& name() const override { return name_; }
    std::size_t dim() const override { return d_; }

    PointCloud sample(RngStream& rng, std::size_t n) const override {
        PointCloud cloud{std::vector<double>(n * d_), n, d_};
        for (double& v : cloud.data) v = rng.uniform();
        return cloud;
    }

    double log_density(std::span<const double> x) const override {
        for (double v : x) {
            if (v < 0.0 || v > 1.0) return -std::numeric_limits<double>::infinity();
        }
        return 0.0;
    }

    double entropy() const override { return 0.0; }
    double logdensity_variance() const override { return 0.0; }

private:
    std::size_t d_;
    std::string name_;
};

class GammaModel final : public DensityModel {
public:
    explicit GammaModel(double a) : a_(a), name_("gamma") {
        if (!(a > 0.0)) throw std::invalid_argument("gamma: a must be positive");
    }

    const std::string& name() const override { return name_; }
    std::size_t dim() const override { return 1; }

    PointCloud sample(RngStream& rng, std::size_t n) const override {
        PointCloud cloud{std::vector<double>(n), n, 1};
        for (double& v : cloud.data) v = rng.gamma(a_);
        return cloud;
    }

    double log_density(std::span<const double> x) const override {
        const double v = x[0];
        if (v <= 0.0) return -std::numeric_limits<double>::infinity();
        return -log_gamma(a_) + (a_ - 1.0) * std::log(v) - v;
    }

    double entropy() const override {
        return a_ + log_gamma(a_) + (1.0 - a_) * digamma(a_);
    }

    // Var((a-1) log X - X) with Cov(log X, X) = 1 for Gamma(a,1).
    double logdensity_variance() const override {
        return (a_ - 1.0) * (a_ - 1.0) * trigamma(a_) + a_ - 2.0 * (a_ - 1.0);
    }

private:
    double a_;
    std::string name_;
};

// Multivariate t: X = Z * sqrt(rho) / chi_rho with Z standard normal.
class MultivariateT final : public DensityModel {
public:
    MultivariateT(std::size_t d, double rho) : d_(d), rho_(rho), name_("mvt") {
        if (d < 1) throw std::invalid_argument("mvt: d must be >= 1");
        if (!(rho > 0.0)) throw std::invalid_argument("mvt: rho must be positive");
        log_norm_ = log_gamma(0.5 * (rho_ + d_)) - log_gamma(0.5 * rho_) -
                    0.5 * d_ * std::log(rho_ * pi);
    }

    const std::string& name() const override { return name_; }
    std::size_t dim() const override { return d_; }

    PointCloud sample(RngStream& rng, std::size_t n) const override {
        PointCloud cloud{std::vector<double>(n * d_), n, d_};
        for (std::size_t i = 0; i < n; ++i) {
            const double scale = std::sqrt(rho_) / rng.chi(rho_);
            auto row = cloud.point(i);
            for (double& v : row) v = scale * rng.normal();
        }
        return cloud;
    }

    double log_density(std::span<const double> x) const override {
        return log_norm_ - 0.5 * (rho_ + d_) * std::log1p(sq_norm(x) / rho_);
    }

    double entropy() const override {
        const double half_sum = 0.5 * (rho_ + d_);
        return -log_norm_ + half_sum * (digamma(half_sum) - digamma(0.5 * rho_));
    }

    // log(1 + ||X||^2/rho) = -log B with B ~ Beta(rho/2, d/2).
    double logdensity_variance() const override {
        const double half_sum = 0.5 * (rho_ + d_);
        return half_sum * half_sum * (trigamma(0.5 * rho_) - trigamma(half_sum));
    }

    bool spherically_symmetric() const override { return true; }

private:
    std::size_t d_;
    double rho_;
    double log_norm_;
    std::string name_;
};

class BetaModel final : public DensityModel {
public:
    BetaModel(double a, double b) : a_(a), b_(b), name_("beta") {
        if (!(a > 0.0) || !(b > 0.0)) {
            throw std::invalid_argument("beta: a and b must be positive");
        }
        log_norm_ = log_gamma(a_ + b_) - log_gamma(a_) - log_gamma(b_);
    }

    const std::string& name() const override { return name_; }
    std::size_t dim() const override { return 1; }

    PointCloud sample(RngStream& rng, std::size_t n) const override {
        PointCloud cloud{std::vector<double>(n), n, 1};
        for (double& v : cloud.data) {
            const double g1 = rng.gamma(a_);
            const double g2 = rng.gamma(b_);
            v = g1 / (g1 + g2);
        }
        return cloud;
    }

    double log_density(std::span<const double> x) const override {
        const double v = x[0];
        if (v <= 0.0 || v >= 1.0) return -std::numeric_limits<double>::infinity();
        return log_norm_ + (a_ - 1.0) * std::log(v) + (b_ - 1.0) * std::log1p(-v);
    }

    double entropy() const override {
        return -log_norm_ - (a_ - 1.0) * digamma(a_) - (b_ - 1.0) * digamma(b_) +
               (a_ + b_ - 2.0) * digamma(a_ + b_);
    }

    double logdensity_variance() const override {
        // Var of (a-1) log X + (b-1) log(1-X) for X ~ Beta(a,b):
        // Var(log X) = psi'(a) - psi'(a+b), Var(log(1-X)) = psi'(b) - psi'(a+b),
        // Cov(log X, log(1-X)) = -psi'(a+b).
        const double am = a_ - 1.0, bm = b_ - 1.0;
        const double tab = trigamma(a_ + b_);
        return am * am * (trigamma(a_) - tab) + bm * bm * (trigamma(b_) - tab) -
               2.0 * am * bm * tab;
    }

private:
    double a_, b_;
    double log_norm_;
    std::string name_;
};

std::map<std::string, double> parse_params(const std::string& text) {
    std::map<std::string, double> params;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("make_model: expected key=value, got '" + item + "'");
        }
        try {
            params[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (const std::exception&) {
            throw std::invalid_argument("make_model: bad numeric value in '" + item + "'");
        }
    }
    return params;
}

double take(std::map<std::string, double>& params, const std::string& key) {
    const auto it = params.find(key);
    if (it == params.end()) {
        throw std::invalid_argument("make_model: missing parameter '" + key + "'");
    }
    const double v = it->second;
    params.erase(it);
    return v;
}

}  // namespace

std::unique_ptr<DensityModel> make_model(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    auto params = parse_params(colon == std::string::npos ? "" : spec.substr(colon + 1));

    std::unique_ptr<DensityModel> model;
    if (kind == "gaussian") {
        model = std::make_unique<Gaussian>(static_cast<std::size_t>(take(params, "d")));
    } else if (kind == "uniform_cube") {
        model = std::make_unique<UniformCube>(static_cast<std::size_t>(take(params, "d")));
    } else if (kind == "gamma") {
        model = std::make_unique<GammaModel>(take(params, "a"));
    } else if (kind == "mvt") {
        const auto d = static_cast<std::size_t>(take(params, "d"));
        model = std::make_unique<MultivariateT>(d, take(params, "rho"));
    } else if (kind == "beta") {
        const double a = take(params, "a");
        model = std::make_unique<BetaModel>(a, take(params, "b"));
    } else {
        throw std::invalid_argument("make_model: unknown model '" + kind + "'");
    }
    if (!params.empty()) {
        throw std::invalid_argument("make_model: unexpected parameter '" +
                                    params.begin()->first + "'");
    }
    return model;
}

double lambda1_constant(const DensityModel& model, int d) {
    if (d < 3) throw std::invalid_argument("lambda1_constant: requires d >= 3");
    if (!model.has_laplacian() || !model.spherically_symmetric()) {
        throw std::runtime_error("lambda1_constant: unsupported model (needs a "
                                 "spherically symmetric density with a Laplacian)");
    }
    if (static_cast<int>(model.dim()) != d) {
        throw std::invalid_argument("lambda1_constant: dimension mismatch");
    }

    const double vd = specfun::unit_ball_volume(d);
    const double surface = d * vd;  // surface area of the unit sphere

    std::vector<double> x(static_cast<std::size_t>(d), 0.0);
    auto radial = [&](double r) {
        x[0] = r;
        const double lap = model.laplacian(x);
        // Far in the tail the Laplacian underflows while f^{-2/d} overflows;
        // the true product vanishes, so short-circuit before forming 0 * inf.
        if (lap == 0.0) return 0.0;
        const double f_pow = std::exp(-(2.0 / d) * model.log_density(x));
        return lap * f_pow * surface * std::pow(r, d - 1);
    };

    // Integrand decays like a stretched Gaussian; [0, 60] is far past any
    // mass for the models that reach this path.
    const QuadResult q = integrate_adaptive(radial, 0.0, 60.0, 1e-10);
    if (!q.converged) {
        throw QuadratureError("lambda1_constant: radial quadrature did not converge",
                              q.value, q.error);
    }
    return -q.value / (2.0 * (d + 2.0) * std::pow(vd, 2.0 / d));
}

}  // namespace klent
