#pragma once

#include <memory>
#include <span>
#include <string>

#include "klent/knn.hpp"
#include "klent/rng.hpp"

namespace klent {

// A reference distribution with a sampler, log-density and closed-form
// entropy H(f) and asymptotic variance V(f) = Var log f(X), used as ground
// truth in simulation studies.
class DensityModel {
public:
    virtual ~DensityModel() = default;

    virtual const std::string& name() const = 0;
    virtual std::size_t dim() const = 0;

    // Draw n i.i.d. points into a PointCloud using the caller's stream.
    virtual PointCloud sample(RngStream& rng, std::size_t n) const = 0;

    virtual double log_density(std::span<const double> x) const = 0;
    virtual double entropy() const = 0;
    virtual double logdensity_variance() const = 0;

    // Laplacian of the density (not of log f); only some models provide it.
    virtual bool has_laplacian() const { return false; }
    virtual double laplacian(std::span<const double> x) const;

    // True when f(x) depends on x only through ||x||; enables radial
    // reduction of integrals over R^d.
    virtual bool spherically_symmetric() const { return false; }
};

// Parse a model spec string: "gaussian:d=3", "uniform_cube:d=2",
// "gamma:a=2.5", "mvt:d=2,rho=5", "beta:a=2,b=3".
// Throws std::invalid_argument on malformed specs or bad parameters.
std::unique_ptr<DensityModel> make_model(const std::string& spec);

// The leading bias constant
//   lambda_1 = -1/(2(d+2) V_d^{2/d}) * integral of Laplacian(f)/f^{2/d},
// evaluated by adaptive radial quadrature.  Requires d >= 3, a model with a
// Laplacian, and spherical symmetry for the radial reduction.
double lambda1_constant(const DensityModel& model, int d);

}  // namespace klent
