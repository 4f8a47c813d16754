#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace klent {

// Thrown when a sample contains coincident points: rho_(1),i == 0 makes
// log xi undefined, so the caller has to deduplicate instead of getting
// a silent -inf.
class ZeroDistanceError : public std::runtime_error {
public:
    explicit ZeroDistanceError(std::vector<std::pair<std::size_t, std::size_t>> pairs)
        : std::runtime_error("duplicate points: " + std::to_string(pairs.size()) +
                             " zero-distance pair(s)"),
          pairs_(std::move(pairs)) {}

    // Offending (i, j) index pairs, i < j.
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs() const { return pairs_; }

private:
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
};

// Weight system A^(k) too close to singular, i.e. k is below the usable
// threshold for this dimension.
class IllConditionedError : public std::runtime_error {
public:
    IllConditionedError(const std::string& msg, double condition)
        : std::runtime_error(msg), condition_(condition) {}
    double condition() const { return condition_; }

private:
    double condition_;
};

// Adaptive quadrature failed to reach the requested tolerance; carries the
// best available estimate and its error bound.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& msg, double estimate, double error_bound)
        : std::runtime_error(msg), estimate_(estimate), error_bound_(error_bound) {}
    double estimate() const { return estimate_; }
    double error_bound() const { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

}  // namespace klent
