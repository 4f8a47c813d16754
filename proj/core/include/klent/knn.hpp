#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace klent {

// n sample points in d-dimensional Euclidean space, row-major.
struct PointCloud {
    std::vector<double> data;  // n * d entries
    std::size_t n = 0;
    std::size_t d = 0;

    std::span<const double> point(std::size_t i) const {
        return {data.data() + i * d, d};
    }
    std::span<double> point(std::size_t i) {
        return {data.data() + i * d, d};
    }

    // Throws std::invalid_argument unless n >= 2, d >= 1 and all
    // coordinates are finite.
    void validate() const;
};

// Ordered distances rho[i][j] = distance from point i to its (j+1)-th
// nearest neighbour among the other points.  Rows are nondecreasing.
struct NeighbourDistances {
    std::vector<double> rho;  // n * k entries
    std::size_t n = 0;
    std::size_t k = 0;

    double operator()(std::size_t i, std::size_t j) const { return rho[i * k + j]; }
    std::span<const double> row(std::size_t i) const { return {rho.data() + i * k, k}; }
};

enum class KnnBackend { brute, tree };

// Exact k-nearest-neighbour distances for every point, the point itself
// excluded.  Ties in distance are broken by smaller original index, so both
// backends return identical matrices.
//
// Throws std::invalid_argument if k is outside [1, n-1] and
// ZeroDistanceError if any pair of points coincides.
NeighbourDistances all_knn_distances(const PointCloud& cloud, std::size_t k,
                                     KnnBackend backend = KnnBackend::tree);

}  // namespace klent
