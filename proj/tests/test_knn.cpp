#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "klent/errors.hpp"
#include "klent/knn.hpp"
#include "klent/rng.hpp"

using namespace klent;

namespace {

PointCloud make_cloud(std::vector<double> data, std::size_t d) {
    PointCloud c;
    c.d = d;
    c.n = data.size() / d;
    c.data = std::move(data);
    return c;
}

PointCloud random_cloud(std::size_t n, std::size_t d, std::uint64_t seed) {
    RngStream rng(seed, 0);
    PointCloud c;
    c.n = n;
    c.d = d;
    c.data.resize(n * d);
    for (auto& x : c.data) x = rng.normal();
    return c;
}

}  // namespace

TEST_CASE("hand example on the line") {
    // Points 0, 1, 3: neighbour distances are {1,3}, {1,2}, {2,3}.
    const auto cloud = make_cloud({0.0, 1.0, 3.0}, 1);
    for (auto backend : {KnnBackend::brute, KnnBackend::tree}) {
        const auto nd = all_knn_distances(cloud, 2, backend);
        CHECK(nd(0, 0) == 1.0);
        CHECK(nd(0, 1) == 3.0);
        CHECK(nd(1, 0) == 1.0);
        CHECK(nd(1, 1) == 2.0);
        CHECK(nd(2, 0) == 2.0);
        CHECK(nd(2, 1) == 3.0);
    }
}

TEST_CASE("hand example in the plane with a distance tie") {
    // Unit square: each corner has two neighbours at 1 and one at sqrt(2).
    const auto cloud = make_cloud({0, 0, 1, 0, 0, 1, 1, 1}, 2);
    for (auto backend : {KnnBackend::brute, KnnBackend::tree}) {
        const auto nd = all_knn_distances(cloud, 3, backend);
        for (std::size_t i = 0; i < 4; ++i) {
            CHECK(nd(i, 0) == 1.0);
            CHECK(nd(i, 1) == 1.0);
            CHECK(nd(i, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
        }
    }
}

TEST_CASE("tree and brute force agree exactly on random clouds") {
    for (std::size_t d : {1u, 2u, 5u, 10u}) {
        const auto cloud = random_cloud(500, d, 77 + d);
        const auto a = all_knn_distances(cloud, 7, KnnBackend::brute);
        const auto b = all_knn_distances(cloud, 7, KnnBackend::tree);
        REQUIRE(a.rho.size() == b.rho.size());
        bool same = true;
        for (std::size_t i = 0; i < a.rho.size(); ++i) same = same && (a.rho[i] == b.rho[i]);
        CHECK(same);
    }
}

TEST_CASE("rows are nondecreasing") {
    const auto cloud = random_cloud(200, 3, 5);
    const auto nd = all_knn_distances(cloud, 20, KnnBackend::tree);
    for (std::size_t i = 0; i < nd.n; ++i) {
        for (std::size_t j = 1; j < nd.k; ++j) {
            CHECK(nd(i, j) >= nd(i, j - 1));
        }
    }
}

TEST_CASE("coincident points raise ZeroDistanceError with the offending pairs") {
    const auto cloud = make_cloud({0.0, 1.0, 1.0, 4.0}, 1);
    for (auto backend : {KnnBackend::brute, KnnBackend::tree}) {
        try {
            all_knn_distances(cloud, 1, backend);
            FAIL("expected ZeroDistanceError");
        } catch (const ZeroDistanceError& e) {
            REQUIRE(e.pairs().size() == 1);
            CHECK(e.pairs()[0].first == 1);
            CHECK(e.pairs()[0].second == 2);
        }
    }
}

TEST_CASE("argument validation") {
    const auto cloud = make_cloud({0.0, 1.0, 3.0}, 1);
    CHECK_THROWS_AS(all_knn_distances(cloud, 0), std::invalid_argument);
    CHECK_THROWS_AS(all_knn_distances(cloud, 3), std::invalid_argument);

    PointCloud bad = make_cloud({0.0, std::nan(""), 3.0}, 1);
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    PointCloud tiny = make_cloud({0.0}, 1);
    CHECK_THROWS_AS(tiny.validate(), std::invalid_argument);
}

TEST_CASE("distances are euclidean") {
    const auto cloud = make_cloud({0, 0, 3, 4}, 2);
    const auto nd = all_knn_distances(cloud, 1, KnnBackend::brute);
    CHECK(nd(0, 0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(nd(1, 0) == doctest::Approx(5.0).epsilon(1e-15));
}
