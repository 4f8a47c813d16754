#include <cmath>
#include <sstream>
#include <stdexcept>

#include <doctest.h>

#include "klent/harness.hpp"

using namespace klent;

TEST_CASE("experiment reports are deterministic for a fixed seed") {
    ExperimentConfig cfg;
    cfg.model = "gaussian:d=1";
    cfg.n = 200;
    cfg.k = 3;
    cfg.replicates = 20;
    cfg.seed = 99;
    cfg.ci_level = 0.9;

    const auto a = run_experiment(cfg);
    const auto b = run_experiment(cfg);
    CHECK(a.to_json() == b.to_json());

    cfg.seed = 100;
    const auto c = run_experiment(cfg);
    CHECK(c.mean_h != a.mean_h);
}

TEST_CASE("report internal consistency") {
    ExperimentConfig cfg;
    cfg.model = "gamma:a=2.5";
    cfg.n = 150;
    cfg.k = 2;
    cfg.replicates = 40;
    cfg.seed = 3;
    cfg.ci_level = 0.95;

    const auto rep = run_experiment(cfg);
    CHECK(rep.true_entropy == doctest::Approx(1.72994790950505).epsilon(1e-12));
    CHECK(rep.bias == doctest::Approx(rep.mean_h - rep.true_entropy).epsilon(1e-12));

    // n * MSE decomposes as n * (population variance + bias^2).
    const double m = cfg.replicates;
    const double pop_var = rep.variance * (m - 1.0) / m;
    CHECK(rep.n_mse ==
          doctest::Approx(cfg.n * (pop_var + rep.bias * rep.bias)).epsilon(1e-9));

    REQUIRE(rep.coverage.has_value());
    CHECK(*rep.coverage >= 0.0);
    CHECK(*rep.coverage <= 1.0);
    CHECK(rep.clamp_rate >= 0.0);
    CHECK(rep.resample_rate >= 0.0);
    CHECK(rep.stderr_mean > 0.0);
}

TEST_CASE("coverage is only reported when a level is requested") {
    ExperimentConfig cfg;
    cfg.model = "uniform_cube:d=1";
    cfg.n = 100;
    cfg.k = 1;
    cfg.replicates = 5;
    const auto rep = run_experiment(cfg);
    CHECK_FALSE(rep.coverage.has_value());
    CHECK_FALSE(rep.to_json().contains("coverage"));
}

TEST_CASE("config json round trip") {
    ExperimentConfig cfg;
    cfg.model = "mvt:d=2,rho=5";
    cfg.n = 500;
    cfg.k = 7;
    cfg.canonical_weights = true;
    cfg.replicates = 12;
    cfg.seed = 777;
    cfg.ci_level = 0.99;
    cfg.backend = KnnBackend::brute;

    const auto j = cfg.to_json();
    const auto back = ExperimentConfig::from_json(j);
    CHECK(back.to_json() == j);
    CHECK(back.model == cfg.model);
    CHECK(back.canonical_weights);
    CHECK(back.backend == KnnBackend::brute);

    CHECK_THROWS_AS(
        ExperimentConfig::from_json(nlohmann::json{{"model", "gaussian:d=1"}}),
        nlohmann::json::exception);
}

TEST_CASE("invalid experiment configs are rejected") {
    ExperimentConfig cfg;
    cfg.model = "gaussian:d=1";
    cfg.n = 100;
    cfg.k = 1;
    cfg.replicates = 0;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
    cfg.replicates = 1;
    cfg.k = 100;
    CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("points file parsing") {
    SUBCASE("comma separated with header") {
        std::istringstream in("x,y\n0.5,1.5\n2.0,3.0\n-1.0,0.25\n");
        const auto cloud = read_points_csv(in);
        CHECK(cloud.n == 3);
        CHECK(cloud.d == 2);
        CHECK(cloud.point(0)[1] == 1.5);
        CHECK(cloud.point(2)[0] == -1.0);
    }
    SUBCASE("whitespace separated, no header, blank lines") {
        std::istringstream in("1.0 2.0\n\n3.0 4.0\n");
        const auto cloud = read_points_csv(in);
        CHECK(cloud.n == 2);
        CHECK(cloud.d == 2);
    }
    SUBCASE("tabs") {
        std::istringstream in("1\t2\t3\n4\t5\t6\n");
        const auto cloud = read_points_csv(in);
        CHECK(cloud.n == 2);
        CHECK(cloud.d == 3);
    }
    SUBCASE("ragged rows are rejected") {
        std::istringstream in("1,2\n3\n");
        CHECK_THROWS_AS(read_points_csv(in), std::invalid_argument);
    }
    SUBCASE("non-numeric body is rejected") {
        std::istringstream in("1,2\n3,oops\n");
        CHECK_THROWS_AS(read_points_csv(in), std::invalid_argument);
    }
    SUBCASE("single point fails cloud validation") {
        std::istringstream in("1,2\n");
        CHECK_THROWS_AS(read_points_csv(in), std::invalid_argument);
    }
}
