#include <cmath>

#include <doctest.h>

#include "klent/quadrature.hpp"
#include "klent/rng.hpp"
#include "klent/specfun.hpp"

using klent::integrate_adaptive;
using klent::RngStream;

TEST_CASE("adaptive quadrature on closed-form integrals") {
    auto sq = [](double x) { return x * x; };
    auto r1 = integrate_adaptive(sq, 0.0, 1.0, 1e-12);
    CHECK(r1.converged);
    CHECK(r1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

    auto r2 = integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                                 klent::specfun::pi, 1e-12);
    CHECK(r2.converged);
    CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-12));

    // Interior kink: int_0^1 sqrt(|x - 1/3|) dx = ((2/3)^1.5 + (1/3)^1.5)*2/3.
    auto r3 = integrate_adaptive(
        [](double x) { return std::sqrt(std::fabs(x - 1.0 / 3.0)); }, 0.0, 1.0, 1e-10);
    const double exact =
        2.0 / 3.0 * (std::pow(2.0 / 3.0, 1.5) + std::pow(1.0 / 3.0, 1.5));
    CHECK(r3.converged);
    CHECK(r3.value == doctest::Approx(exact).epsilon(1e-9));
    CHECK(r3.error <= 1e-10);

    // Rapid decay over a long interval.
    auto r4 = integrate_adaptive([](double x) { return std::exp(-x); }, 0.0, 60.0, 1e-11);
    CHECK(r4.converged);
    CHECK(r4.value == doctest::Approx(1.0).epsilon(1e-11));

    auto r5 = integrate_adaptive(sq, 2.0, 2.0, 1e-12);
    CHECK(r5.value == 0.0);
}

TEST_CASE("rng streams are deterministic and decorrelated") {
    RngStream a(12345, 7), b(12345, 7), c(12345, 8);
    bool identical = true, distinct = false;
    for (int i = 0; i < 1000; ++i) {
        const double ua = a.uniform(), ub = b.uniform(), uc = c.uniform();
        identical = identical && (ua == ub);
        distinct = distinct || (ua != uc);
        CHECK(ua >= 0.0);
        CHECK(ua < 1.0);
    }
    CHECK(identical);
    CHECK(distinct);
}

TEST_CASE("rng moments: uniform, normal, gamma, chi") {
    RngStream rng(2024, 0);
    const int n = 200000;
    double su = 0, su2 = 0, sn = 0, sn2 = 0, sg = 0, sc2 = 0;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform();
        su += u;
        su2 += u * u;
        const double z = rng.normal();
        sn += z;
        sn2 += z * z;
        sg += rng.gamma(2.5);
        const double x = rng.chi(3.0);
        sc2 += x * x;
    }
    CHECK(su / n == doctest::Approx(0.5).epsilon(2e-3));
    CHECK(su2 / n - 0.25 == doctest::Approx(1.0 / 12.0).epsilon(1e-2));
    CHECK(std::fabs(sn / n) < 1e-2);
    CHECK(sn2 / n == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(sg / n == doctest::Approx(2.5).epsilon(5e-3));     // E Gamma(a,1) = a
    CHECK(sc2 / n == doctest::Approx(3.0).epsilon(1e-2));    // E chi_3^2 = 3
}

TEST_CASE("gamma sampling with shape below one") {
    RngStream rng(5, 1);
    const int n = 100000;
    double s = 0;
    for (int i = 0; i < n; ++i) s += rng.gamma(0.5);
    CHECK(s / n == doctest::Approx(0.5).epsilon(2e-2));
}
