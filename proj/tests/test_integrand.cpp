#include <doctest.h>

#include <cmath>
#include <random>

#include "apv/integrand.hpp"

using namespace apv;

TEST_CASE("polynomial integrand evaluates and differentiates exactly") {
    const Integrand f = make_polynomial_integrand({0.0, 1.0});  // f(x) = x
    CHECK(f(0.5) == doctest::Approx(0.5).epsilon(0));
    CHECK(f.derivative(1)(3.0) == 1.0);
    CHECK(f.derivative(2)(3.0) == 0.0);

    const Integrand c = make_polynomial_integrand({1.0});
    CHECK(c(10.0) == 1.0);
    CHECK(c.derivative(1)(10.0) == 0.0);

    const Integrand g = make_polynomial_integrand({1.0, -1.0});
    CHECK(g(0.5) == 0.5);
}

TEST_CASE("polynomial integrand rejects an empty coefficient list") {
    CHECK_THROWS_AS(make_polynomial_integrand({}), InvalidArgumentError);
}

TEST_CASE("derivative(0) is the function itself") {
    const Integrand f = make_polynomial_integrand({1.0, 2.0, 3.0});
    for (double x : {-1.5, 0.0, 0.25, 2.0}) {
        CHECK(f.derivative(0)(x) == f(x));
    }
}

TEST_CASE("polynomial derivatives match the shifted-coefficient polynomial at random points") {
    // p(x) = 2 - x + 3x^2 + 0.5x^4, p'(x) = -1 + 6x + 2x^3
    const Integrand p = make_polynomial_integrand({2.0, -1.0, 3.0, 0.0, 0.5});
    const Integrand dp = make_polynomial_integrand({-1.0, 6.0, 0.0, 2.0});
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> pick(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        const double x = pick(rng);
        CHECK(p.derivative(1)(x) == doctest::Approx(dp(x)).epsilon(1e-15));
    }
}

TEST_CASE("finite-difference integrand approximates known derivatives") {
    const Integrand e = make_fd_integrand([](double x) { return std::exp(x); }, 3);
    CHECK(e.derivative(1)(0.0) == doctest::Approx(1.0).epsilon(1e-8));

    const Integrand s = make_fd_integrand([](double x) { return std::sin(x); }, 3);
    CHECK(std::fabs(s.derivative(2)(0.0)) <= 1e-6);

    const Integrand cube = make_fd_integrand([](double x) { return x * x * x; }, 3);
    CHECK(cube.derivative(3)(2.0) == doctest::Approx(6.0).epsilon(1e-4));
}

TEST_CASE("finite-difference integrand refuses orders beyond max_order") {
    const Integrand f = make_fd_integrand([](double x) { return x * x; }, 2);
    CHECK_THROWS_AS(f.derivative(3), UnsupportedOrderError);
    CHECK_THROWS_AS((void)f.derivative(2).derivative(1), UnsupportedOrderError);
}

TEST_CASE("halving fd_step shrinks the first-derivative error by at least 3x") {
    auto fn = [](double x) { return std::exp(std::sin(x)); };
    auto analytic = [](double x) { return std::cos(x) * std::exp(std::sin(x)); };
    for (double x : {0.3, 1.1}) {
        const double coarse =
            std::fabs(make_fd_integrand(fn, 1, 1e-2).derivative(1)(x) - analytic(x));
        const double fine =
            std::fabs(make_fd_integrand(fn, 1, 5e-3).derivative(1)(x) - analytic(x));
        CHECK(coarse >= 3.0 * fine);
    }
}

TEST_CASE("analytic chain serves its listed derivatives and no more") {
    const Integrand f = make_analytic_integrand({
        [](double x) { return std::sin(x); },
        [](double x) { return std::cos(x); },
        [](double x) { return -std::sin(x); },
    });
    CHECK(f.max_order() == 2);
    CHECK(f.derivative(2)(0.7) == doctest::Approx(-std::sin(0.7)).epsilon(1e-15));
    CHECK(f.derivative(1).max_order() == 1);
    CHECK_THROWS_AS(f.derivative(3), UnsupportedOrderError);
}

TEST_CASE("bad integrand factory arguments are rejected") {
    CHECK_THROWS_AS(make_fd_integrand([](double x) { return x; }, 0), InvalidArgumentError);
    CHECK_THROWS_AS(make_fd_integrand([](double x) { return x; }, 1, -1.0), InvalidArgumentError);
    CHECK_THROWS_AS(make_analytic_integrand({}), InvalidArgumentError);
}
