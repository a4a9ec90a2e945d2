#include <doctest.h>

#include <cmath>
#include <numbers>

#include "apv/quadrature.hpp"

using namespace apv;

TEST_CASE("integrate reproduces antiderivative values") {
    const QuadResult q = integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-10);
    CHECK(q.value == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(std::fabs(q.value - 1.0 / 3.0) <= std::max(1e-10, q.abs_error_estimate));
    CHECK(q.evaluations >= 15);

    const QuadResult arc = integrate([](double x) { return 1.0 / (x * x + 1.0); }, 0.0, 1.0, 1e-12);
    CHECK(arc.value == doctest::Approx(std::numbers::pi / 4.0).epsilon(1e-12));
}

TEST_CASE("empty interval integrates to zero") {
    const QuadResult q = integrate([](double) { return 1.0; }, 2.0, 2.0, 1e-10);
    CHECK(q.value == 0.0);
    CHECK(q.abs_error_estimate == 0.0);
}

TEST_CASE("reversed bounds are rejected") {
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0, 1e-10), InvalidArgumentError);
    CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, 0.0), InvalidArgumentError);
}

TEST_CASE("an unreachable tolerance exhausts the budget with the best estimate attached") {
    try {
        integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-300);
        FAIL("expected AccuracyError");
    } catch (const AccuracyError& e) {
        CHECK(e.best_value() == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
        CHECK(e.error_estimate() > 0.0);
    }
}

TEST_CASE("apv_direct closed forms") {
    const Integrand one = make_polynomial_integrand({1.0});
    const Integrand ident = make_polynomial_integrand({0.0, 1.0});

    SUBCASE("odd kernel integrates to zero for any rho") {
        const PoleProblem p(-1.0, 1.0, 0.0, 1, one);
        for (double r : {0.5, 0.1, 0.01}) {
            CHECK(std::fabs(apv_direct(p, Rho(r), 1e-12).value) <= 1e-12);
        }
    }

    SUBCASE("f(x) = x over a simple pole leaves the punctured length") {
        const PoleProblem p(-1.0, 1.0, 0.0, 1, ident);
        CHECK(apv_direct(p, Rho(0.1), 1e-12).value == doctest::Approx(1.8).epsilon(1e-13));
    }

    SUBCASE("double pole of a constant") {
        const PoleProblem p(-1.0, 1.0, 0.0, 2, one);
        CHECK(apv_direct(p, Rho(0.1), 1e-12).value == doctest::Approx(18.0).epsilon(1e-13));
    }
}

TEST_CASE("apv_direct rejects a puncture that leaves the interval") {
    const PoleProblem p(-1.0, 1.0, 0.5, 1, make_polynomial_integrand({1.0}));
    CHECK_THROWS_AS(apv_direct(p, Rho(0.5), 1e-10), InvalidArgumentError);
    CHECK_THROWS_AS(apv_direct(p, Rho(0.7), 1e-10), InvalidArgumentError);
}

TEST_CASE("apv_direct equals the sum of the two side integrals") {
    const Integrand f = make_polynomial_integrand({1.0, 2.0, -1.0});
    const PoleProblem p(-1.0, 2.0, 0.3, 2, f);
    const double rho = 0.05;
    const ApvResult whole = apv_direct(p, Rho(rho), 1e-11);
    auto kernel = [&](double x) { return f(x) / std::pow(x - 0.3, 2); };
    const QuadResult left = integrate(kernel, -1.0, 0.3 - rho, 1e-11);
    const QuadResult right = integrate(kernel, 0.3 + rho, 2.0, 1e-11);
    CHECK(std::fabs(whole.value - (left.value + right.value)) <=
          whole.abs_error_estimate + left.abs_error_estimate + right.abs_error_estimate + 1e-12);
}

TEST_CASE("even-order pole of a positive integrand blows up monotonically as rho shrinks") {
    const PoleProblem p(-1.0, 1.0, 0.0, 2, make_polynomial_integrand({1.0}));
    double previous = apv_direct(p, Rho(0.4), 1e-10).value;
    for (double r : {0.2, 0.1, 0.05, 0.025}) {
        const double current = apv_direct(p, Rho(r), 1e-10).value;
        CHECK(current > previous);
        previous = current;
    }
}

TEST_CASE("simple-pole values converge linearly in rho") {
    const Integrand f = make_analytic_integrand({[](double x) { return std::exp(x); }});
    const PoleProblem p(-1.0, 1.0, 0.0, 1, f);
    // apv(rho) - apv(rho/2) ~ -f'(0) rho: ratios of successive gaps approach 2.
    const double v1 = apv_direct(p, Rho(0.2), 1e-12).value;
    const double v2 = apv_direct(p, Rho(0.1), 1e-12).value;
    const double v3 = apv_direct(p, Rho(0.05), 1e-12).value;
    const double v4 = apv_direct(p, Rho(0.025), 1e-12).value;
    const double g1 = std::fabs(v1 - v2);
    const double g2 = std::fabs(v2 - v3);
    const double g3 = std::fabs(v3 - v4);
    CHECK(g1 / g2 == doctest::Approx(2.0).epsilon(0.05));
    CHECK(g2 / g3 == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("apv_rho_curve matches pointwise evaluation and keeps going past bad entries") {
    const PoleProblem p(-1.0, 1.0, 0.0, 2, make_polynomial_integrand({1.0}));

    SUBCASE("closed-form values") {
        const auto curve = apv_rho_curve(p, {0.1, 0.05}, 1e-12);
        REQUIRE(curve.size() == 2);
        REQUIRE(curve[0].result.has_value());
        REQUIRE(curve[1].result.has_value());
        CHECK(curve[0].result->value == doctest::Approx(18.0).epsilon(1e-12));
        CHECK(curve[1].result->value == doctest::Approx(38.0).epsilon(1e-12));
    }

    SUBCASE("empty grid gives an empty curve") {
        CHECK(apv_rho_curve(p, {}, 1e-10).empty());
    }

    SUBCASE("invalid entries are reported per item") {
        const auto curve = apv_rho_curve(p, {0.1, 1.5, -0.2, 0.05}, 1e-10);
        REQUIRE(curve.size() == 4);
        CHECK(curve[0].result.has_value());
        CHECK_FALSE(curve[1].result.has_value());
        CHECK_FALSE(curve[2].result.has_value());
        CHECK_FALSE(curve[1].error.empty());
        CHECK(curve[3].result.has_value());
    }
}

TEST_CASE("apv_rho_curve on the mirror-shaped double pole approaches its known expansion") {
    const apv::expr::ExprAst ast = apv::expr::parse("(1 - x) / (x + s)^2", {"s"});
    const PoleProblem p(0.0, 1.0, 0.5, 2, apv::expr::to_integrand(ast, {{"s", 0.5}}));
    const auto curve = apv_rho_curve(p, {1e-3}, 1e-10);
    REQUIRE(curve.size() == 1);
    REQUIRE(curve[0].result.has_value());
    // log((1+s)/(1-s))^2 / (8 s^3) + (1-s)/(2 s^2 rho) = ln 9 + 1000 up to O(rho)
    CHECK(curve[0].result->value == doctest::Approx(std::log(9.0) + 1000.0).epsilon(5e-5));
}
