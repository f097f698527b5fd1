#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "spfem/mesh.hpp"
#include "spfem/problem.hpp"

using namespace spfem;

TEST_CASE("example 5.1 coefficients") {
    const ProblemSpec p = example_5_1(1e-6);
    CHECK(p.f(1.0, 1.0) == doctest::Approx(1.0 / 3.0));
    for (double y : {-1.0, -0.3, 0.0, 0.7, 1.0}) CHECK(p.b1(0.0, y) == 0.0);
    CHECK(p.c(0.0, 0.0) == 3.0);
    CHECK(p.alpha == 2.0);
    CHECK(p.beta == 1.0);
    CHECK_FALSE(p.exact.has_value());
}

TEST_CASE("example 5.1 satisfies |a| >= 1 and c - b1_x / 2 > 0 on a 101x101 grid") {
    for (int j = 0; j <= 100; ++j) {
        for (int i = 0; i <= 100; ++i) {
            const double x = -1.0 + 0.02 * i, y = -1.0 + 0.02 * j;
            const double a = x * x + std::exp(1.0 + x * y);
            CHECK(a >= 1.0);
            CHECK(example51::c(x, y) - 0.5 * example51::db1_dx(x, y) > 0.0);
        }
    }
}

TEST_CASE("analytic d(b1)/dx agrees with central differences") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double h = 1e-5;
    for (int k = 0; k < 50; ++k) {
        const double x = u(rng), y = u(rng);
        const double fd = (example51::b1(x + h, y) - example51::b1(x - h, y)) / (2 * h);
        CHECK(example51::db1_dx(x, y) == doctest::Approx(fd).epsilon(1e-8));
    }
}

TEST_CASE("mms problem: boundary values and peak") {
    const ProblemSpec p = mms_problem(1.0);
    REQUIRE(p.exact.has_value());
    for (double s : {-1.0, -0.4, 0.0, 0.25, 1.0}) {
        CHECK(std::abs(p.exact->u(-1.0, s)) < 1e-15);
        CHECK(std::abs(p.exact->u(1.0, s)) < 1e-15);
        CHECK(std::abs(p.exact->u(s, -1.0)) < 1e-15);
        CHECK(std::abs(p.exact->u(s, 1.0)) < 1e-15);
    }
    CHECK(p.exact->u(0.5, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("mms source equals a finite-difference application of the operator") {
    // -eps Lap(u) + b1 u_x + c u with second-order central differences.
    for (double eps : {1.0, 1e-3}) {
        const ProblemSpec p = mms_problem(eps);
        const auto& u = p.exact->u;
        const double h = 1e-4;
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> d(-0.99, 0.99);
        for (int k = 0; k < 20; ++k) {
            const double x = d(rng), y = d(rng);
            const double c0 = u(x, y);
            const double lap = (u(x + h, y) + u(x - h, y) + u(x, y + h) + u(x, y - h) - 4 * c0) / (h * h);
            const double ux = (u(x + h, y) - u(x - h, y)) / (2 * h);
            const double Lu = -eps * lap + p.b1(x, y) * ux + p.c(x, y) * c0;
            CHECK(std::abs(Lu - p.f(x, y)) <= 1e-6);
        }
    }
}

TEST_CASE("layer templates") {
    const double eps = 1e-6, alpha = 2.0, beta = 1.0;
    const LayerTemplate ix = layer_template(LayerKind::InteriorX, eps, alpha, beta);
    CHECK(ix(0.0, 0.0) == 1.0);
    const double lx = 2.0 * eps / alpha * std::log(1.0 / eps);
    CHECK(ix(lx, 0.0) == doctest::Approx(eps * eps).epsilon(1e-10));
    CHECK(ix(-lx, 0.0) == doctest::Approx(eps * eps).epsilon(1e-10));

    const LayerTemplate by = layer_template(LayerKind::BoundaryY, eps, alpha, beta);
    CHECK(by(0.0, 1.0) == doctest::Approx(1.0 + std::exp(-2.0 * beta / std::sqrt(eps))));
    CHECK(by(0.0, 0.0) < 1e-200);

    const LayerTemplate sm = layer_template(LayerKind::Smooth, eps, alpha, beta);
    CHECK(sm(0.0, 0.0) == 1.0);
    CHECK(sm(1.0, 0.3) == 0.0);

    const LayerTemplate cxy = layer_template(LayerKind::CornerXY, eps, alpha, beta);
    CHECK(cxy(0.0, -1.0) == doctest::Approx(1.0));

    CHECK(layer_kind_from_name("interior_x") == LayerKind::InteriorX);
    CHECK_THROWS_AS(layer_kind_from_name("wedge"), std::invalid_argument);
    CHECK_THROWS_AS(layer_template(static_cast<LayerKind>(42), eps, alpha, beta),
                    std::invalid_argument);
}

TEST_CASE("invalid problem parameters") {
    CHECK_THROWS_AS(example_5_1(0.0), std::invalid_argument);
    CHECK_THROWS_AS(example_5_1(1.0), std::invalid_argument);
    CHECK_THROWS_AS(mms_problem(1.5), std::invalid_argument);
    CHECK_NOTHROW(mms_problem(1.0));
}
