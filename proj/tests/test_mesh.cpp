#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "spfem/mesh.hpp"

using namespace spfem;

TEST_CASE("transition_params matches high-precision evaluation") {
    // Reference values from a 30-digit evaluation of the two formulas.
    auto p = transition_params(1e-6, 2.0, 1.0);
    CHECK(p.lambda_x == doctest::Approx(1.38155105579642741e-5).epsilon(1e-13));
    CHECK(p.lambda_y == doctest::Approx(4.14465316738928223e-2).epsilon(1e-13));

    p = transition_params(0.3, 0.5, 1.0);
    CHECK(p.lambda_x == 0.5);  // 1.2 ln(1/0.3) ~ 1.445 is capped
    CHECK(p.lambda_y == 0.25);

    p = transition_params(1e-9, 2.0, 1.0);
    CHECK(p.lambda_x == doctest::Approx(2.07232658369464112e-8).epsilon(1e-13));
    CHECK(p.lambda_y == doctest::Approx(1.96598161805718625e-3).epsilon(1e-13));
}

TEST_CASE("transition_params rejects eps outside (0,1)") {
    CHECK_THROWS_AS(transition_params(1.0, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(transition_params(0.0, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(transition_params(-1e-3, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(transition_params(1e-3, 0.0, 1.0), std::domain_error);
}

TEST_CASE("build_x_axis hand-evaluated grids") {
    const MeshAxis a = build_x_axis(4, 0.1);
    const std::vector<double> expected{-1, -0.55, -0.1, -0.05, 0, 0.05, 0.1, 0.55, 1};
    REQUIRE(a.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) CHECK(a[i] == doctest::Approx(expected[i]));

    const MeshAxis u = build_x_axis(4, 0.5);
    for (std::size_t i = 0; i + 1 < u.size(); ++i) {
        CHECK(u[i + 1] - u[i] == doctest::Approx(0.25));
    }

    const MeshAxis b = build_x_axis(8, 0.1);
    REQUIRE(b.size() == 17);
    CHECK(b[8 + 4] == 0.1);
    CHECK(b[8 + 4] - b[8 + 3] == doctest::Approx(0.025));  // 2 lambda_x / N
    CHECK(b[8 + 5] - b[8 + 4] == doctest::Approx(0.225));
}

TEST_CASE("build_x_axis rejects odd or small N") {
    CHECK_THROWS_AS(build_x_axis(5, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(build_x_axis(2, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(build_x_axis(8, 0.0), std::invalid_argument);
}

TEST_CASE("build_y_axis hand-evaluated grids") {
    const MeshAxis a = build_y_axis(4, 0.25);
    const std::vector<double> ea{-1, -0.75, 0, 0.75, 1};
    REQUIRE(a.size() == ea.size());
    for (std::size_t i = 0; i < ea.size(); ++i) CHECK(a[i] == doctest::Approx(ea[i]));
    CHECK(a[3] == 0.75);

    const MeshAxis b = build_y_axis(8, 0.2);
    const std::vector<double> eb{-1, -0.9, -0.8, -0.4, 0, 0.4, 0.8, 0.9, 1};
    REQUIRE(b.size() == eb.size());
    for (std::size_t i = 0; i < eb.size(); ++i) CHECK(b[i] == doctest::Approx(eb[i]).epsilon(1e-14));

    CHECK_THROWS_AS(build_y_axis(6, 0.2), std::invalid_argument);
}

TEST_CASE("classify examples and tie-breaking") {
    CHECK(classify(0.5, 0.0, 0.1, 0.2) == Region::Coarse);
    CHECK(classify(0.05, 0.95, 0.1, 0.2) == Region::LayerXY);
    CHECK(classify(-0.05, 0.0, 0.1, 0.2) == Region::LayerX);
    CHECK(classify(0.5, -0.9, 0.1, 0.2) == Region::LayerY);
    // Interface points belong to the layer side.
    CHECK(classify(0.1, 0.0, 0.1, 0.2) == Region::LayerX);
    CHECK(classify(0.5, 0.8, 0.1, 0.2) == Region::LayerY);
    CHECK(classify(-0.1, -0.8, 0.1, 0.2) == Region::LayerXY);
    CHECK_THROWS_AS(classify(1.01, 0.0, 0.1, 0.2), std::domain_error);
}

TEST_CASE("shishkin meshes are nested, symmetric and have the stated widths") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> log_eps(-10.0, -1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double eps = std::pow(10.0, log_eps(rng));
        const auto lam = transition_params(eps, 2.0, 1.0);
        for (int N : {8, 16, 32}) {
            const TensorMesh coarse = TensorMesh::shishkin(N, lam);
            const TensorMesh fine = TensorMesh::shishkin(2 * N, lam);
            CHECK(coarse.node_count() == (2 * N + 1) * (N + 1));
            for (std::size_t i = 0; i < coarse.nx_nodes(); ++i) {
                CHECK(std::abs(coarse.x_axis()[i] - fine.x_axis()[2 * i]) <= 1e-12);
                CHECK(coarse.x_axis()[i] == -coarse.x_axis()[coarse.nx_nodes() - 1 - i]);
            }
            for (std::size_t j = 0; j < coarse.ny_nodes(); ++j) {
                CHECK(std::abs(coarse.y_axis()[j] - fine.y_axis()[2 * j]) <= 1e-12);
            }

            const auto& x = coarse.x_axis();
            const std::size_t mid = static_cast<std::size_t>(N);
            const double hx = 2.0 * lam.lambda_x / N, Hx = 2.0 * (1.0 - lam.lambda_x) / N;
            for (int k = 0; k < N / 2; ++k) {
                CHECK(x[mid + k + 1] - x[mid + k] == doctest::Approx(hx).epsilon(1e-9));
                CHECK(x[mid + N / 2 + k + 1] - x[mid + N / 2 + k] == doctest::Approx(Hx).epsilon(1e-9));
            }
            const auto& y = coarse.y_axis();
            const double hy = 4.0 * lam.lambda_y / N, Hy = 4.0 * (1.0 - lam.lambda_y) / N;
            for (int k = 0; k < N / 4; ++k) {
                CHECK(y[k + 1] - y[k] == doctest::Approx(hy).epsilon(1e-9));
                CHECK(y[3 * N / 4 + k + 1] - y[3 * N / 4 + k] == doctest::Approx(hy).epsilon(1e-9));
            }
            for (int k = N / 4; k < 3 * N / 4; ++k) {
                CHECK(y[k + 1] - y[k] == doctest::Approx(Hy).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("axes are strictly increasing from -1 to 1") {
    for (double eps : {0.5, 1e-3, 1e-9}) {
        const auto lam = transition_params(eps, 2.0, 1.0);
        for (const MeshAxis& a : {build_x_axis(16, lam.lambda_x), build_y_axis(16, lam.lambda_y)}) {
            CHECK(a.nodes.front() == -1.0);
            CHECK(a.nodes.back() == 1.0);
            for (std::size_t i = 0; i + 1 < a.size(); ++i) CHECK(a[i] < a[i + 1]);
        }
    }
}

TEST_CASE("classify is even in x and y; cells never straddle a transition line") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        const double x = u(rng), y = u(rng);
        const Region r = classify(x, y, 0.1, 0.2);
        CHECK(classify(-x, y, 0.1, 0.2) == r);
        CHECK(classify(x, -y, 0.1, 0.2) == r);
    }

    const auto lam = transition_params(1e-6, 2.0, 1.0);
    const TensorMesh mesh = TensorMesh::shishkin(16, lam);
    std::array<int, 4> seen{};
    for (std::size_t cj = 0; cj < mesh.ny_cells(); ++cj) {
        for (std::size_t ci = 0; ci < mesh.nx_cells(); ++ci) {
            const Region r = mesh.cell_region(ci, cj);
            ++seen[static_cast<int>(r)];
            const double x0 = mesh.x_axis()[ci], x1 = mesh.x_axis()[ci + 1];
            const double y0 = mesh.y_axis()[cj], y1 = mesh.y_axis()[cj + 1];
            auto inside = [](double a, double b, double v) { return a < v && v < b; };
            const bool x_straddles =
                inside(x0, x1, lam.lambda_x) || inside(x0, x1, -lam.lambda_x);
            const bool y_straddles =
                inside(y0, y1, 1 - lam.lambda_y) || inside(y0, y1, -1 + lam.lambda_y);
            CHECK_FALSE(x_straddles);
            CHECK_FALSE(y_straddles);
        }
    }
    for (int c : seen) CHECK(c > 0);
}

TEST_CASE("locate finds the containing interval") {
    const MeshAxis a = build_y_axis(8, 0.2);
    CHECK(TensorMesh::locate(a, -1.0) == 0);
    CHECK(TensorMesh::locate(a, -0.85) == 1);
    CHECK(TensorMesh::locate(a, 0.0) == 4);
    CHECK(TensorMesh::locate(a, 1.0) == 7);
}
