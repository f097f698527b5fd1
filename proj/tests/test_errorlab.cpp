#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "spfem/errorlab.hpp"

using namespace spfem;

TEST_CASE("bilinear_interp") {
    const TensorMesh mesh = TensorMesh::shishkin(8, transition_params(1e-3, 2.0, 1.0));
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> vals(mesh.node_count());
    for (double& v : vals) v = u(rng);
    const FeField f(mesh, vals);
    for (std::size_t j = 0; j < mesh.ny_nodes(); ++j) {
        for (std::size_t i = 0; i < mesh.nx_nodes(); ++i) {
            CHECK(bilinear_interp(f, mesh.x_axis()[i], mesh.y_axis()[j]) == f.at(i, j));
        }
    }

    MeshAxis ax;
    ax.nodes = {-1.0, 0.0, 1.0};
    const TensorMesh three(ax, ax);
    std::vector<double> corners(9, 0.0);
    corners[three.node_index(2, 2)] = 4.0;
    CHECK(bilinear_interp(FeField(three, corners), 0.5, 0.5) == doctest::Approx(1.0));

    const FeField lin = FeField::interpolate(mesh, [](double x, double y) { return x + 2 * y; });
    for (int k = 0; k < 50; ++k) {
        const double x = u(rng), y = u(rng);
        CHECK(std::abs(bilinear_interp(lin, x, y) - (x + 2 * y)) <= 1e-12);
    }
    CHECK_THROWS_AS(bilinear_interp(lin, 1.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(bilinear_interp(lin, 0.0, -1.01), std::domain_error);
}

TEST_CASE("nodal comparison requires nested meshes") {
    const ProblemSpec spec = example_5_1(1e-5);
    const TensorMesh m16 = mesh_for(spec, 16), m32 = mesh_for(spec, 32);
    CHECK(is_nested(m16, m32));
    CHECK_FALSE(is_nested(m32, m16));
    const TensorMesh other = mesh_for(example_5_1(1e-6), 32);
    CHECK_FALSE(is_nested(m16, other));

    const FeSolution s = solve_problem(spec, m16);
    for (double e : nodal_difference(s.field, s.field)) CHECK(e == 0.0);
    CHECK_THROWS_AS(nodal_difference(s.field, solve_problem(example_5_1(1e-6), other).field),
                    std::invalid_argument);
}

TEST_CASE("convergence_rate") {
    CHECK(convergence_rate(0.04, 0.02) == doctest::Approx(1.0));
    CHECK(convergence_rate(1.270e-2, 6.766e-3) == doctest::Approx(0.9083).epsilon(1e-3));
    CHECK(std::abs(convergence_rate(0.09021, 0.09552) - (-0.0825)) <= 1e-3);
    CHECK_THROWS_AS(convergence_rate(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(convergence_rate(0.1, -1.0), std::invalid_argument);
}

TEST_CASE("error table layout and single-solve reuse") {
    const std::vector<double> eps{1e-5, 1e-6};
    const std::vector<int> Ns{8, 16};
    const ErrorTable t = error_table([](double e) { return example_5_1(e); }, eps, Ns);
    CHECK(t.errors.size() == eps.size() * Ns.size() * 4);
    CHECK(t.rates.size() == eps.size() * 1 * 4);
    for (const ErrorRow& r : t.errors) CHECK(r.error >= 0.0);

    const RegionValues direct = double_mesh_error(example_5_1(1e-6), 8);
    for (Region r : kAllRegions) CHECK(*t.error(1e-6, 8, r) == at(direct, r));
    CHECK_FALSE(t.error(1e-7, 8, Region::Coarse).has_value());

    StudyOptions threaded;
    threaded.threads = 2;
    const ErrorTable t2 = error_table([](double e) { return example_5_1(e); }, eps, Ns, threaded);
    REQUIRE(t2.errors.size() == t.errors.size());
    for (std::size_t k = 0; k < t.errors.size(); ++k) CHECK(t2.errors[k].error == t.errors[k].error);
}

TEST_CASE("interpolation study: smooth template is second order in the coarse region") {
    const LayerTemplate s = layer_template(LayerKind::Smooth, 1e-6, 2.0, 1.0);
    const auto e = interp_error_study(s, 1e-6, 2.0, 1.0, {32, 64});
    CHECK(convergence_rate(at(e[0], Region::Coarse), at(e[1], Region::Coarse)) >= 1.8);
}

TEST_CASE("interpolation study: interior layer obeys N^-2 log^2 N") {
    const double eps = 1e-6;
    const LayerTemplate t = layer_template(LayerKind::InteriorX, eps, 2.0, 1.0);
    const std::vector<int> Ns{16, 32, 64, 128};
    const auto e = interp_error_study(t, eps, 2.0, 1.0, Ns);
    auto bound = [](int N) { return std::pow(std::log(N), 2) / (double(N) * N); };
    const double C = at(e[0], Region::LayerX) / bound(16);
    for (std::size_t k = 1; k < Ns.size(); ++k) {
        CHECK(at(e[k], Region::LayerX) <= 1.3 * C * bound(Ns[k]));
    }
}

TEST_CASE("interpolation study: constants are reproduced exactly") {
    const LayerTemplate c = layer_template(LayerKind::Constant, 1e-6, 2.0, 1.0);
    for (const RegionValues& v : interp_error_study(c, 1e-6, 2.0, 1.0, {16, 32})) {
        for (double e : v) CHECK(e == 0.0);
    }
}

TEST_CASE("5x5 and 9x9 sampling for the interior layer") {
    const double eps = 1e-6;
    const LayerTemplate t = layer_template(LayerKind::InteriorX, eps, 2.0, 1.0);
    const std::vector<int> Ns{16, 32, 64, 128};
    const auto e5 = interp_error_study(t, eps, 2.0, 1.0, Ns, 5);
    const auto e9 = interp_error_study(t, eps, 2.0, 1.0, Ns, 9);
    for (std::size_t k = 0; k < Ns.size(); ++k) {
        const double a = at(e5[k], Region::LayerX), b = at(e9[k], Region::LayerX);
        CHECK(a <= b);  // the 5x5 points are a subset of the 9x9 points
        // ~6.9% at N=16 where the layer spans one or two cells, < 1% beyond.
        CHECK(b - a <= (Ns[k] == 16 ? 0.08 : 0.02) * b);
    }
}

TEST_CASE("region maxima are invariant under the x mirror") {
    const double eps = 1e-5;
    const LayerTemplate t = layer_template(LayerKind::CornerXY, eps, 2.0, 1.0);
    LayerTemplate lopsided = t;
    lopsided.value = [t](double x, double y) { return t(x, y) * (1.0 + 0.3 * x); };
    LayerTemplate mirrored = lopsided;
    mirrored.value = [lopsided](double x, double y) { return lopsided(-x, y); };
    const auto a = interp_error_study(lopsided, eps, 2.0, 1.0, {16});
    const auto b = interp_error_study(mirrored, eps, 2.0, 1.0, {16});
    for (Region r : kAllRegions) CHECK(at(a[0], r) == doctest::Approx(at(b[0], r)).epsilon(1e-12));
}

TEST_CASE("mms convergence at eps = 1") {
    const MmsResult res = mms_convergence(mms_problem(1.0), {8, 16, 32, 64});
    REQUIRE(res.rates.size() == 3);
    for (const auto& r : res.rates) {
        REQUIRE(r.has_value());
        CHECK(std::abs(*r - 2.0) <= 0.15);
    }
    CHECK(res.max_error[3] <= res.max_error[2]);
}

TEST_CASE("mms convergence of the zero function reports undefined rates") {
    ProblemSpec zero = mms_problem(1.0);
    zero.f = [](double, double) { return 0.0; };
    zero.exact->u = [](double, double) { return 0.0; };
    const MmsResult res = mms_convergence(zero, {8, 16});
    REQUIRE(res.rates.size() == 1);
    CHECK(res.max_error[0] <= kZeroErrorThreshold);
    CHECK_FALSE(res.rates[0].has_value());
}

TEST_CASE("mms convergence needs an exact solution") {
    CHECK_THROWS_AS(mms_convergence(example_5_1(1e-3), {8, 16}), std::invalid_argument);
}
