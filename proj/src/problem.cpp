#include "spfem/problem.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spfem {

namespace example51 {

double b1(double x, double y) { return -x * (x * x + std::exp(1.0 + x * y)); }

double db1_dx(double x, double y) {
    return -(3.0 * x * x + std::exp(1.0 + x * y) * (1.0 + x * y));
}

double c(double x, double /*y*/) { return 3.0 + x * x * std::exp(x); }

double f(double x, double y) { return x * y / (1.0 + x * x + y * y); }

}  // namespace example51

namespace {

void check_positive(double eps, double alpha, double beta) {
    if (!(eps > 0.0) || !(alpha > 0.0) || !(beta > 0.0)) {
        throw std::invalid_argument("problem parameters eps, alpha, beta must be positive");
    }
}

}  // namespace

ProblemSpec example_5_1(double eps, double alpha, double beta) {
    check_positive(eps, alpha, beta);
    if (!(eps < 1.0)) throw std::invalid_argument("example_5_1: eps must be < 1");
    ProblemSpec spec;
    spec.name = "example51";
    spec.eps = eps;
    spec.alpha = alpha;
    spec.beta = beta;
    spec.b1 = example51::b1;
    spec.c = example51::c;
    spec.f = example51::f;
    return spec;
}

ProblemSpec mms_problem(double eps, double alpha, double beta) {
    check_positive(eps, alpha, beta);
    if (eps > 1.0) throw std::invalid_argument("mms_problem: eps must be <= 1");
    constexpr double pi = std::numbers::pi;
    ProblemSpec spec;
    spec.name = "mms";
    spec.eps = eps;
    spec.alpha = alpha;
    spec.beta = beta;
    spec.b1 = example51::b1;
    spec.c = example51::c;
    // -eps Lap(u) = 2 eps pi^2 u; b1 u_x = b1 pi cos(pi x) sin(pi y).
    spec.f = [eps](double x, double y) {
        const double sx = std::sin(pi * x), sy = std::sin(pi * y);
        const double u = sx * sy;
        return 2.0 * eps * pi * pi * u + example51::b1(x, y) * pi * std::cos(pi * x) * sy +
               example51::c(x, y) * u;
    };
    spec.exact = ExactSolution{
        [](double x, double y) { return std::sin(pi * x) * std::sin(pi * y); },
        [](double x, double y) { return pi * std::cos(pi * x) * std::sin(pi * y); },
        [](double x, double y) { return pi * std::sin(pi * x) * std::cos(pi * y); },
    };
    return spec;
}

LayerKind layer_kind_from_name(std::string_view name) {
    if (name == "smooth") return LayerKind::Smooth;
    if (name == "interior_x") return LayerKind::InteriorX;
    if (name == "boundary_y") return LayerKind::BoundaryY;
    if (name == "corner_xy") return LayerKind::CornerXY;
    if (name == "constant") return LayerKind::Constant;
    throw std::invalid_argument("unknown layer template: " + std::string(name));
}

std::string_view layer_kind_name(LayerKind kind) {
    switch (kind) {
        case LayerKind::Smooth: return "smooth";
        case LayerKind::InteriorX: return "interior_x";
        case LayerKind::BoundaryY: return "boundary_y";
        case LayerKind::CornerXY: return "corner_xy";
        case LayerKind::Constant: return "constant";
    }
    return "unknown";
}

LayerTemplate layer_template(LayerKind kind, double eps, double alpha, double beta) {
    check_positive(eps, alpha, beta);
    const double sqrt_eps = std::sqrt(eps);
    auto x_layer = [eps, alpha](double x) { return std::exp(-alpha * std::abs(x) / eps); };
    auto y_layer = [sqrt_eps, beta](double y) {
        return std::exp(-beta * (1.0 - y) / sqrt_eps) + std::exp(-beta * (1.0 + y) / sqrt_eps);
    };
    switch (kind) {
        case LayerKind::Smooth:
            return {kind, [](double x, double y) { return (1.0 - x * x) * (1.0 - y * y); }};
        case LayerKind::InteriorX:
            return {kind, [x_layer](double x, double y) { return x_layer(x) * (1.0 - y * y); }};
        case LayerKind::BoundaryY:
            return {kind, [y_layer](double x, double y) { return y_layer(y) * (1.0 - x * x); }};
        case LayerKind::CornerXY:
            return {kind, [x_layer, y_layer](double x, double y) { return x_layer(x) * y_layer(y); }};
        case LayerKind::Constant:
            return {kind, [](double, double) { return 1.0; }};
    }
    throw std::invalid_argument("layer_template: unknown kind");
}

}  // namespace spfem
