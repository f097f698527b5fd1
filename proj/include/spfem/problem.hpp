#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace spfem {

using ScalarField = std::function<double(double x, double y)>;

struct ExactSolution {
    ScalarField u;
    ScalarField u_x;
    ScalarField u_y;
};

/// -eps Laplace(u) + b1(x,y) u_x + c(x,y) u = f on (-1,1)^2, u = 0 on the boundary.
/// b1 = x a(x,y) carries the turning line x = 0.
struct ProblemSpec {
    std::string name;
    double eps = 1.0;
    ScalarField b1;
    ScalarField c;
    ScalarField f;
    double alpha = 2.0;
    double beta = 1.0;
    std::optional<ExactSolution> exact;
};

/// Turning-point problem with b1 = -x (x^2 + e^{1+xy}), c = 3 + x^2 e^x,
/// f = xy / (1 + x^2 + y^2).
ProblemSpec example_5_1(double eps, double alpha = 2.0, double beta = 1.0);

namespace example51 {
double b1(double x, double y);
double db1_dx(double x, double y);
double c(double x, double y);
double f(double x, double y);
}  // namespace example51

/// Same operator as example_5_1 with the source manufactured so that
/// u = sin(pi x) sin(pi y) is the exact solution.
ProblemSpec mms_problem(double eps, double alpha = 2.0, double beta = 1.0);

enum class LayerKind { Smooth, InteriorX, BoundaryY, CornerXY, Constant };

LayerKind layer_kind_from_name(std::string_view name);
std::string_view layer_kind_name(LayerKind kind);

/// Synthetic functions with the decay profile of each layer component.
/// These are interpolation targets only; they do not solve the PDE.
struct LayerTemplate {
    LayerKind kind;
    ScalarField value;
    double operator()(double x, double y) const { return value(x, y); }
};

LayerTemplate layer_template(LayerKind kind, double eps, double alpha, double beta);

}  // namespace spfem
