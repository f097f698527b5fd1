#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace spfem {

/// Transition points where the Shishkin mesh switches from fine to coarse.
struct TransitionParams {
    double lambda_x = 0.5;
    double lambda_y = 0.25;
};

/// lambda_x = min((2 eps / alpha) ln(1/eps), 1/2),
/// lambda_y = min(2 sqrt(eps / beta) ln(eps^{-3/2}), 1/4).
/// Throws std::domain_error unless 0 < eps < 1, alpha > 0, beta > 0.
TransitionParams transition_params(double eps, double alpha, double beta);

/// One-dimensional piecewise uniform grid on [-1, 1].
struct MeshAxis {
    std::vector<double> nodes;
    double lambda = 0.0;

    std::size_t n_intervals() const { return nodes.empty() ? 0 : nodes.size() - 1; }
    std::size_t size() const { return nodes.size(); }
    double operator[](std::size_t i) const { return nodes[i]; }
};

/// Full-domain x-axis with 2N intervals: N/2 fine intervals on [0, lambda_x],
/// N/2 coarse ones on [lambda_x, 1], mirrored onto [-1, 0].
MeshAxis build_x_axis(int N, double lambda_x);

/// y-axis with N intervals split N/4 : N/2 : N/4 at -1 + lambda_y and 1 - lambda_y.
MeshAxis build_y_axis(int N, double lambda_y);

enum class Region { Coarse = 0, LayerX = 1, LayerY = 2, LayerXY = 3 };

inline constexpr Region kAllRegions[] = {Region::Coarse, Region::LayerX, Region::LayerY,
                                         Region::LayerXY};

std::string_view region_name(Region r);
Region region_from_name(std::string_view name);

/// Subregion tag of a point in [-1,1]^2. Points on |x| = lambda_x or
/// |y| = 1 - lambda_y belong to the layer side.
Region classify(double x, double y, double lambda_x, double lambda_y);

/// Tensor-product Shishkin mesh. Node (i, j) has flat index j * nx_nodes() + i.
class TensorMesh {
public:
    TensorMesh(MeshAxis x_axis, MeshAxis y_axis);

    /// Mesh for half-axis parameter N (x gets 2N intervals, y gets N).
    static TensorMesh shishkin(int N, TransitionParams lambdas);

    const MeshAxis& x_axis() const { return x_; }
    const MeshAxis& y_axis() const { return y_; }
    double lambda_x() const { return x_.lambda; }
    double lambda_y() const { return y_.lambda; }

    std::size_t nx_nodes() const { return x_.size(); }
    std::size_t ny_nodes() const { return y_.size(); }
    std::size_t node_count() const { return nx_nodes() * ny_nodes(); }
    std::size_t nx_cells() const { return x_.n_intervals(); }
    std::size_t ny_cells() const { return y_.n_intervals(); }

    std::size_t node_index(std::size_t i, std::size_t j) const { return j * nx_nodes() + i; }
    bool is_boundary(std::size_t i, std::size_t j) const {
        return i == 0 || j == 0 || i + 1 == nx_nodes() || j + 1 == ny_nodes();
    }

    // Interior unknowns, numbered row-major over i = 1..nx-2, j = 1..ny-2.
    std::size_t interior_count() const { return (nx_nodes() - 2) * (ny_nodes() - 2); }
    std::size_t interior_index(std::size_t i, std::size_t j) const {
        return (j - 1) * (nx_nodes() - 2) + (i - 1);
    }

    Region node_region(std::size_t i, std::size_t j) const {
        return classify(x_[i], y_[j], lambda_x(), lambda_y());
    }
    /// Region of a cell, judged by its centre.
    Region cell_region(std::size_t ci, std::size_t cj) const;

    /// Largest interval index k with nodes[k] <= x (clamped to a valid cell).
    static std::size_t locate(const MeshAxis& axis, double x);

private:
    MeshAxis x_;
    MeshAxis y_;
};

}  // namespace spfem
