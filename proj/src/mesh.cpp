#include "spfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spfem {

TransitionParams transition_params(double eps, double alpha, double beta) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::domain_error("transition_params: eps must lie in (0, 1), got " +
                                std::to_string(eps));
    }
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw std::domain_error("transition_params: alpha and beta must be positive");
    }
    const double log_inv = std::log(1.0 / eps);
    TransitionParams p;
    p.lambda_x = std::min(2.0 * eps / alpha * log_inv, 0.5);
    p.lambda_y = std::min(2.0 * std::sqrt(eps / beta) * 1.5 * log_inv, 0.25);
    return p;
}

MeshAxis build_x_axis(int N, double lambda_x) {
    if (N < 4 || N % 2 != 0) {
        throw std::invalid_argument("build_x_axis: N must be even and >= 4, got " +
                                    std::to_string(N));
    }
    if (!(lambda_x > 0.0 && lambda_x <= 0.5)) {
        throw std::invalid_argument("build_x_axis: lambda_x must lie in (0, 1/2]");
    }
    const int half = N / 2;
    std::vector<double> pos(N + 1);
    for (int i = 0; i <= half; ++i) pos[i] = 2.0 * lambda_x / N * i;
    for (int i = half + 1; i <= N; ++i) {
        pos[i] = lambda_x + 2.0 / N * (1.0 - lambda_x) * (i - half);
    }
    pos[half] = lambda_x;
    pos[N] = 1.0;

    MeshAxis axis;
    axis.lambda = lambda_x;
    axis.nodes.reserve(2 * N + 1);
    for (int i = N; i >= 1; --i) axis.nodes.push_back(-pos[i]);
    axis.nodes.insert(axis.nodes.end(), pos.begin(), pos.end());
    return axis;
}

MeshAxis build_y_axis(int N, double lambda_y) {
    if (N < 4 || N % 4 != 0) {
        throw std::invalid_argument("build_y_axis: N must be a positive multiple of 4, got " +
                                    std::to_string(N));
    }
    if (!(lambda_y > 0.0 && lambda_y <= 0.25)) {
        throw std::invalid_argument("build_y_axis: lambda_y must lie in (0, 1/4]");
    }
    const int q = N / 4;
    MeshAxis axis;
    axis.lambda = lambda_y;
    axis.nodes.resize(N + 1);
    for (int j = 0; j <= N; ++j) {
        double y;
        if (j <= q) {
            y = -1.0 + 4.0 * j / N * lambda_y;
        } else if (j <= 3 * q) {
            y = -1.0 + lambda_y + 2.0 / N * (2.0 - 2.0 * lambda_y) * (j - q);
        } else {
            y = 1.0 - 4.0 * lambda_y * (1.0 - static_cast<double>(j) / N);
        }
        axis.nodes[j] = y;
    }
    // Pin breakpoints so that the transition lines are exact mesh lines.
    axis.nodes[q] = -1.0 + lambda_y;
    axis.nodes[3 * q] = 1.0 - lambda_y;
    axis.nodes[N] = 1.0;
    return axis;
}

std::string_view region_name(Region r) {
    switch (r) {
        case Region::Coarse: return "coarse";
        case Region::LayerX: return "layer_x";
        case Region::LayerY: return "layer_y";
        case Region::LayerXY: return "layer_xy";
    }
    return "unknown";
}

Region region_from_name(std::string_view name) {
    for (Region r : kAllRegions) {
        if (region_name(r) == name) return r;
    }
    throw std::invalid_argument("unknown region name: " + std::string(name));
}

Region classify(double x, double y, double lambda_x, double lambda_y) {
    if (!(std::abs(x) <= 1.0 && std::abs(y) <= 1.0)) {
        throw std::domain_error("classify: point outside [-1,1]^2");
    }
    const bool in_x_layer = std::abs(x) <= lambda_x;
    const bool in_y_layer = std::abs(y) >= 1.0 - lambda_y;
    if (in_x_layer) return in_y_layer ? Region::LayerXY : Region::LayerX;
    return in_y_layer ? Region::LayerY : Region::Coarse;
}

TensorMesh::TensorMesh(MeshAxis x_axis, MeshAxis y_axis)
    : x_(std::move(x_axis)), y_(std::move(y_axis)) {
    if (x_.size() < 3 || y_.size() < 3) {
        throw std::invalid_argument("TensorMesh: each axis needs at least one interior node");
    }
}

TensorMesh TensorMesh::shishkin(int N, TransitionParams lambdas) {
    return TensorMesh(build_x_axis(N, lambdas.lambda_x), build_y_axis(N, lambdas.lambda_y));
}

Region TensorMesh::cell_region(std::size_t ci, std::size_t cj) const {
    const double xc = 0.5 * (x_[ci] + x_[ci + 1]);
    const double yc = 0.5 * (y_[cj] + y_[cj + 1]);
    return classify(xc, yc, lambda_x(), lambda_y());
}

std::size_t TensorMesh::locate(const MeshAxis& axis, double x) {
    auto it = std::upper_bound(axis.nodes.begin(), axis.nodes.end(), x);
    std::size_t k = it == axis.nodes.begin() ? 0 : static_cast<std::size_t>(it - axis.nodes.begin()) - 1;
    return std::min(k, axis.n_intervals() - 1);
}

}  // namespace spfem
