#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "spfem/assembly.hpp"
#include "spfem/linsolve.hpp"
#include "spfem/mesh.hpp"
#include "spfem/problem.hpp"

namespace spfem {

struct NodeIndex {
    std::size_t i = 0;
    std::size_t j = 0;
};

/// Discrete Green's function for the interior source node: the FE function g
/// with B_h(v, g) = v(source) for every v in S_h, i.e. A^T g = e_source.
FeField green_function(const SparseMatrix& A, const TensorMesh& mesh, NodeIndex source,
                       const SolveOptions& opts = {});

/// Same, reusing a solver already built on A^T.
FeField green_function(const KrylovSolver& transposed, const TensorMesh& mesh, NodeIndex source);

/// sqrt(v^T M v) over interior coefficients.
double fe_l2_norm(const FeField& field, const SparseMatrix& M);
/// sqrt(eps v^T K v + v^T M v).
double fe_energy_norm(const FeField& field, const SparseMatrix& K, const SparseMatrix& M,
                      double eps);

struct ProbePoint {
    double x = 0.0;
    double y = 0.0;
};

/// Default probe per region: coarse (0.5, 0), layer_x (lambda_x/2, 0),
/// layer_y (0.5, 1 - lambda_y/2), layer_xy (lambda_x/2, 1 - lambda_y/2).
/// Indexed by Region.
std::array<ProbePoint, 4> canonical_probes(TransitionParams lambdas);

/// Interior node closest to (x, y) along each axis.
NodeIndex nearest_interior_node(const TensorMesh& mesh, double x, double y);

struct GreenReport {
    double eps = 0.0;
    int N = 0;
    Region region = Region::Coarse;  // region the probe was aimed at
    Region source_region = Region::Coarse;  // tag of the selected node
    NodeIndex source;
    double source_x = 0.0;
    double source_y = 0.0;
    double l2_norm = 0.0;
    double energy_norm = 0.0;
};

struct GreenSweepOptions {
    int quad_order = 3;
    SolveOptions solver;
    // Replaces the canonical (eps-dependent) probe for that region.
    std::array<std::optional<ProbePoint>, 4> probe_override;
    std::vector<Region> regions{Region::Coarse, Region::LayerX, Region::LayerY, Region::LayerXY};
};

using ProblemFactory = std::function<ProblemSpec(double eps)>;

/// One report per (eps, N, region), ordered eps-major, then N, then region.
std::vector<GreenReport> green_norm_sweep(const ProblemFactory& make_problem,
                                          const std::vector<int>& N_list,
                                          const std::vector<double>& eps_list,
                                          const GreenSweepOptions& opts = {});

}  // namespace spfem
