#pragma once

#include <array>
#include <span>
#include <vector>

#include "spfem/mesh.hpp"
#include "spfem/problem.hpp"
#include "spfem/sparse.hpp"

namespace spfem {

struct QuadPoint {
    double xi;
    double eta;
    double weight;
};

/// Tensor Gauss-Legendre rule on [-1,1]^2 with `order` points per direction (1..4).
std::vector<QuadPoint> quad_rule(int order);

/// Axis-parallel cell [x0, x0 + h] x [y0, y0 + k].
/// Local nodes run counter-clockwise from (x0, y0).
struct Cell {
    double x0, y0, h, k;
};

using Mat4 = std::array<std::array<double, 4>, 4>;

/// Local matrices, row = test function, column = trial function.
struct ElementMatrices {
    Mat4 diffusion{};   // eps (grad phi_b, grad phi_a)
    Mat4 convection{};  // (b1 d/dx phi_b, phi_a)
    Mat4 reaction{};    // (c phi_b, phi_a)
    std::array<double, 4> load{};  // (f, phi_a)
};

ElementMatrices element_matrices(const Cell& cell, const ProblemSpec& spec, int quad_order);

/// Galerkin system over interior nodes; A(i, j) = B_h(phi_j, phi_i), F(i) = (f, phi_i).
struct LinearSystem {
    SparseMatrix A;
    std::vector<double> F;
};

LinearSystem assemble(const TensorMesh& mesh, const ProblemSpec& spec, int quad_order = 3);

/// (phi_j, phi_i) over interior nodes.
SparseMatrix assemble_mass(const TensorMesh& mesh);
/// (grad phi_j, grad phi_i) over interior nodes.
SparseMatrix assemble_stiffness(const TensorMesh& mesh);

/// Piecewise bilinear function stored by its values at every mesh node.
/// Boundary values are zero for members of the discrete space S_h.
class FeField {
public:
    FeField(TensorMesh mesh, std::vector<double> nodal_values);

    /// Zero-extends a vector over interior unknowns.
    static FeField from_interior(const TensorMesh& mesh, std::span<const double> interior);
    /// Nodal interpolant (boundary entries taken from the function as given).
    static FeField interpolate(const TensorMesh& mesh, const ScalarField& fn);

    const TensorMesh& mesh() const { return mesh_; }
    std::span<const double> values() const { return values_; }
    double at(std::size_t i, std::size_t j) const { return values_[mesh_.node_index(i, j)]; }
    std::vector<double> interior_values() const;

private:
    TensorMesh mesh_;
    std::vector<double> values_;
};

}  // namespace spfem
