#include "spfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace spfem {

namespace {

constexpr std::array<int, 4> kSx{-1, 1, 1, -1};
constexpr std::array<int, 4> kSy{-1, -1, 1, 1};

struct Gauss1d {
    std::vector<double> points;
    std::vector<double> weights;
};

Gauss1d gauss_legendre(int order) {
    switch (order) {
        case 1: return {{0.0}, {2.0}};
        case 2: {
            const double p = 1.0 / std::sqrt(3.0);
            return {{-p, p}, {1.0, 1.0}};
        }
        case 3: {
            const double p = std::sqrt(0.6);
            return {{-p, 0.0, p}, {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0}};
        }
        case 4: {
            const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(1.2));
            const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(1.2));
            const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
            const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
            return {{-b, -a, a, b}, {wb, wa, wa, wb}};
        }
        default:
            throw std::invalid_argument("quad_rule: unsupported order " + std::to_string(order));
    }
}

// Interior-node CSR with the full Q1 stencil and zero values.
SparseMatrix q1_pattern(const TensorMesh& mesh) {
    const std::size_t nxi = mesh.nx_nodes() - 2;
    const std::size_t nyi = mesh.ny_nodes() - 2;
    const std::size_t n = nxi * nyi;
    std::vector<std::size_t> offsets(n + 1, 0);
    std::vector<std::size_t> cols;
    cols.reserve(9 * n);
    for (std::size_t j = 1; j <= nyi; ++j) {
        for (std::size_t i = 1; i <= nxi; ++i) {
            for (std::size_t jj = j - 1; jj <= j + 1; ++jj) {
                if (jj < 1 || jj > nyi) continue;
                for (std::size_t ii = i - 1; ii <= i + 1; ++ii) {
                    if (ii < 1 || ii > nxi) continue;
                    cols.push_back(mesh.interior_index(ii, jj));
                }
            }
            offsets[mesh.interior_index(i, j) + 1] = cols.size();
        }
    }
    std::vector<double> vals(cols.size(), 0.0);
    return SparseMatrix(n, n, std::move(offsets), std::move(cols), std::move(vals));
}

std::size_t slot(const SparseMatrix& m, std::size_t row, std::size_t col) {
    const auto offs = m.row_offsets();
    const auto cols = m.col_indices();
    const auto first = cols.begin() + static_cast<std::ptrdiff_t>(offs[row]);
    const auto last = cols.begin() + static_cast<std::ptrdiff_t>(offs[row + 1]);
    return static_cast<std::size_t>(std::lower_bound(first, last, col) - cols.begin());
}

Cell cell_at(const TensorMesh& mesh, std::size_t ci, std::size_t cj) {
    const auto& xs = mesh.x_axis();
    const auto& ys = mesh.y_axis();
    return {xs[ci], ys[cj], xs[ci + 1] - xs[ci], ys[cj + 1] - ys[cj]};
}

// Global node (i, j) of local node a in cell (ci, cj).
std::array<std::size_t, 2> local_node(std::size_t ci, std::size_t cj, int a) {
    return {ci + (kSx[a] > 0 ? 1 : 0), cj + (kSy[a] > 0 ? 1 : 0)};
}

// Scatters a 4x4 local matrix (and optional load) into interior rows/columns.
template <typename LocalEntry>
void scatter_cells(const TensorMesh& mesh, SparseMatrix& A, LocalEntry&& local) {
    auto vals = A.values();
    for (std::size_t cj = 0; cj < mesh.ny_cells(); ++cj) {
        for (std::size_t ci = 0; ci < mesh.nx_cells(); ++ci) {
            const Mat4 block = local(ci, cj);
            for (int a = 0; a < 4; ++a) {
                const auto [ia, ja] = local_node(ci, cj, a);
                if (mesh.is_boundary(ia, ja)) continue;
                const std::size_t row = mesh.interior_index(ia, ja);
                for (int b = 0; b < 4; ++b) {
                    const auto [ib, jb] = local_node(ci, cj, b);
                    if (mesh.is_boundary(ib, jb)) continue;
                    vals[slot(A, row, mesh.interior_index(ib, jb))] += block[a][b];
                }
            }
        }
    }
}

Mat4 exact_mass(const Cell& cell) {
    // Bilinear mass on a rectangle: hk/36 * [4 2 1 2; 2 4 2 1; 1 2 4 2; 2 1 2 4].
    Mat4 m{};
    const double s = cell.h * cell.k / 36.0;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const int d = (kSx[a] == kSx[b] ? 0 : 1) + (kSy[a] == kSy[b] ? 0 : 1);
            m[a][b] = s * (d == 0 ? 4.0 : d == 1 ? 2.0 : 1.0);
        }
    }
    return m;
}

Mat4 exact_stiffness(const Cell& cell) {
    // Product of 1D stiffness and mass factors in each direction.
    Mat4 m{};
    const double h = cell.h, k = cell.k;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            const bool same_x = kSx[a] == kSx[b];
            const bool same_y = kSy[a] == kSy[b];
            const double kx = (same_x ? 1.0 : -1.0) / h;
            const double mx = h * (same_x ? 2.0 : 1.0) / 6.0;
            const double ky = (same_y ? 1.0 : -1.0) / k;
            const double my = k * (same_y ? 2.0 : 1.0) / 6.0;
            m[a][b] = kx * my + mx * ky;
        }
    }
    return m;
}

}  // namespace

std::vector<QuadPoint> quad_rule(int order) {
    const Gauss1d g = gauss_legendre(order);
    std::vector<QuadPoint> rule;
    rule.reserve(g.points.size() * g.points.size());
    for (std::size_t q = 0; q < g.points.size(); ++q) {
        for (std::size_t p = 0; p < g.points.size(); ++p) {
            rule.push_back({g.points[p], g.points[q], g.weights[p] * g.weights[q]});
        }
    }
    return rule;
}

ElementMatrices element_matrices(const Cell& cell, const ProblemSpec& spec, int quad_order) {
    if (!(cell.h > 0.0) || !(cell.k > 0.0)) {
        throw std::invalid_argument("element_matrices: degenerate cell");
    }
    ElementMatrices em;
    const double jac = 0.25 * cell.h * cell.k;
    for (const QuadPoint& qp : quad_rule(quad_order)) {
        const double x = cell.x0 + 0.5 * cell.h * (qp.xi + 1.0);
        const double y = cell.y0 + 0.5 * cell.k * (qp.eta + 1.0);
        const double w = qp.weight * jac;
        const double b1 = spec.b1 ? spec.b1(x, y) : 0.0;
        const double c = spec.c ? spec.c(x, y) : 0.0;
        const double f = spec.f ? spec.f(x, y) : 0.0;

        std::array<double, 4> phi{}, dx{}, dy{};
        for (int a = 0; a < 4; ++a) {
            const double fx = 1.0 + kSx[a] * qp.xi;
            const double fy = 1.0 + kSy[a] * qp.eta;
            phi[a] = 0.25 * fx * fy;
            dx[a] = 0.25 * kSx[a] * fy * 2.0 / cell.h;
            dy[a] = 0.25 * fx * kSy[a] * 2.0 / cell.k;
        }
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                em.diffusion[a][b] += w * spec.eps * (dx[b] * dx[a] + dy[b] * dy[a]);
                em.convection[a][b] += w * b1 * dx[b] * phi[a];
                em.reaction[a][b] += w * c * phi[b] * phi[a];
            }
            em.load[a] += w * f * phi[a];
        }
    }
    return em;
}

LinearSystem assemble(const TensorMesh& mesh, const ProblemSpec& spec, int quad_order) {
    if (quad_order < 2) throw std::invalid_argument("assemble: quad_order must be >= 2");
    LinearSystem sys{q1_pattern(mesh), std::vector<double>(mesh.interior_count(), 0.0)};
    scatter_cells(mesh, sys.A, [&](std::size_t ci, std::size_t cj) {
        const ElementMatrices em = element_matrices(cell_at(mesh, ci, cj), spec, quad_order);
        Mat4 block{};
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                block[a][b] = em.diffusion[a][b] + em.convection[a][b] + em.reaction[a][b];
            }
            const auto [ia, ja] = local_node(ci, cj, a);
            if (!mesh.is_boundary(ia, ja)) sys.F[mesh.interior_index(ia, ja)] += em.load[a];
        }
        return block;
    });
    return sys;
}

SparseMatrix assemble_mass(const TensorMesh& mesh) {
    SparseMatrix M = q1_pattern(mesh);
    scatter_cells(mesh, M, [&](std::size_t ci, std::size_t cj) {
        return exact_mass(cell_at(mesh, ci, cj));
    });
    return M;
}

SparseMatrix assemble_stiffness(const TensorMesh& mesh) {
    SparseMatrix K = q1_pattern(mesh);
    scatter_cells(mesh, K, [&](std::size_t ci, std::size_t cj) {
        return exact_stiffness(cell_at(mesh, ci, cj));
    });
    return K;
}

FeField::FeField(TensorMesh mesh, std::vector<double> nodal_values)
    : mesh_(std::move(mesh)), values_(std::move(nodal_values)) {
    if (values_.size() != mesh_.node_count()) {
        throw std::invalid_argument("FeField: value count does not match mesh node count");
    }
}

FeField FeField::from_interior(const TensorMesh& mesh, std::span<const double> interior) {
    if (interior.size() != mesh.interior_count()) {
        throw std::invalid_argument("FeField::from_interior: length mismatch");
    }
    std::vector<double> vals(mesh.node_count(), 0.0);
    for (std::size_t j = 1; j + 1 < mesh.ny_nodes(); ++j) {
        for (std::size_t i = 1; i + 1 < mesh.nx_nodes(); ++i) {
            vals[mesh.node_index(i, j)] = interior[mesh.interior_index(i, j)];
        }
    }
    return FeField(mesh, std::move(vals));
}

FeField FeField::interpolate(const TensorMesh& mesh, const ScalarField& fn) {
    std::vector<double> vals(mesh.node_count());
    for (std::size_t j = 0; j < mesh.ny_nodes(); ++j) {
        for (std::size_t i = 0; i < mesh.nx_nodes(); ++i) {
            vals[mesh.node_index(i, j)] = fn(mesh.x_axis()[i], mesh.y_axis()[j]);
        }
    }
    return FeField(mesh, std::move(vals));
}

std::vector<double> FeField::interior_values() const {
    std::vector<double> out(mesh_.interior_count());
    for (std::size_t j = 1; j + 1 < mesh_.ny_nodes(); ++j) {
        for (std::size_t i = 1; i + 1 < mesh_.nx_nodes(); ++i) {
            out[mesh_.interior_index(i, j)] = at(i, j);
        }
    }
    return out;
}

}  // namespace spfem
