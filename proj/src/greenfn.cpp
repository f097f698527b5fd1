#include "spfem/greenfn.hpp"

#include <cmath>
#include <stdexcept>

#include "spfem/errorlab.hpp"

namespace spfem {

namespace {

std::size_t nearest_index(const MeshAxis& axis, double v) {
    std::size_t best = 1;
    for (std::size_t k = 1; k + 1 < axis.size(); ++k) {
        if (std::abs(axis[k] - v) < std::abs(axis[best] - v)) best = k;
    }
    return best;
}

double quadratic_form(const SparseMatrix& S, std::span<const double> v) {
    if (S.rows() != v.size() || S.cols() != v.size()) {
        throw std::invalid_argument("quadratic form: dimension mismatch");
    }
    return dot(v, S * v);
}

}  // namespace

FeField green_function(const KrylovSolver& transposed, const TensorMesh& mesh, NodeIndex source) {
    if (mesh.is_boundary(source.i, source.j) || source.i >= mesh.nx_nodes() ||
        source.j >= mesh.ny_nodes()) {
        throw std::invalid_argument("green_function: source must be an interior node");
    }
    if (transposed.matrix().rows() != mesh.interior_count()) {
        throw std::invalid_argument("green_function: matrix does not match mesh");
    }
    std::vector<double> e(mesh.interior_count(), 0.0);
    e[mesh.interior_index(source.i, source.j)] = 1.0;
    const SolveResult res = transposed.solve(e);
    return FeField::from_interior(mesh, res.solution);
}

FeField green_function(const SparseMatrix& A, const TensorMesh& mesh, NodeIndex source,
                       const SolveOptions& opts) {
    return green_function(KrylovSolver(A.transpose(), opts), mesh, source);
}

double fe_l2_norm(const FeField& field, const SparseMatrix& M) {
    return std::sqrt(std::max(0.0, quadratic_form(M, field.interior_values())));
}

double fe_energy_norm(const FeField& field, const SparseMatrix& K, const SparseMatrix& M,
                      double eps) {
    const std::vector<double> v = field.interior_values();
    const double e2 = eps * quadratic_form(K, v) + quadratic_form(M, v);
    return std::sqrt(std::max(0.0, e2));
}

std::array<ProbePoint, 4> canonical_probes(TransitionParams lambdas) {
    std::array<ProbePoint, 4> p{};
    p[static_cast<int>(Region::Coarse)] = {0.5, 0.0};
    p[static_cast<int>(Region::LayerX)] = {lambdas.lambda_x / 2.0, 0.0};
    p[static_cast<int>(Region::LayerY)] = {0.5, 1.0 - lambdas.lambda_y / 2.0};
    p[static_cast<int>(Region::LayerXY)] = {lambdas.lambda_x / 2.0, 1.0 - lambdas.lambda_y / 2.0};
    return p;
}

NodeIndex nearest_interior_node(const TensorMesh& mesh, double x, double y) {
    return {nearest_index(mesh.x_axis(), x), nearest_index(mesh.y_axis(), y)};
}

std::vector<GreenReport> green_norm_sweep(const ProblemFactory& make_problem,
                                          const std::vector<int>& N_list,
                                          const std::vector<double>& eps_list,
                                          const GreenSweepOptions& opts) {
    std::vector<GreenReport> out;
    for (double eps : eps_list) {
        const ProblemSpec spec = make_problem(eps);
        const TransitionParams lambdas = mesh_params_for(spec);
        auto probes = canonical_probes(lambdas);
        for (Region r : kAllRegions) {
            if (opts.probe_override[static_cast<int>(r)]) {
                probes[static_cast<int>(r)] = *opts.probe_override[static_cast<int>(r)];
            }
        }
        for (int N : N_list) {
            const TensorMesh mesh = TensorMesh::shishkin(N, lambdas);
            const LinearSystem sys = assemble(mesh, spec, opts.quad_order);
            const SparseMatrix M = assemble_mass(mesh);
            const SparseMatrix K = assemble_stiffness(mesh);
            const KrylovSolver adjoint(sys.A.transpose(), opts.solver);
            for (Region r : opts.regions) {
                const ProbePoint pp = probes[static_cast<int>(r)];
                const NodeIndex node = nearest_interior_node(mesh, pp.x, pp.y);
                const FeField g = green_function(adjoint, mesh, node);
                GreenReport rep;
                rep.eps = eps;
                rep.N = N;
                rep.region = r;
                rep.source_region = mesh.node_region(node.i, node.j);
                rep.source = node;
                rep.source_x = mesh.x_axis()[node.i];
                rep.source_y = mesh.y_axis()[node.j];
                rep.l2_norm = fe_l2_norm(g, M);
                rep.energy_norm = fe_energy_norm(g, K, M, spec.eps);
                out.push_back(rep);
            }
        }
    }
    return out;
}

}  // namespace spfem
