#include "spfem/errorlab.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <set>
#include <stdexcept>

namespace spfem {

TransitionParams mesh_params_for(const ProblemSpec& spec) {
    if (spec.eps >= 1.0) return TransitionParams{0.5, 0.25};
    return transition_params(spec.eps, spec.alpha, spec.beta);
}

TensorMesh mesh_for(const ProblemSpec& spec, int N) {
    return TensorMesh::shishkin(N, mesh_params_for(spec));
}

FeSolution solve_problem(const ProblemSpec& spec, const TensorMesh& mesh,
                         const StudyOptions& opts) {
    LinearSystem sys = assemble(mesh, spec, opts.quad_order);
    SolveResult res = solve(sys.A, sys.F, opts.solver);
    return {FeField::from_interior(mesh, res.solution), res.report};
}

double bilinear_interp(const FeField& field, double x, double y) {
    if (!(std::abs(x) <= 1.0 && std::abs(y) <= 1.0)) {
        throw std::domain_error("bilinear_interp: point outside [-1,1]^2");
    }
    const TensorMesh& mesh = field.mesh();
    const std::size_t ci = TensorMesh::locate(mesh.x_axis(), x);
    const std::size_t cj = TensorMesh::locate(mesh.y_axis(), y);
    const double x0 = mesh.x_axis()[ci], x1 = mesh.x_axis()[ci + 1];
    const double y0 = mesh.y_axis()[cj], y1 = mesh.y_axis()[cj + 1];
    const double s = (x - x0) / (x1 - x0);
    const double t = (y - y0) / (y1 - y0);
    return (1 - s) * (1 - t) * field.at(ci, cj) + s * (1 - t) * field.at(ci + 1, cj) +
           s * t * field.at(ci + 1, cj + 1) + (1 - s) * t * field.at(ci, cj + 1);
}

namespace {

// Index in `fine` of each coarse node, or nullopt if some node is missing.
std::optional<std::vector<std::size_t>> embed_axis(const MeshAxis& coarse, const MeshAxis& fine,
                                                   double tol) {
    std::vector<std::size_t> map(coarse.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        while (k < fine.size() && fine[k] < coarse[i] - tol) ++k;
        if (k == fine.size() || std::abs(fine[k] - coarse[i]) > tol) return std::nullopt;
        map[i] = k;
    }
    return map;
}

}  // namespace

bool is_nested(const TensorMesh& coarse, const TensorMesh& fine, double tol) {
    return embed_axis(coarse.x_axis(), fine.x_axis(), tol) &&
           embed_axis(coarse.y_axis(), fine.y_axis(), tol);
}

RegionValues nodal_difference(const FeField& coarse, const FeField& fine) {
    const TensorMesh& cm = coarse.mesh();
    const auto xmap = embed_axis(cm.x_axis(), fine.mesh().x_axis(), 1e-12);
    const auto ymap = embed_axis(cm.y_axis(), fine.mesh().y_axis(), 1e-12);
    if (!xmap || !ymap) throw std::invalid_argument("nodal_difference: meshes are not nested");
    RegionValues err{};
    for (std::size_t j = 1; j + 1 < cm.ny_nodes(); ++j) {
        for (std::size_t i = 1; i + 1 < cm.nx_nodes(); ++i) {
            const double d = std::abs(coarse.at(i, j) - fine.at((*xmap)[i], (*ymap)[j]));
            double& slot = at(err, cm.node_region(i, j));
            slot = std::max(slot, d);
        }
    }
    return err;
}

RegionValues double_mesh_error(const ProblemSpec& spec, int N, const StudyOptions& opts) {
    const FeSolution coarse = solve_problem(spec, mesh_for(spec, N), opts);
    const FeSolution fine = solve_problem(spec, mesh_for(spec, 2 * N), opts);
    return nodal_difference(coarse.field, fine.field);
}

double convergence_rate(double e_N, double e_2N) {
    if (!(e_N > 0.0) || !(e_2N > 0.0)) {
        throw std::invalid_argument("convergence_rate: errors must be positive");
    }
    return std::log2(e_N / e_2N);
}

std::optional<double> ErrorTable::error(double eps, int N, Region r) const {
    for (const ErrorRow& row : errors) {
        if (row.eps == eps && row.N == N && row.region == r) return row.error;
    }
    return std::nullopt;
}

std::optional<double> ErrorTable::rate(double eps, int N, Region r) const {
    for (const RateRow& row : rates) {
        if (row.eps == eps && row.N == N && row.region == r) return row.rate;
    }
    return std::nullopt;
}

namespace {

struct EpsBlock {
    std::vector<ErrorRow> errors;
    std::vector<RateRow> rates;
};

EpsBlock error_block(const ProblemSpec& spec, const std::vector<int>& N_list,
                     const StudyOptions& opts) {
    std::set<int> needed;
    for (int N : N_list) {
        needed.insert(N);
        needed.insert(2 * N);
    }
    // Solve each mesh once, finest last, keeping only what comparisons need.
    std::map<int, FeField> solutions;
    for (int N : needed) {
        solutions.emplace(N, solve_problem(spec, mesh_for(spec, N), opts).field);
    }

    EpsBlock block;
    std::map<int, RegionValues> errs;
    for (int N : N_list) {
        errs[N] = nodal_difference(solutions.at(N), solutions.at(2 * N));
        for (Region r : kAllRegions) block.errors.push_back({spec.eps, N, r, at(errs[N], r)});
    }
    for (int N : N_list) {
        auto next = errs.find(2 * N);
        if (next == errs.end()) continue;
        for (Region r : kAllRegions) {
            const double a = at(errs[N], r), b = at(next->second, r);
            std::optional<double> rate;
            if (a > kZeroErrorThreshold && b > kZeroErrorThreshold) rate = convergence_rate(a, b);
            block.rates.push_back({spec.eps, N, r, rate});
        }
    }
    return block;
}

}  // namespace

ErrorTable error_table(const ProblemFactory& make_problem, const std::vector<double>& eps_list,
                       const std::vector<int>& N_list, const StudyOptions& opts) {
    std::vector<EpsBlock> blocks(eps_list.size());
    const std::size_t width = std::max(1u, opts.threads);
    for (std::size_t start = 0; start < eps_list.size(); start += width) {
        const std::size_t stop = std::min(eps_list.size(), start + width);
        std::vector<std::future<EpsBlock>> jobs;
        for (std::size_t k = start; k < stop; ++k) {
            const ProblemSpec spec = make_problem(eps_list[k]);
            if (width == 1) {
                blocks[k] = error_block(spec, N_list, opts);
            } else {
                jobs.push_back(std::async(std::launch::async, [spec, &N_list, &opts] {
                    return error_block(spec, N_list, opts);
                }));
            }
        }
        for (std::size_t k = 0; k < jobs.size(); ++k) blocks[start + k] = jobs[k].get();
    }
    ErrorTable table;
    for (EpsBlock& b : blocks) {
        table.errors.insert(table.errors.end(), b.errors.begin(), b.errors.end());
        table.rates.insert(table.rates.end(), b.rates.begin(), b.rates.end());
    }
    return table;
}

std::vector<RegionValues> interp_error_study(const LayerTemplate& tmpl, double eps, double alpha,
                                             double beta, const std::vector<int>& N_list,
                                             int samples_per_cell) {
    if (samples_per_cell < 2) throw std::invalid_argument("interp_error_study: need >= 2 samples");
    const TransitionParams lambdas =
        eps < 1.0 ? transition_params(eps, alpha, beta) : TransitionParams{0.5, 0.25};
    std::vector<RegionValues> out;
    for (int N : N_list) {
        const TensorMesh mesh = TensorMesh::shishkin(N, lambdas);
        const FeField interp = FeField::interpolate(mesh, tmpl.value);
        RegionValues err{};
        const int m = samples_per_cell - 1;
        for (std::size_t cj = 0; cj < mesh.ny_cells(); ++cj) {
            for (std::size_t ci = 0; ci < mesh.nx_cells(); ++ci) {
                const double x0 = mesh.x_axis()[ci], x1 = mesh.x_axis()[ci + 1];
                const double y0 = mesh.y_axis()[cj], y1 = mesh.y_axis()[cj + 1];
                const double v00 = interp.at(ci, cj), v10 = interp.at(ci + 1, cj);
                const double v11 = interp.at(ci + 1, cj + 1), v01 = interp.at(ci, cj + 1);
                double worst = 0.0;
                for (int q = 0; q <= m; ++q) {
                    const double t = static_cast<double>(q) / m;
                    const double y = y0 + t * (y1 - y0);
                    for (int p = 0; p <= m; ++p) {
                        const double s = static_cast<double>(p) / m;
                        const double x = x0 + s * (x1 - x0);
                        const double ih = (1 - s) * (1 - t) * v00 + s * (1 - t) * v10 +
                                          s * t * v11 + (1 - s) * t * v01;
                        worst = std::max(worst, std::abs(tmpl(x, y) - ih));
                    }
                }
                double& slot = at(err, mesh.cell_region(ci, cj));
                slot = std::max(slot, worst);
            }
        }
        out.push_back(err);
    }
    return out;
}

MmsResult mms_convergence(const ProblemSpec& spec, const std::vector<int>& N_list,
                          const StudyOptions& opts) {
    if (!spec.exact) throw std::invalid_argument("mms_convergence: problem has no exact solution");
    MmsResult res;
    for (int N : N_list) {
        const TensorMesh mesh = mesh_for(spec, N);
        const FeSolution sol = solve_problem(spec, mesh, opts);
        double worst = 0.0;
        for (std::size_t j = 0; j < mesh.ny_nodes(); ++j) {
            for (std::size_t i = 0; i < mesh.nx_nodes(); ++i) {
                const double u = spec.exact->u(mesh.x_axis()[i], mesh.y_axis()[j]);
                worst = std::max(worst, std::abs(sol.field.at(i, j) - u));
            }
        }
        res.N.push_back(N);
        res.max_error.push_back(worst);
    }
    for (std::size_t k = 0; k + 1 < res.N.size(); ++k) {
        const double a = res.max_error[k], b = res.max_error[k + 1];
        if (a > kZeroErrorThreshold && b > kZeroErrorThreshold) {
            res.rates.push_back(convergence_rate(a, b) /
                                std::log2(static_cast<double>(res.N[k + 1]) / res.N[k]));
        } else {
            res.rates.push_back(std::nullopt);
        }
    }
    return res;
}

}  // namespace spfem
