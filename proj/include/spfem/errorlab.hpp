#pragma once

#include <array>
#include <optional>
#include <vector>

#include "spfem/assembly.hpp"
#include "spfem/greenfn.hpp"
#include "spfem/linsolve.hpp"
#include "spfem/mesh.hpp"
#include "spfem/problem.hpp"

namespace spfem {

/// Value per Region, indexed by static_cast<int>(Region).
using RegionValues = std::array<double, 4>;

inline double& at(RegionValues& v, Region r) { return v[static_cast<int>(r)]; }
inline double at(const RegionValues& v, Region r) { return v[static_cast<int>(r)]; }

struct StudyOptions {
    int quad_order = 3;
    SolveOptions solver;
    // Independent eps values may run concurrently; results are merged in
    // eps order, so the output does not depend on this.
    unsigned threads = 1;
};

/// Transition parameters for a problem. eps >= 1 has no layers; the capped
/// values (1/2, 1/4) are used, which gives uniform axes.
TransitionParams mesh_params_for(const ProblemSpec& spec);
TensorMesh mesh_for(const ProblemSpec& spec, int N);

/// Galerkin solution on the given mesh.
struct FeSolution {
    FeField field;
    SolveReport report;
};
FeSolution solve_problem(const ProblemSpec& spec, const TensorMesh& mesh,
                         const StudyOptions& opts = {});

/// Piecewise bilinear extension of the nodal values at (x, y).
/// Throws std::domain_error outside [-1,1]^2.
double bilinear_interp(const FeField& field, double x, double y);

/// True when every node of `coarse` is a node of `fine` (to `tol`).
bool is_nested(const TensorMesh& coarse, const TensorMesh& fine, double tol = 1e-12);

/// max over interior coarse nodes of |U_coarse - U_fine|, grouped by region.
/// Throws std::invalid_argument when the meshes are not nested.
RegionValues nodal_difference(const FeField& coarse, const FeField& fine);

/// Double-mesh estimate: solve on the N and 2N meshes and compare at the
/// N-mesh nodes.
RegionValues double_mesh_error(const ProblemSpec& spec, int N, const StudyOptions& opts = {});

/// log2(e_N / e_2N). Throws std::invalid_argument for nonpositive input.
double convergence_rate(double e_N, double e_2N);

struct ErrorRow {
    double eps;
    int N;
    Region region;
    double error;
};

struct RateRow {
    double eps;
    int N;
    Region region;
    std::optional<double> rate;  // empty when an error is (numerically) zero
};

struct ErrorTable {
    std::vector<ErrorRow> errors;
    std::vector<RateRow> rates;

    /// Error for the cell, if present.
    std::optional<double> error(double eps, int N, Region r) const;
    std::optional<double> rate(double eps, int N, Region r) const;
};

/// Double-mesh errors over the (eps, N) grid for every region, plus rates
/// for each N whose 2N is also in N_list. Each distinct mesh is solved once.
ErrorTable error_table(const ProblemFactory& make_problem, const std::vector<double>& eps_list,
                       const std::vector<int>& N_list, const StudyOptions& opts = {});

/// Max |template - interpolant| per region over a 5x5 sample of each cell;
/// one entry per N.
std::vector<RegionValues> interp_error_study(const LayerTemplate& tmpl, double eps, double alpha,
                                             double beta, const std::vector<int>& N_list,
                                             int samples_per_cell = 5);

struct MmsResult {
    std::vector<int> N;
    std::vector<double> max_error;            // max nodal |u_h - u|
    std::vector<std::optional<double>> rates;  // between consecutive N
};

/// Errors below this are treated as exact and give no rate.
inline constexpr double kZeroErrorThreshold = 1e-13;

MmsResult mms_convergence(const ProblemSpec& spec, const std::vector<int>& N_list,
                          const StudyOptions& opts = {});

}  // namespace spfem
