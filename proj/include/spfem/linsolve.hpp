#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "spfem/sparse.hpp"

namespace spfem {

enum class KrylovMethod { Gmres, Bicgstab };

struct SolveOptions {
    double tol = 1e-10;  // relative residual ||F - A u|| / ||F||
    int max_iter = 20000;
    KrylovMethod method = KrylovMethod::Gmres;
    int restart = 60;
    // Systems up to this size fall back to dense LU if the Krylov path fails.
    std::size_t dense_fallback_limit = 2000;
};

struct SolveReport {
    int iterations = 0;
    double relative_residual = 0.0;
    std::string method;
};

struct SolveResult {
    std::vector<double> solution;
    SolveReport report;
};

/// Thrown on Krylov breakdown or when max_iter is reached.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double best_residual, int iterations)
        : std::runtime_error(what), best_residual_(best_residual), iterations_(iterations) {}
    double best_residual() const { return best_residual_; }
    int iterations() const { return iterations_; }

private:
    double best_residual_;
    int iterations_;
};

/// Incomplete LU factorisation with the sparsity pattern of A.
class Ilu0 {
public:
    explicit Ilu0(const SparseMatrix& A);
    /// z = (LU)^{-1} r
    void apply(std::span<const double> r, std::span<double> z) const;

private:
    SparseMatrix lu_;
    std::vector<std::size_t> diag_;
};

/// ILU(0)-preconditioned Krylov solver that owns its preconditioner, so a
/// single factorisation serves many right-hand sides.
class KrylovSolver {
public:
    explicit KrylovSolver(SparseMatrix A, SolveOptions opts = {});

    SolveResult solve(std::span<const double> rhs) const;
    const SparseMatrix& matrix() const { return A_; }
    const SolveOptions& options() const { return opts_; }

private:
    SolveResult gmres(std::span<const double> rhs) const;
    SolveResult bicgstab(std::span<const double> rhs) const;

    SparseMatrix A_;
    SolveOptions opts_;
    Ilu0 ilu_;
};

/// Solves A u = F. The residual in the report is recomputed from the
/// returned solution.
SolveResult solve(const SparseMatrix& A, std::span<const double> F, const SolveOptions& opts = {});

/// Solves A^T g = e.
SolveResult solve_transpose(const SparseMatrix& A, std::span<const double> e,
                            const SolveOptions& opts = {});

/// Dense LU with partial pivoting, row-major storage.
class DenseLu {
public:
    DenseLu(std::vector<double> a, std::size_t n);
    explicit DenseLu(const SparseMatrix& A) : DenseLu(A.to_dense(), A.rows()) {}
    std::vector<double> solve(std::span<const double> b) const;
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::vector<double> lu_;
    std::vector<std::size_t> perm_;
};

std::vector<double> dense_solve(const SparseMatrix& A, std::span<const double> b);

/// ||F - A u|| / ||F|| (or ||A u|| when F = 0).
double relative_residual(const SparseMatrix& A, std::span<const double> u,
                         std::span<const double> F);

}  // namespace spfem
