#include "spfem/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spfem {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

void require_square(const SparseMatrix& A, std::size_t rhs_size, const char* who) {
    if (A.rows() != A.cols()) throw std::invalid_argument(std::string(who) + ": matrix not square");
    if (A.rows() != rhs_size) throw std::invalid_argument(std::string(who) + ": size mismatch");
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

}  // namespace

Ilu0::Ilu0(const SparseMatrix& A) : lu_(A), diag_(A.rows(), kNone) {
    const std::size_t n = lu_.rows();
    const auto offs = lu_.row_offsets();
    const auto cols = lu_.col_indices();
    auto vals = lu_.values();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = offs[i]; k < offs[i + 1]; ++k) {
            if (cols[k] == i) diag_[i] = k;
        }
        if (diag_[i] == kNone) throw std::invalid_argument("Ilu0: missing diagonal entry");
    }

    std::vector<std::size_t> pos(n, kNone);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = offs[i]; k < offs[i + 1]; ++k) pos[cols[k]] = k;
        for (std::size_t k = offs[i]; k < offs[i + 1] && cols[k] < i; ++k) {
            const std::size_t r = cols[k];
            const double piv = vals[diag_[r]];
            if (piv == 0.0) throw std::runtime_error("Ilu0: zero pivot");
            vals[k] /= piv;
            const double lik = vals[k];
            for (std::size_t m = diag_[r] + 1; m < offs[r + 1]; ++m) {
                const std::size_t p = pos[cols[m]];
                if (p != kNone) vals[p] -= lik * vals[m];
            }
        }
        for (std::size_t k = offs[i]; k < offs[i + 1]; ++k) pos[cols[k]] = kNone;
        if (vals[diag_[i]] == 0.0) throw std::runtime_error("Ilu0: zero pivot");
    }
}

void Ilu0::apply(std::span<const double> r, std::span<double> z) const {
    const std::size_t n = lu_.rows();
    const auto offs = lu_.row_offsets();
    const auto cols = lu_.col_indices();
    const auto vals = lu_.values();
    for (std::size_t i = 0; i < n; ++i) {
        double s = r[i];
        for (std::size_t k = offs[i]; k < diag_[i]; ++k) s -= vals[k] * z[cols[k]];
        z[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = z[i];
        for (std::size_t k = diag_[i] + 1; k < offs[i + 1]; ++k) s -= vals[k] * z[cols[k]];
        z[i] = s / vals[diag_[i]];
    }
}

KrylovSolver::KrylovSolver(SparseMatrix A, SolveOptions opts)
    : A_(std::move(A)), opts_(opts), ilu_(A_) {
    if (A_.rows() != A_.cols()) throw std::invalid_argument("KrylovSolver: matrix not square");
    if (!(opts_.tol > 0.0)) throw std::invalid_argument("KrylovSolver: tol must be positive");
    if (opts_.restart < 1) throw std::invalid_argument("KrylovSolver: restart must be >= 1");
}

SolveResult KrylovSolver::solve(std::span<const double> rhs) const {
    require_square(A_, rhs.size(), "KrylovSolver::solve");
    if (norm2(rhs) == 0.0) {
        return {std::vector<double>(rhs.size(), 0.0), {0, 0.0, "zero-rhs"}};
    }
    SolveResult result;
    try {
        result = opts_.method == KrylovMethod::Gmres ? gmres(rhs) : bicgstab(rhs);
    } catch (const NonConvergence&) {
        if (A_.rows() > opts_.dense_fallback_limit) throw;
        result.solution = dense_solve(A_, rhs);
        result.report.method = "dense-lu";
        result.report.iterations = 0;
    }
    result.report.relative_residual = relative_residual(A_, result.solution, rhs);
    if (result.report.relative_residual > opts_.tol) {
        throw NonConvergence("solve: recomputed residual above tolerance",
                             result.report.relative_residual, result.report.iterations);
    }
    return result;
}

// Right-preconditioned restarted GMRES; the Arnoldi residual estimate is
// the unpreconditioned residual, so the stopping test matches the contract.
SolveResult KrylovSolver::gmres(std::span<const double> rhs) const {
    const std::size_t n = rhs.size();
    const int m = opts_.restart;
    const double bnorm = norm2(rhs);
    std::vector<double> x(n, 0.0), r(n), w(n), z(n);
    std::vector<std::vector<double>> V(static_cast<std::size_t>(m) + 1, std::vector<double>(n));
    std::vector<double> H(static_cast<std::size_t>((m + 1) * m), 0.0);
    std::vector<double> cs(m), sn(m), g(m + 1), y(m);
    auto h = [&](int i, int j) -> double& { return H[static_cast<std::size_t>(j * (m + 1) + i)]; };

    int total = 0;
    double best = std::numeric_limits<double>::infinity();
    while (total < opts_.max_iter) {
        A_.multiply(x, r);
        for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
        const double beta = norm2(r);
        best = std::min(best, beta / bnorm);
        if (beta / bnorm <= opts_.tol) break;
        for (std::size_t i = 0; i < n; ++i) V[0][i] = r[i] / beta;
        std::fill(g.begin(), g.end(), 0.0);
        g[0] = beta;

        int k = 0;
        for (; k < m && total < opts_.max_iter; ++k, ++total) {
            ilu_.apply(V[k], z);
            A_.multiply(z, w);
            for (int i = 0; i <= k; ++i) {
                h(i, k) = dot(w, V[i]);
                axpy(-h(i, k), V[i], w);
            }
            h(k + 1, k) = norm2(w);
            if (h(k + 1, k) > 0.0) {
                for (std::size_t i = 0; i < n; ++i) V[k + 1][i] = w[i] / h(k + 1, k);
            }
            for (int i = 0; i < k; ++i) {
                const double t = cs[i] * h(i, k) + sn[i] * h(i + 1, k);
                h(i + 1, k) = -sn[i] * h(i, k) + cs[i] * h(i + 1, k);
                h(i, k) = t;
            }
            const double denom = std::hypot(h(k, k), h(k + 1, k));
            if (denom == 0.0) throw NonConvergence("gmres: breakdown", best, total);
            cs[k] = h(k, k) / denom;
            sn[k] = h(k + 1, k) / denom;
            h(k, k) = denom;
            h(k + 1, k) = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] = cs[k] * g[k];
            if (std::abs(g[k + 1]) / bnorm <= 0.5 * opts_.tol) {
                ++k;
                ++total;
                break;
            }
        }
        for (int i = k - 1; i >= 0; --i) {
            double s = g[i];
            for (int j = i + 1; j < k; ++j) s -= h(i, j) * y[j];
            y[i] = s / h(i, i);
        }
        std::fill(w.begin(), w.end(), 0.0);
        for (int i = 0; i < k; ++i) axpy(y[i], V[i], w);
        ilu_.apply(w, z);
        axpy(1.0, z, x);
    }
    A_.multiply(x, r);
    for (std::size_t i = 0; i < n; ++i) r[i] = rhs[i] - r[i];
    const double rel = norm2(r) / bnorm;
    if (rel > opts_.tol) {
        throw NonConvergence("gmres: max_iter reached", std::min(best, rel), total);
    }
    return {std::move(x), {total, rel, "gmres(" + std::to_string(m) + ")+ilu0"}};
}

SolveResult KrylovSolver::bicgstab(std::span<const double> rhs) const {
    const std::size_t n = rhs.size();
    const double bnorm = norm2(rhs);
    std::vector<double> x(n, 0.0), r(rhs.begin(), rhs.end()), r0(r), p(n, 0.0), v(n, 0.0);
    std::vector<double> s(n), t(n), phat(n), shat(n);
    double rho = 1.0, alpha = 1.0, omega = 1.0;
    double best = 1.0;
    int it = 0;
    for (; it < opts_.max_iter; ++it) {
        const double rho_new = dot(r0, r);
        if (rho_new == 0.0) throw NonConvergence("bicgstab: rho breakdown", best, it);
        const double beta = (rho_new / rho) * (alpha / omega);
        for (std::size_t i = 0; i < n; ++i) p[i] = r[i] + beta * (p[i] - omega * v[i]);
        ilu_.apply(p, phat);
        A_.multiply(phat, v);
        const double r0v = dot(r0, v);
        if (r0v == 0.0) throw NonConvergence("bicgstab: breakdown", best, it);
        alpha = rho_new / r0v;
        for (std::size_t i = 0; i < n; ++i) s[i] = r[i] - alpha * v[i];
        if (norm2(s) / bnorm <= opts_.tol) {
            axpy(alpha, phat, x);
            ++it;
            break;
        }
        ilu_.apply(s, shat);
        A_.multiply(shat, t);
        const double tt = dot(t, t);
        if (tt == 0.0) throw NonConvergence("bicgstab: breakdown", best, it);
        omega = dot(t, s) / tt;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * phat[i] + omega * shat[i];
            r[i] = s[i] - omega * t[i];
        }
        rho = rho_new;
        const double rel = norm2(r) / bnorm;
        best = std::min(best, rel);
        if (rel <= opts_.tol) {
            ++it;
            break;
        }
        if (omega == 0.0) throw NonConvergence("bicgstab: omega breakdown", best, it);
    }
    const double rel = relative_residual(A_, x, rhs);
    if (rel > opts_.tol) throw NonConvergence("bicgstab: max_iter reached", best, it);
    return {std::move(x), {it, rel, "bicgstab+ilu0"}};
}

SolveResult solve(const SparseMatrix& A, std::span<const double> F, const SolveOptions& opts) {
    require_square(A, F.size(), "solve");
    return KrylovSolver(A, opts).solve(F);
}

SolveResult solve_transpose(const SparseMatrix& A, std::span<const double> e,
                            const SolveOptions& opts) {
    require_square(A, e.size(), "solve_transpose");
    return KrylovSolver(A.transpose(), opts).solve(e);
}

DenseLu::DenseLu(std::vector<double> a, std::size_t n) : n_(n), lu_(std::move(a)), perm_(n) {
    if (lu_.size() != n * n) throw std::invalid_argument("DenseLu: storage size mismatch");
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(lu_[i * n + k]) > std::abs(lu_[piv * n + k])) piv = i;
        }
        if (lu_[piv * n + k] == 0.0) throw std::runtime_error("DenseLu: singular matrix");
        if (piv != k) {
            std::swap_ranges(lu_.begin() + static_cast<std::ptrdiff_t>(k * n),
                             lu_.begin() + static_cast<std::ptrdiff_t>((k + 1) * n),
                             lu_.begin() + static_cast<std::ptrdiff_t>(piv * n));
            std::swap(perm_[k], perm_[piv]);
        }
        const double d = lu_[k * n + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            const double l = lu_[i * n + k] / d;
            lu_[i * n + k] = l;
            if (l == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_[i * n + j] -= l * lu_[k * n + j];
        }
    }
}

std::vector<double> DenseLu::solve(std::span<const double> b) const {
    if (b.size() != n_) throw std::invalid_argument("DenseLu::solve: size mismatch");
    std::vector<double> x(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        double s = b[perm_[i]];
        for (std::size_t j = 0; j < i; ++j) s -= lu_[i * n_ + j] * x[j];
        x[i] = s;
    }
    for (std::size_t i = n_; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n_; ++j) s -= lu_[i * n_ + j] * x[j];
        x[i] = s / lu_[i * n_ + i];
    }
    return x;
}

std::vector<double> dense_solve(const SparseMatrix& A, std::span<const double> b) {
    require_square(A, b.size(), "dense_solve");
    return DenseLu(A).solve(b);
}

double relative_residual(const SparseMatrix& A, std::span<const double> u,
                         std::span<const double> F) {
    const std::vector<double> Au = A * u;
    double rr = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) rr += (F[i] - Au[i]) * (F[i] - Au[i]);
    const double fn = norm2(F);
    return fn > 0.0 ? std::sqrt(rr) / fn : std::sqrt(rr);
}

}  // namespace spfem
