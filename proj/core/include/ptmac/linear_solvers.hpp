#pragma once

#include <array>
#include <memory>
#include <span>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "ptmac/mesh.hpp"

namespace ptmac {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Exact inverse of alpha I + sum_a beta_a (-D2_a) on a uniform periodic grid,
/// where D2_a is the three-point second difference along axis a. Diagonalised
/// by the discrete Fourier transform.
class PeriodicFftHelmholtz {
public:
    explicit PeriodicFftHelmholtz(const Mesh& mesh);
    ~PeriodicFftHelmholtz();
    PeriodicFftHelmholtz(const PeriodicFftHelmholtz&) = delete;
    PeriodicFftHelmholtz& operator=(const PeriodicFftHelmholtz&) = delete;

    void set_coefficients(double alpha, std::array<double, kMaxDim> beta);
    /// When alpha == 0 the constant mode is projected out of the result.
    void apply_inverse(std::span<const double> in, std::span<double> out) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Eigen-compatible preconditioner wrapping PeriodicFftHelmholtz. The
/// coefficients are configured through `operator_ptr` before solving.
class FftPreconditioner {
public:
    using StorageIndex = int;
    enum { ColsAtCompileTime = Eigen::Dynamic, MaxColsAtCompileTime = Eigen::Dynamic };

    FftPreconditioner() = default;

    template <typename M> FftPreconditioner& analyzePattern(const M&) { return *this; }
    template <typename M> FftPreconditioner& factorize(const M&) { return *this; }
    template <typename M> FftPreconditioner& compute(const M&) { return *this; }

    Eigen::VectorXd solve(const Eigen::VectorXd& b) const;
    Eigen::ComputationInfo info() const { return Eigen::Success; }

    const PeriodicFftHelmholtz* operator_ptr = nullptr;
};

enum class LinearMethod { Auto, Direct, Krylov };

struct LinearSolverOptions {
    LinearMethod method = LinearMethod::Auto;
    /// Auto uses a sparse LU up to this many unknowns, BiCGSTAB beyond.
    int direct_max_unknowns = 6000;
    double krylov_tolerance = 1e-12;
    int krylov_max_iterations = 400;
};

struct LinearSolveStats {
    bool used_direct = false;
    int iterations = 0;
    double relative_residual = 0.0;
};

/// Solver for the nonsymmetric systems arising in the implicit temperature
/// step. Keeps the sparse LU symbolic analysis and the FFT plans across calls
/// because the sparsity pattern only depends on the mesh.
class SparseSystemSolver {
public:
    SparseSystemSolver(const Mesh& mesh, LinearSolverOptions options = {});
    ~SparseSystemSolver();

    /// Solves A x = b. `alpha`/`beta` describe a constant-coefficient
    /// Helmholtz operator close to A, used to precondition the Krylov path.
    /// Falls back to the direct path when the Krylov iteration fails.
    LinearSolveStats solve(const SparseMatrix& A, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                           double alpha, std::array<double, kMaxDim> beta);

    const LinearSolverOptions& options() const { return options_; }

private:
    LinearSolveStats solve_direct(const SparseMatrix& A, const Eigen::VectorXd& b, Eigen::VectorXd& x);

    const Mesh* mesh_;
    LinearSolverOptions options_;
    struct DirectCache;
    std::unique_ptr<DirectCache> direct_;
    std::unique_ptr<PeriodicFftHelmholtz> fft_;
};

/// Conjugate gradients on the singular periodic system -A x = -b restricted to
/// zero-mean vectors (A symmetric negative semi-definite with constant kernel).
/// Returns the number of iterations; throws LinearSolverFailure on stagnation.
int solve_zero_mean_symmetric(const SparseMatrix& A, const Eigen::VectorXd& b, Eigen::VectorXd& x,
                              const PeriodicFftHelmholtz* precond, double tolerance, int max_iterations,
                              double* achieved = nullptr);

} // namespace ptmac
