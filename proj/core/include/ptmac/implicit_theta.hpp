#pragma once

#include <array>
#include <memory>

#include "ptmac/fields.hpp"
#include "ptmac/linear_solvers.hpp"
#include "ptmac/mesh.hpp"

namespace ptmac {

/// Data of the nonlinear equation for Theta^{n+1} = rho^{n+1} theta^{n+1}:
///
///   R_K(Theta) = (Theta_K - Theta^n_K)/dt + (1/|K|) sum_sigma F_{sigma,K}(Theta, v(Theta)),
///
/// where the flux uses the stabilised velocity v = u^n - (eta dt/eps^2) grad p(Theta).
struct ThetaProblem {
    const Mesh* mesh = nullptr;
    CellField theta_old; ///< rho^n theta^n
    FaceField u;         ///< u^n
    double dt = 0.0;
    double eta = 0.0;
    double eps = 1.0;
    double gamma = 1.4;

    double shift_coefficient() const { return eta * dt / (eps * eps); }
};

CellField theta_residual(const ThetaProblem& problem, const CellField& theta);

/// Size of the rounding error that evaluating R_K can carry, per cell maximum.
/// The pressure term is multiplied by eta dt / eps^2, so for small eps this
/// can exceed any fixed absolute tolerance.
double theta_residual_floor(const ThetaProblem& problem, const CellField& theta);

/// Jacobian of R for the sign pattern of the shift at `theta`. Returns the
/// sparse matrix plus the constant-coefficient approximation (alpha, beta)
/// used by the FFT preconditioner.
struct ThetaJacobian {
    SparseMatrix matrix;
    double alpha = 0.0;
    std::array<double, kMaxDim> beta{0.0, 0.0};
};
ThetaJacobian theta_jacobian(const ThetaProblem& problem, const CellField& theta);

/// Linear transport operator Theta -> Theta/dt + div F(Theta) for a fixed
/// advecting velocity u - du. Off-diagonal entries are non-positive and the
/// diagonal is at least 1/dt, which is what keeps Theta positive.
SparseMatrix theta_transport_matrix(const Mesh& mesh, const FaceField& u, const FaceField& du, double dt);

struct NewtonOptions {
    /// Absolute tolerance on max_K |R_K|; a negative value selects
    /// 1e-11 max(1, |Theta^n|_inf / dt).
    double tol = -1.0;
    int max_iter = 50;
    int max_halvings = 30;
    LinearSolverOptions linear;
};

struct ThetaSolveResult {
    CellField theta_total;
    CellField pressure;
    int iterations = 0;
    double residual = 0.0;
    double tolerance = 0.0;
    int linear_iterations = 0;
};

/// Semismooth Newton iteration. Keeps the linear solver caches between calls
/// because every step on a mesh reuses the same sparsity pattern.
class ThetaSolver {
public:
    ThetaSolver(const Mesh& mesh, NewtonOptions options = {});
    ~ThetaSolver();

    ThetaSolveResult solve(const ThetaProblem& problem);
    const NewtonOptions& options() const { return options_; }

private:
    NewtonOptions options_;
    std::unique_ptr<SparseSystemSolver> linear_;
};

ThetaSolveResult solve_theta_implicit(const Mesh& mesh, const State& state, double dt, double eta,
                                      double eps, double gamma, const NewtonOptions& options = {});

} // namespace ptmac
