#pragma once

#include <memory>
#include <optional>

#include "ptmac/fields.hpp"
#include "ptmac/linear_solvers.hpp"
#include "ptmac/mesh.hpp"

namespace ptmac {

struct CaseSpec;

/// Unknowns of the incompressible density-dependent limit scheme.
/// theta is not evolved; the limit enforces rho theta = 1.
struct LimitState {
    CellField rho;
    FaceField U;
    CellField pi; ///< second-order pressure, zero mean
    double time = 0.0;
    long step_index = 0;

    CellField theta() const;
};

/// rho_0 = 1/theta_0 and U_0 sampled like the compressible velocity.
LimitState init_limit_state(const Mesh& mesh, const CaseSpec& spec, double eps);

CellField limit_mass_update(const Mesh& mesh, const LimitState& ls, double dt);

/// Assembled periodic operator div_M grad_E (symmetric, negative semi-definite).
SparseMatrix mac_laplacian(const Mesh& mesh);

/// Solves eta dt div(grad pi) = div U^n for zero-mean pi.
class PressureSolver {
public:
    explicit PressureSolver(const Mesh& mesh, double tolerance = 1e-12, int max_iterations = 2000);
    ~PressureSolver();

    CellField solve(const FaceField& Un, double eta, double dt, double* residual = nullptr,
                    int* iterations = nullptr);

private:
    const Mesh* mesh_;
    double tolerance_;
    int max_iterations_;
    SparseMatrix lap_;
    std::unique_ptr<PeriodicFftHelmholtz> precond_;
};

CellField solve_pressure(const Mesh& mesh, const FaceField& Un, double eta, double dt, double tol = 1e-12);

FaceField limit_momentum_update(const Mesh& mesh, const LimitState& ls, const CellField& rho_next,
                                const CellField& pi_next, double dt);

struct LimitStepperConfig {
    double beta = 0.5;
    double dt_max = -1.0;
    double safety = 1.0;
    std::optional<double> eta_fixed;
    double eta_floor = 0.0;
    double pressure_tolerance = 1e-12;
};

struct LimitStepReport {
    double dt = 0.0;
    double eta = 0.0;
    int cg_iterations = 0;
    double cg_residual = 0.0;
    double kinetic_before = 0.0;
    double kinetic_after = 0.0;
};

class LimitStepper {
public:
    LimitStepper(const Mesh& mesh, LimitStepperConfig config = {});
    ~LimitStepper();

    double dt_max() const;
    void set_fixed_eta(std::optional<double> eta) { config_.eta_fixed = eta; }
    std::pair<LimitState, LimitStepReport> step(const LimitState& ls, double dt_limit = 1e300);

private:
    const Mesh* mesh_;
    LimitStepperConfig config_;
    std::unique_ptr<PressureSolver> pressure_;
};

} // namespace ptmac
