#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "ptmac/fields.hpp"
#include "ptmac/implicit_theta.hpp"
#include "ptmac/mesh.hpp"

namespace ptmac {

/// Largest admissible time step of the sufficient condition
///
///   dt |u_sigma| max(|dK|/|K|, |dL|/|L|) <= (beta/(1+beta)) min(rho_K,rho_L)/max(rho_K,rho_L),
///
/// scaled by `safety`. Faces with u = 0 impose nothing; returns dt_max when
/// no face constrains the step.
double compute_dt(const Mesh& mesh, const CellField& rho, const FaceField& u, double beta,
                  double dt_max, double safety = 1.0);

/// Explicit upwind mass update. Throws CflViolation on a non-positive density.
CellField mass_update(const Mesh& mesh, const CellField& rho, const FaceField& u, double dt);

/// eta = max(eta_floor, 1.5 / min_sigma rho_D).
double choose_eta(const Mesh& mesh, const CellField& rho, double eta_floor = 0.0);

/// u^{n+1} = [rho_D^n u^n - dt conv(rho^n, u^n) - (dt/eps^2) grad p^{n+1}] / rho_D^{n+1}.
/// With eps = 1 and p = pi this is also the momentum update of the limit scheme.
FaceField momentum_update(const Mesh& mesh, const CellField& rho, const FaceField& u,
                          const CellField& rho_new, const CellField& p_new, double dt, double eps);

struct EtaPolicy {
    /// Fixed eta when set; otherwise recomputed every step from rho^n.
    std::optional<double> fixed;
    double floor = 0.0;
};

struct StepperConfig {
    double eps = 1.0;
    double gamma = 1.4;
    double beta = 0.5;
    /// Cap on the step; a non-positive value means the smallest grid spacing.
    double dt_max = -1.0;
    double safety = 1.0;
    EtaPolicy eta;
    NewtonOptions newton;
};

struct StepReport {
    double dt = 0.0;
    double dt_cfl = 0.0;     ///< unclipped value of compute_dt
    double eta = 0.0;
    int newton_iterations = 0;
    double newton_residual = 0.0;
    double newton_tolerance = 0.0;
    int linear_iterations = 0;
    bool rho_positive = false;
    bool theta_positive = false;
    double energy_before = 0.0;
    double energy_after = 0.0;
    double cfl_margin = 0.0; ///< dt / dt_cfl, at most 1
};

/// One step of the semi-implicit scheme. The input state is never modified,
/// so a failed step leaves the caller's state untouched.
class SemiImplicitStepper {
public:
    SemiImplicitStepper(const Mesh& mesh, StepperConfig config);
    ~SemiImplicitStepper();

    const StepperConfig& config() const { return config_; }
    double dt_max() const;
    void set_fixed_eta(std::optional<double> eta) { config_.eta.fixed = eta; }

    /// Advances by min(compute_dt, dt_limit).
    std::pair<State, StepReport> step(const State& state, double dt_limit = 1e300);

private:
    const Mesh* mesh_;
    StepperConfig config_;
    std::unique_ptr<ThetaSolver> theta_solver_;
};

using StepCallback = std::function<void(const State&, const StepReport&)>;

/// Steps until `t_target`, shortening the last step so the time lands on the
/// target exactly. `on_step` sees every accepted state.
State advance_to(SemiImplicitStepper& stepper, State state, double t_target,
                 const StepCallback& on_step = {});

} // namespace ptmac
