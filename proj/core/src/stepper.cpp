#include "ptmac/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ptmac/diagnostics.hpp"
#include "ptmac/discrete_ops.hpp"
#include "ptmac/errors.hpp"
#include "ptmac/fluxes.hpp"

namespace ptmac {

double compute_dt(const Mesh& mesh, const CellField& rho, const FaceField& u, double beta,
                  double dt_max, double safety) {
    if (!(beta > 0.0 && beta <= 0.5)) throw ConfigError("beta must lie in (0, 1/2]");
    const double frac = beta / (1.0 + beta);
    double dt = std::numeric_limits<double>::infinity();
    for (int a = 0; a < mesh.dim(); ++a) {
        for (int f = 0; f < mesh.face_count(a); ++f) {
            const double speed = std::abs(u(a, f));
            if (speed == 0.0) continue;
            const int K = mesh.face_minus_cell(a, f);
            const int L = f;
            const double ratio = std::min(rho[K], rho[L]) / std::max(rho[K], rho[L]);
            const double perim = std::max(mesh.perimeter_ratio(K), mesh.perimeter_ratio(L));
            dt = std::min(dt, frac * ratio / (perim * speed));
        }
    }
    dt *= safety;
    return std::isfinite(dt) ? std::min(dt, dt_max) : dt_max;
}

CellField mass_update(const Mesh& mesh, const CellField& rho, const FaceField& u, double dt) {
    const CellField div = flux_divergence(mesh, mass_flux(mesh, rho, u));
    CellField out(rho.size());
    for (int k = 0; k < rho.size(); ++k) {
        out[k] = rho[k] - dt * div[k];
        if (!(out[k] > 0.0)) {
            throw CflViolation("mass update produced non-positive density in cell " + std::to_string(k));
        }
    }
    return out;
}

double choose_eta(const Mesh& mesh, const CellField& rho, double eta_floor) {
    const FaceField rd = dual_density(mesh, rho);
    double m = std::numeric_limits<double>::infinity();
    for (int a = 0; a < mesh.dim(); ++a) {
        for (double v : rd.component(a)) m = std::min(m, v);
    }
    return std::max(eta_floor, 1.5 / m);
}

FaceField momentum_update(const Mesh& mesh, const CellField& rho, const FaceField& u,
                          const CellField& rho_new, const CellField& p_new, double dt, double eps) {
    const FaceField primal = mass_flux(mesh, rho, u);
    const DualMassBalanceData dual = dual_momentum_fluxes(mesh, rho, u, primal);
    const FaceField conv = dual_convection(mesh, dual);
    const FaceField grad = grad_faces(mesh, p_new);
    const FaceField rd_new = dual_density(mesh, rho_new);
    const double k = dt / (eps * eps);
    FaceField out(mesh);
    for (int a = 0; a < mesh.dim(); ++a) {
        for (int f = 0; f < mesh.face_count(a); ++f) {
            out(a, f) = (dual.rho_dual(a, f) * u(a, f) - dt * conv(a, f) - k * grad(a, f)) / rd_new(a, f);
        }
    }
    return out;
}

SemiImplicitStepper::SemiImplicitStepper(const Mesh& mesh, StepperConfig config)
    : mesh_(&mesh), config_(config), theta_solver_(std::make_unique<ThetaSolver>(mesh, config.newton)) {
    if (!(config_.eps > 0.0)) throw ConfigError("eps must be positive");
    if (!(config_.gamma >= 1.0)) throw ConfigError("gamma must be at least 1");
    if (!(config_.beta > 0.0 && config_.beta <= 0.5)) throw ConfigError("beta must lie in (0, 1/2]");
}

SemiImplicitStepper::~SemiImplicitStepper() = default;

double SemiImplicitStepper::dt_max() const {
    return config_.dt_max > 0.0 ? config_.dt_max : mesh_->min_spacing();
}

std::pair<State, StepReport> SemiImplicitStepper::step(const State& s, double dt_limit) {
    const Mesh& mesh = *mesh_;
    StepReport rep;
    rep.dt_cfl = compute_dt(mesh, s.rho, s.u, config_.beta, dt_max(), config_.safety);
    rep.dt = std::min(rep.dt_cfl, dt_limit);
    if (!(rep.dt > 0.0)) throw SolverError("time step must be positive");
    rep.cfl_margin = rep.dt / rep.dt_cfl;
    rep.energy_before = total_energy(mesh, s, config_.eps, config_.gamma).total();

    State next;
    next.rho = mass_update(mesh, s.rho, s.u, rep.dt);
    rep.eta = config_.eta.fixed ? *config_.eta.fixed : choose_eta(mesh, s.rho, config_.eta.floor);

    ThetaProblem pb;
    pb.mesh = &mesh;
    pb.theta_old = s.theta_total();
    pb.u = s.u;
    pb.dt = rep.dt;
    pb.eta = rep.eta;
    pb.eps = config_.eps;
    pb.gamma = config_.gamma;
    ThetaSolveResult th = theta_solver_->solve(pb);
    rep.newton_iterations = th.iterations;
    rep.newton_residual = th.residual;
    rep.newton_tolerance = th.tolerance;
    rep.linear_iterations = th.linear_iterations;

    next.theta = CellField(mesh.cell_count());
    for (int k = 0; k < mesh.cell_count(); ++k) next.theta[k] = th.theta_total[k] / next.rho[k];
    next.u = momentum_update(mesh, s.rho, s.u, next.rho, th.pressure, rep.dt, config_.eps);
    next.time = s.time + rep.dt;
    next.step_index = s.step_index + 1;

    rep.rho_positive = next.rho.min() > 0.0;
    rep.theta_positive = next.theta.min() > 0.0;
    if (!rep.rho_positive || !rep.theta_positive || !next.u.all_finite()) {
        throw SolverError("step produced an inadmissible state");
    }
    rep.energy_after = total_energy(mesh, next, config_.eps, config_.gamma).total();
    return {std::move(next), rep};
}

State advance_to(SemiImplicitStepper& stepper, State state, double t_target, const StepCallback& on_step) {
    while (state.time < t_target) {
        const double remaining = t_target - state.time;
        auto [next, rep] = stepper.step(state, remaining);
        if (rep.dt == remaining) next.time = t_target;
        state = std::move(next);
        if (on_step) on_step(state, rep);
    }
    return state;
}

} // namespace ptmac
