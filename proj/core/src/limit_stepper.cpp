#include "ptmac/limit_stepper.hpp"

#include <algorithm>
#include <cmath>

#include "ptmac/cases.hpp"
#include "ptmac/diagnostics.hpp"
#include "ptmac/discrete_ops.hpp"
#include "ptmac/errors.hpp"
#include "ptmac/stepper.hpp"

namespace ptmac {

CellField LimitState::theta() const {
    CellField t(rho.size());
    for (int k = 0; k < rho.size(); ++k) t[k] = 1.0 / rho[k];
    return t;
}

LimitState init_limit_state(const Mesh& mesh, const CaseSpec& spec, double eps) {
    const State s = init_state(mesh, spec, eps);
    LimitState ls;
    ls.rho = CellField(mesh.cell_count());
    for (int k = 0; k < mesh.cell_count(); ++k) {
        ls.rho[k] = 1.0 / spec.theta0(mesh.cell_center(k), eps);
    }
    ls.U = s.u;
    ls.pi = CellField(mesh.cell_count(), 0.0);
    return ls;
}

CellField limit_mass_update(const Mesh& mesh, const LimitState& ls, double dt) {
    return mass_update(mesh, ls.rho, ls.U, dt);
}

SparseMatrix mac_laplacian(const Mesh& mesh) {
    const int n = mesh.cell_count();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(n) * (1 + 2 * mesh.dim()));
    for (int a = 0; a < mesh.dim(); ++a) {
        const double w = 1.0 / (mesh.spacing(a) * mesh.spacing(a));
        for (int k = 0; k < n; ++k) {
            trip.emplace_back(k, k, -2.0 * w);
            trip.emplace_back(k, mesh.shift(k, a, -1), w);
            trip.emplace_back(k, mesh.shift(k, a, +1), w);
        }
    }
    SparseMatrix A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
    return A;
}

PressureSolver::PressureSolver(const Mesh& mesh, double tolerance, int max_iterations)
    : mesh_(&mesh), tolerance_(tolerance), max_iterations_(max_iterations), lap_(mac_laplacian(mesh)),
      precond_(std::make_unique<PeriodicFftHelmholtz>(mesh)) {
    precond_->set_coefficients(0.0, {1.0, 1.0});
}

PressureSolver::~PressureSolver() = default;

CellField PressureSolver::solve(const FaceField& Un, double eta, double dt, double* residual,
                                int* iterations) {
    const CellField div = div_cells(*mesh_, Un);
    const int n = mesh_->cell_count();
    Eigen::VectorXd b(n);
    for (int k = 0; k < n; ++k) b[k] = div[k] / (eta * dt);
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    if (b.lpNorm<Eigen::Infinity>() == 0.0) {
        if (residual) *residual = 0.0;
        if (iterations) *iterations = 0;
        return CellField(n, 0.0);
    }
    double achieved = 0.0;
    const int its = solve_zero_mean_symmetric(lap_, b, x, precond_.get(), tolerance_, max_iterations_, &achieved);
    if (residual) *residual = achieved;
    if (iterations) *iterations = its;
    return CellField(std::vector<double>(x.data(), x.data() + n));
}

CellField solve_pressure(const Mesh& mesh, const FaceField& Un, double eta, double dt, double tol) {
    PressureSolver s(mesh, tol);
    return s.solve(Un, eta, dt);
}

FaceField limit_momentum_update(const Mesh& mesh, const LimitState& ls, const CellField& rho_next,
                                const CellField& pi_next, double dt) {
    return momentum_update(mesh, ls.rho, ls.U, rho_next, pi_next, dt, 1.0);
}

LimitStepper::LimitStepper(const Mesh& mesh, LimitStepperConfig config)
    : mesh_(&mesh), config_(config),
      pressure_(std::make_unique<PressureSolver>(mesh, config.pressure_tolerance)) {}

LimitStepper::~LimitStepper() = default;

double LimitStepper::dt_max() const {
    return config_.dt_max > 0.0 ? config_.dt_max : mesh_->min_spacing();
}

std::pair<LimitState, LimitStepReport> LimitStepper::step(const LimitState& ls, double dt_limit) {
    const Mesh& mesh = *mesh_;
    LimitStepReport rep;
    rep.dt = std::min(compute_dt(mesh, ls.rho, ls.U, config_.beta, dt_max(), config_.safety), dt_limit);
    if (!(rep.dt > 0.0)) throw SolverError("time step must be positive");
    rep.eta = config_.eta_fixed ? *config_.eta_fixed : choose_eta(mesh, ls.rho, config_.eta_floor);
    rep.kinetic_before = kinetic_energy(mesh, ls.rho, ls.U);

    LimitState next;
    next.rho = limit_mass_update(mesh, ls, rep.dt);
    next.pi = pressure_->solve(ls.U, rep.eta, rep.dt, &rep.cg_residual, &rep.cg_iterations);
    next.U = limit_momentum_update(mesh, ls, next.rho, next.pi, rep.dt);
    next.time = ls.time + rep.dt;
    next.step_index = ls.step_index + 1;
    rep.kinetic_after = kinetic_energy(mesh, next.rho, next.U);
    return {std::move(next), rep};
}

} // namespace ptmac
