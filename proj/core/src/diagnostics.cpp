#include "ptmac/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "ptmac/discrete_ops.hpp"
#include "ptmac/errors.hpp"

namespace ptmac {

double helmholtz(double z, double gamma) {
    if (!(gamma > 1.0)) throw UnsupportedDiagnostic("psi_gamma requires gamma > 1");
    if (!(z > 0.0)) throw DomainError("psi_gamma requires z > 0");
    return std::pow(z, gamma) / (gamma - 1.0);
}

double relative_internal_energy(double z, double gamma) {
    if (!(gamma > 1.0)) throw UnsupportedDiagnostic("Pi_gamma requires gamma > 1");
    if (!(z > 0.0)) throw DomainError("Pi_gamma requires z > 0");
    const double x = z - 1.0;
    if (std::abs(x) < 0.05) {
        // z^gamma - 1 - gamma x = sum_{k>=2} binom(gamma, k) x^k
        double coeff = gamma;  // binom(gamma, 1)
        double power = x;
        double sum = 0.0;
        for (int k = 2; k < 80; ++k) {
            coeff *= (gamma - k + 1) / k;
            power *= x;
            const double term = coeff * power;
            sum += term;
            if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
        }
        return sum / (gamma - 1.0);
    }
    return (std::expm1(gamma * std::log1p(x)) - gamma * x) / (gamma - 1.0);
}

double cell_total(const Mesh& mesh, const CellField& q) {
    double s = 0.0;
    for (int k = 0; k < q.size(); ++k) s += q[k];
    return mesh.cell_volume() * s;
}

std::array<double, kMaxDim> momentum_totals(const Mesh& mesh, const CellField& rho, const FaceField& u) {
    const FaceField rd = dual_density(mesh, rho);
    std::array<double, kMaxDim> m{0.0, 0.0};
    for (int a = 0; a < mesh.dim(); ++a) {
        double s = 0.0;
        for (int f = 0; f < mesh.face_count(a); ++f) s += rd(a, f) * u(a, f);
        m[a] = mesh.dual_volume(a) * s;
    }
    return m;
}

double kinetic_energy(const Mesh& mesh, const CellField& rho, const FaceField& u) {
    const FaceField rd = dual_density(mesh, rho);
    double e = 0.0;
    for (int a = 0; a < mesh.dim(); ++a) {
        double s = 0.0;
        for (int f = 0; f < mesh.face_count(a); ++f) s += rd(a, f) * u(a, f) * u(a, f);
        e += 0.5 * mesh.dual_volume(a) * s;
    }
    return e;
}

std::optional<double> scaled_internal_energy(const Mesh& mesh, const CellField& theta_total,
                                             double eps, double gamma) {
    if (!(gamma > 1.0)) return std::nullopt;
    double s = 0.0;
    for (int k = 0; k < theta_total.size(); ++k) s += relative_internal_energy(theta_total[k], gamma);
    return mesh.cell_volume() * s / (eps * eps);
}

EnergyBreakdown total_energy(const Mesh& mesh, const State& state, double eps, double gamma) {
    EnergyBreakdown e;
    e.kinetic = kinetic_energy(mesh, state.rho, state.u);
    e.internal = scaled_internal_energy(mesh, state.theta_total(), eps, gamma);
    return e;
}

double lgamma_norm(const Mesh& mesh, const CellField& f, double gamma, double shift) {
    double s = 0.0;
    for (int k = 0; k < f.size(); ++k) s += std::pow(std::abs(f[k] - shift), gamma);
    return std::pow(mesh.cell_volume() * s, 1.0 / gamma);
}

std::array<CellField, kMaxDim> cell_centered_velocity(const Mesh& mesh, const FaceField& u) {
    std::array<CellField, kMaxDim> out;
    for (int a = 0; a < mesh.dim(); ++a) {
        out[a] = CellField(mesh.cell_count());
        for (int k = 0; k < mesh.cell_count(); ++k) {
            out[a][k] = 0.5 * (u(a, mesh.cell_minus_face(a, k)) + u(a, mesh.cell_plus_face(a, k)));
        }
    }
    return out;
}

CellField mach_field(const Mesh& mesh, const State& state, double gamma) {
    const auto uc = cell_centered_velocity(mesh, state.u);
    CellField m(mesh.cell_count());
    for (int k = 0; k < mesh.cell_count(); ++k) {
        double speed2 = 0.0;
        for (int a = 0; a < mesh.dim(); ++a) speed2 += uc[a][k] * uc[a][k];
        const double p = eos_pressure(state.rho[k] * state.theta[k], gamma);
        m[k] = std::sqrt(speed2 / (gamma * p / state.rho[k]));
    }
    return m;
}

double max_abs_divergence(const Mesh& mesh, const FaceField& u) {
    const CellField d = div_cells(mesh, u);
    double m = 0.0;
    for (int k = 0; k < d.size(); ++k) m = std::max(m, std::abs(d[k]));
    return m;
}

DiagnosticsRecord make_record(const Mesh& mesh, const State& state, double eps, double gamma,
                              int newton_iterations, double dt) {
    DiagnosticsRecord r;
    r.time = state.time;
    r.step = state.step_index;
    r.dt = dt;
    const CellField tt = state.theta_total();
    r.mass = cell_total(mesh, state.rho);
    r.theta_total = cell_total(mesh, tt);
    r.momentum = momentum_totals(mesh, state.rho, state.u);
    r.kinetic = kinetic_energy(mesh, state.rho, state.u);
    r.internal = scaled_internal_energy(mesh, tt, eps, gamma);
    r.total_energy = r.kinetic + r.internal.value_or(0.0);
    r.rho_theta_deviation = lgamma_norm(mesh, tt, gamma, 1.0);
    r.max_div = max_abs_divergence(mesh, state.u);
    r.min_rho = state.rho.min();
    r.min_theta = state.theta.min();
    r.newton_iterations = newton_iterations;
    return r;
}

} // namespace ptmac
