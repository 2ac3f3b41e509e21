#pragma once

#include <optional>

#include "ptmac/fields.hpp"
#include "ptmac/mesh.hpp"

namespace ptmac {

/// Helmholtz function psi_gamma(z) = z^gamma / (gamma - 1); needs gamma > 1.
double helmholtz(double z, double gamma);

/// Relative internal energy Pi_gamma(z) = psi(z) - psi(1) - psi'(1)(z - 1).
///
/// Evaluated with a binomial series near z = 1, where the direct formula
/// cancels catastrophically; low Mach states sit at z - 1 = O(eps^2).
double relative_internal_energy(double z, double gamma);

/// sum_sigma |D_sigma| rho_D u_sigma^2 / 2.
double kinetic_energy(const Mesh& mesh, const CellField& rho, const FaceField& u);

/// (1/eps^2) sum_K |K| Pi_gamma(Theta_K); empty when gamma <= 1.
std::optional<double> scaled_internal_energy(const Mesh& mesh, const CellField& theta_total,
                                             double eps, double gamma);

struct EnergyBreakdown {
    double kinetic = 0.0;
    std::optional<double> internal;
    /// Kinetic plus scaled internal energy; just kinetic when internal is unavailable.
    double total() const { return kinetic + internal.value_or(0.0); }
};

EnergyBreakdown total_energy(const Mesh& mesh, const State& state, double eps, double gamma);

/// (sum_K |K| |f_K - shift|^gamma)^(1/gamma).
double lgamma_norm(const Mesh& mesh, const CellField& f, double gamma, double shift = 0.0);

/// Face velocities averaged to cell centres, one field per axis.
std::array<CellField, kMaxDim> cell_centered_velocity(const Mesh& mesh, const FaceField& u);

/// M = sqrt(|u|^2 / (gamma p / rho)) with cell-centred velocity.
CellField mach_field(const Mesh& mesh, const State& state, double gamma);

double max_abs_divergence(const Mesh& mesh, const FaceField& u);

struct DiagnosticsRecord {
    double time = 0.0;
    long step = 0;
    double dt = 0.0;
    double mass = 0.0;
    double theta_total = 0.0;
    std::array<double, kMaxDim> momentum{0.0, 0.0};
    double kinetic = 0.0;
    std::optional<double> internal;
    double total_energy = 0.0;
    double rho_theta_deviation = 0.0; ///< ||rho theta - 1||_{L^gamma}
    double max_div = 0.0;
    double min_rho = 0.0;
    double min_theta = 0.0;
    int newton_iterations = 0;
};

DiagnosticsRecord make_record(const Mesh& mesh, const State& state, double eps, double gamma,
                              int newton_iterations = 0, double dt = 0.0);

/// sum_K |K| q_K.
double cell_total(const Mesh& mesh, const CellField& q);

/// Per-direction momentum sum_sigma |D_sigma| rho_D u_sigma.
std::array<double, kMaxDim> momentum_totals(const Mesh& mesh, const CellField& rho, const FaceField& u);

} // namespace ptmac
