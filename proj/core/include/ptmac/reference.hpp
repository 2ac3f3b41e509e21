#pragma once

#include <array>
#include <vector>

namespace ptmac {

struct CaseSpec;

/// Conservative variables (rho, rho u, rho theta) on a uniform periodic 1D grid.
struct ConservativeState1D {
    double x0 = 0.0;
    double h = 1.0;
    std::vector<double> rho;
    std::vector<double> mom;
    std::vector<double> rho_theta;
    double time = 0.0;
    long steps = 0;

    int size() const { return static_cast<int>(rho.size()); }
    double cell_center(int i) const { return x0 + (i + 0.5) * h; }
};

using Cons3 = std::array<double, 3>;

/// Physical flux (rho u, rho u^2 + p/eps^2, rho theta u) with p = (rho theta)^gamma.
Cons3 euler_flux(const Cons3& q, double eps, double gamma);

/// Largest characteristic speed |u| + c/eps, c = sqrt(gamma p / rho).
double max_wave_speed(const Cons3& q, double eps, double gamma);

/// Local Lax-Friedrichs flux between a left and a right cell state.
Cons3 rusanov_flux(const Cons3& left, const Cons3& right, double eps, double gamma);

/// Cell-centre samples of the case's initial data.
ConservativeState1D sample_reference_initial(const CaseSpec& spec, int n_cells, double eps);

/// Forward Euler with Rusanov fluxes to t_end, dt = cfl h / max lambda.
/// Throws SolverError when rho or rho theta loses positivity.
ConservativeState1D run_reference(const CaseSpec& spec, int n_cells, double t_end, double eps,
                                  double cfl = 0.45);

} // namespace ptmac
