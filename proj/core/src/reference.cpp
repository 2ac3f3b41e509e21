#include "ptmac/reference.hpp"

#include <algorithm>
#include <cmath>

#include "ptmac/cases.hpp"
#include "ptmac/errors.hpp"

namespace ptmac {

Cons3 euler_flux(const Cons3& q, double eps, double gamma) {
    const double u = q[1] / q[0];
    const double p = std::pow(q[2], gamma);
    return {q[1], q[1] * u + p / (eps * eps), q[2] * u};
}

double max_wave_speed(const Cons3& q, double eps, double gamma) {
    const double u = q[1] / q[0];
    const double p = std::pow(q[2], gamma);
    return std::abs(u) + std::sqrt(gamma * p / q[0]) / eps;
}

Cons3 rusanov_flux(const Cons3& left, const Cons3& right, double eps, double gamma) {
    const Cons3 fl = euler_flux(left, eps, gamma);
    const Cons3 fr = euler_flux(right, eps, gamma);
    const double lambda = std::max(max_wave_speed(left, eps, gamma), max_wave_speed(right, eps, gamma));
    Cons3 f;
    for (int m = 0; m < 3; ++m) f[m] = 0.5 * (fl[m] + fr[m]) - 0.5 * lambda * (right[m] - left[m]);
    return f;
}

ConservativeState1D sample_reference_initial(const CaseSpec& spec, int n_cells, double eps) {
    if (spec.dim != 1) throw ConfigError("the reference solver is one-dimensional");
    if (n_cells < 1) throw ConfigError("reference grid needs at least one cell");
    ConservativeState1D s;
    s.x0 = spec.extents[0].lo;
    s.h = spec.extents[0].length() / n_cells;
    s.rho.resize(n_cells);
    s.mom.resize(n_cells);
    s.rho_theta.resize(n_cells);
    for (int i = 0; i < n_cells; ++i) {
        const Point x{s.cell_center(i), 0.0};
        const double r = spec.rho0(x, eps);
        s.rho[i] = r;
        s.mom[i] = r * spec.velocity0(x, 0, eps);
        s.rho_theta[i] = r * spec.theta0(x, eps);
    }
    return s;
}

ConservativeState1D run_reference(const CaseSpec& spec, int n_cells, double t_end, double eps, double cfl) {
    ConservativeState1D s = sample_reference_initial(spec, n_cells, eps);
    const int n = n_cells;
    const double gamma = spec.gamma;
    std::vector<Cons3> flux(n);
    while (s.time < t_end) {
        double lmax = 0.0;
        for (int i = 0; i < n; ++i) {
            lmax = std::max(lmax, max_wave_speed({s.rho[i], s.mom[i], s.rho_theta[i]}, eps, gamma));
        }
        double dt = cfl * s.h / lmax;
        if (s.time + dt > t_end) dt = t_end - s.time;
        // flux[i] sits on the left face of cell i
        for (int i = 0; i < n; ++i) {
            const int l = (i + n - 1) % n;
            flux[i] = rusanov_flux({s.rho[l], s.mom[l], s.rho_theta[l]}, {s.rho[i], s.mom[i], s.rho_theta[i]},
                                   eps, gamma);
        }
        const double k = dt / s.h;
        for (int i = 0; i < n; ++i) {
            const int r = (i + 1) % n;
            s.rho[i] -= k * (flux[r][0] - flux[i][0]);
            s.mom[i] -= k * (flux[r][1] - flux[i][1]);
            s.rho_theta[i] -= k * (flux[r][2] - flux[i][2]);
            if (!(s.rho[i] > 0.0) || !(s.rho_theta[i] > 0.0)) {
                throw SolverError("reference solver lost positivity");
            }
        }
        s.time = (s.time + dt >= t_end) ? t_end : s.time + dt;
        ++s.steps;
    }
    return s;
}

} // namespace ptmac
