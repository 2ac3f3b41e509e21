#include "ptmac/cases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ptmac/errors.hpp"

namespace ptmac {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

} // namespace

CaseSpec case_colliding_pulses() {
    CaseSpec c;
    c.name = "colliding-pulses";
    c.dim = 1;
    c.extents = {{-1.0, 1.0}};
    c.counts = {200};
    c.gamma = 1.4;
    c.default_eps = 0.1;
    c.eps_list = {0.1};
    c.t_end = 0.08;
    c.snapshot_times = {0.04, 0.08};
    c.artifacts = {"fig1"};
    const double gamma = c.gamma;
    c.rho0 = [](const Point& x, double eps) {
        return 0.955 + 0.5 * eps * (1.0 - std::cos(kTwoPi * x[0]));
    };
    // theta is only given through (rho theta)^gamma
    c.theta0 = [gamma, rho0 = c.rho0](const Point& x, double eps) {
        const double p = 1.0 + eps * gamma * (1.0 - std::cos(kTwoPi * x[0]));
        return std::pow(p, 1.0 / gamma) / rho0(x, eps);
    };
    c.velocity0 = [gamma](const Point& x, int, double) {
        return -sign(x[0]) * std::sqrt(gamma) * (1.0 - std::cos(kTwoPi * x[0]));
    };
    return c;
}

CaseSpec case_extreme_riemann() {
    CaseSpec c;
    c.name = "extreme-riemann";
    c.dim = 1;
    c.extents = {{0.0, 1.0}};
    c.counts = {100};
    c.gamma = 1.4;
    c.default_eps = 1.0;
    c.eps_list = {1.0};
    c.t_end = 0.15;
    c.snapshot_times = {0.15};
    c.artifacts = {"fig2"};
    c.rho0 = [](const Point&, double) { return 1.0; };
    c.theta0 = [](const Point&, double) { return 0.52; };
    c.velocity0 = [](const Point& x, int, double) { return x[0] < 0.5 ? -2.0 : 2.0; };
    return c;
}

CaseSpec case_riemann_1d() {
    CaseSpec c;
    c.name = "riemann-1d";
    c.dim = 1;
    c.extents = {{0.0, 1.0}};
    c.counts = {300};
    c.gamma = 1.4;
    c.default_eps = 1.0;
    c.eps_list = {1.0, 0.01};
    c.t_end = 0.05;
    c.snapshot_times = {0.05};
    c.artifacts = {"fig3"};
    c.rho0 = [](const Point&, double) { return 1.0; };
    c.theta0 = [](const Point&, double) { return 1.0; };
    c.velocity0 = [](const Point& p, int, double eps) {
        const double x = p[0];
        const double half_eps2 = 0.5 * eps * eps;
        if (x <= 0.2 || x >= 0.8) return 1.0 - half_eps2;
        if (x >= 0.25 && x <= 0.75) return 1.0 + half_eps2;
        return 1.0;
    };
    return c;
}

namespace vortex {

namespace {
constexpr double a1 = kAmplitude / kInnerRadius;
constexpr double a2 = -kAmplitude * kOuterRadius / (kInnerRadius - kOuterRadius);
constexpr double a3 = kAmplitude / (kInnerRadius - kOuterRadius);
} // namespace

double angular_velocity(double r) {
    if (r <= kInnerRadius) return a1 * r;
    if (r <= kOuterRadius) return a2 + a3 * r;
    return 0.0;
}

double swirl_integral(double r) {
    const double r1 = std::min(r, kInnerRadius);
    double total = 0.5 * a1 * a1 * r1 * r1;
    if (r > kInnerRadius) {
        const double r2 = std::min(r, kOuterRadius);
        // int (a2 + a3 s)^2 / s ds = a2^2 ln s + 2 a2 a3 s + a3^2 s^2 / 2
        total += a2 * a2 * std::log(r2 / kInnerRadius) + 2.0 * a2 * a3 * (r2 - kInnerRadius) +
                 0.5 * a3 * a3 * (r2 * r2 - kInnerRadius * kInnerRadius);
    }
    return total;
}

} // namespace vortex

CaseSpec case_stationary_vortex() {
    CaseSpec c;
    c.name = "stationary-vortex";
    c.dim = 2;
    c.extents = {{0.0, 1.0}, {0.0, 1.0}};
    c.counts = {100, 100};
    c.gamma = 2.0;
    c.default_eps = 1e-1;
    c.eps_list = {1e-1, 1e-2, 1e-3, 1e-4};
    c.t_end = 1.0;
    c.snapshot_times = {1.0};
    c.artifacts = {"table1", "table2", "fig4", "fig5", "fig6", "fig7"};
    c.eta_floor = 3.0;
    auto radius = [](const Point& x) {
        return std::hypot(x[0] - vortex::kCenterX, x[1] - vortex::kCenterY);
    };
    c.rho0 = [radius](const Point& x, double eps) {
        return 1.0 + 0.5 * eps * eps * vortex::swirl_integral(radius(x));
    };
    c.theta0 = [](const Point&, double) { return 1.0; };
    c.velocity0 = [radius](const Point& x, int axis, double) {
        const double r = radius(x);
        if (r == 0.0) return 0.0;
        const double ut = vortex::angular_velocity(r);
        return axis == 0 ? ut * (x[1] - vortex::kCenterY) / r : -ut * (x[0] - vortex::kCenterX) / r;
    };
    return c;
}

CaseSpec case_cylindrical_explosion() {
    CaseSpec c;
    c.name = "cylindrical-explosion";
    c.dim = 2;
    c.extents = {{-1.0, 1.0}, {-1.0, 1.0}};
    c.counts = {200, 200};
    c.gamma = 1.0;
    c.default_eps = 1e-4;
    c.eps_list = {1.0, 1e-4};
    c.t_end = 0.05;
    c.snapshot_times = {0.05};
    c.artifacts = {"fig8", "fig9"};
    c.rho0 = [](const Point& x, double eps) {
        return std::hypot(x[0], x[1]) <= 0.5 ? 1.0 + eps * eps : 1.0;
    };
    c.theta0 = [](const Point&, double) { return 1.0; };
    c.velocity0 = [rho0 = c.rho0](const Point& x, int axis, double eps) {
        const double r = std::hypot(x[0], x[1]);
        if (!(r > 1e-15)) return 0.0;
        const double alpha = std::max(0.0, 1.0 - r) * (1.0 - std::exp(-16.0 * r * r));
        return -alpha / rho0(x, eps) * x[axis] / r;
    };
    return c;
}

namespace baroclinic {
double stratification(double y) { return (y >= 0.0 && y <= 0.2) ? 4.5 * y : 4.5 * y - 1.8; }
} // namespace baroclinic

CaseSpec case_baroclinic() {
    CaseSpec c;
    c.name = "baroclinic";
    c.dim = 2;
    c.extents = {{-1.0, 1.0}, {0.0, 0.4}};
    c.counts = {800, 160};
    c.gamma = 1.4;
    c.default_eps = 0.05;
    c.eps_list = {0.05};
    c.t_end = 1.0;
    c.snapshot_times = {0.0, 0.5, 1.0};
    c.artifacts = {"fig10", "fig11"};
    const double gamma = c.gamma;
    const double pi = std::numbers::pi;
    c.rho0 = [pi](const Point& x, double eps) {
        return 1.0 + eps / 2000.0 * (1.0 + std::cos(pi * x[0])) + baroclinic::stratification(x[1]);
    };
    c.theta0 = [gamma, pi, rho0 = c.rho0](const Point& x, double eps) {
        const double p = 1.0 + 0.5 * eps * gamma * (1.0 + std::cos(pi * x[0]));
        return std::pow(p, 1.0 / gamma) / rho0(x, eps);
    };
    c.velocity0 = [gamma, pi](const Point& x, int axis, double) {
        return axis == 0 ? 0.5 * std::sqrt(gamma) * (1.0 + std::cos(pi * x[0])) : 0.0;
    };
    return c;
}

std::vector<std::string> case_names() {
    return {"colliding-pulses", "extreme-riemann", "riemann-1d",
            "stationary-vortex", "cylindrical-explosion", "baroclinic"};
}

CaseSpec case_by_name(std::string_view name) {
    if (name == "colliding-pulses") return case_colliding_pulses();
    if (name == "extreme-riemann") return case_extreme_riemann();
    if (name == "riemann-1d") return case_riemann_1d();
    if (name == "stationary-vortex") return case_stationary_vortex();
    if (name == "cylindrical-explosion") return case_cylindrical_explosion();
    if (name == "baroclinic") return case_baroclinic();
    throw ConfigError("unknown case '" + std::string(name) + "'");
}

} // namespace ptmac
