#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "ptmac/mesh.hpp"

namespace ptmac {

/// Initial-value problem for one benchmark. The initial functions take the
/// Mach number eps because several data sets are eps-dependent.
struct CaseSpec {
    std::string name;
    int dim = 1;
    std::vector<Interval> extents;
    std::vector<int> counts;
    double gamma = 1.4;
    double default_eps = 1.0;
    std::vector<double> eps_list;
    double t_end = 0.0;
    std::vector<double> snapshot_times;
    std::vector<std::string> artifacts;
    /// Default lower bound for the stabilisation parameter eta in runs of
    /// this case; 0 means eta follows the density bound alone.
    double eta_floor = 0.0;

    std::function<double(const Point&, double eps)> rho0;
    std::function<double(const Point&, double eps)> theta0;
    /// Velocity component along `axis` at point x.
    std::function<double(const Point&, int axis, double eps)> velocity0;
};

CaseSpec case_colliding_pulses();
CaseSpec case_extreme_riemann();
CaseSpec case_riemann_1d();
CaseSpec case_stationary_vortex();
CaseSpec case_cylindrical_explosion();
CaseSpec case_baroclinic();

/// Looks up a case by its CLI identifier; throws ConfigError for unknown names.
CaseSpec case_by_name(std::string_view name);
std::vector<std::string> case_names();

namespace vortex {
inline constexpr double kCenterX = 0.5;
inline constexpr double kCenterY = 0.5;
inline constexpr double kAmplitude = 0.1;
inline constexpr double kInnerRadius = 0.2;
inline constexpr double kOuterRadius = 0.4;

/// Angular velocity profile u_theta(r).
double angular_velocity(double r);
/// Closed form of int_0^r u_theta(s)^2 / s ds.
double swirl_integral(double r);
} // namespace vortex

namespace baroclinic {
/// Stratification offset Phi(y).
double stratification(double y);
} // namespace baroclinic

} // namespace ptmac
