#include "ptmac/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ptmac/cases.hpp"
#include "ptmac/errors.hpp"

namespace ptmac {

bool CellField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double CellField::min() const {
    return values_.empty() ? std::numeric_limits<double>::quiet_NaN()
                           : *std::min_element(values_.begin(), values_.end());
}

double CellField::max() const {
    return values_.empty() ? std::numeric_limits<double>::quiet_NaN()
                           : *std::max_element(values_.begin(), values_.end());
}

FaceField::FaceField(const Mesh& mesh, double value) : dim_(mesh.dim()) {
    for (int a = 0; a < dim_; ++a) comp_[a].assign(static_cast<std::size_t>(mesh.face_count(a)), value);
}

bool FaceField::all_finite() const {
    for (int a = 0; a < dim_; ++a) {
        for (double v : comp_[a]) {
            if (!std::isfinite(v)) return false;
        }
    }
    return true;
}

double FaceField::max_abs() const {
    double m = 0.0;
    for (int a = 0; a < dim_; ++a) {
        for (double v : comp_[a]) m = std::max(m, std::abs(v));
    }
    return m;
}

CellField State::theta_total() const {
    CellField out(rho.size());
    for (int k = 0; k < rho.size(); ++k) out[k] = rho[k] * theta[k];
    return out;
}

namespace {

// Maps a point into the periodic box [lo, hi) so that initial functions which
// are only defined on the domain are sampled at the right periodic image.
Point wrap(const Mesh& mesh, Point x) {
    for (int a = 0; a < mesh.dim(); ++a) {
        const auto& e = mesh.extent(a);
        const double len = e.length();
        double s = std::fmod(x[a] - e.lo, len);
        if (s < 0.0) s += len;
        x[a] = e.lo + s;
    }
    return x;
}

} // namespace

State init_state(const Mesh& mesh, const CaseSpec& spec, double eps) {
    if (spec.dim != mesh.dim()) throw ConfigError("init_state: case and mesh dimensions differ");
    State s;
    s.rho = CellField(mesh.cell_count());
    s.theta = CellField(mesh.cell_count());
    s.u = FaceField(mesh);

    for (int k = 0; k < mesh.cell_count(); ++k) {
        const Point x = mesh.cell_center(k);
        s.rho[k] = spec.rho0(x, eps);
        s.theta[k] = spec.theta0(x, eps);
        if (!(s.rho[k] > 0.0) || !(s.theta[k] > 0.0)) {
            std::ostringstream msg;
            msg << "init_state: non-positive initial data in cell " << k << " (rho=" << s.rho[k]
                << ", theta=" << s.theta[k] << ")";
            throw InvalidInitialData(msg.str());
        }
    }

    // Two-point midpoint rule on the dual cell: one sample at the centre of
    // each half-cell. Data with a jump on the face itself get the exact dual
    // average instead of an arbitrary one-sided value.
    for (int a = 0; a < mesh.dim(); ++a) {
        const double quarter = 0.25 * mesh.spacing(a);
        for (int f = 0; f < mesh.face_count(a); ++f) {
            Point lo = mesh.face_center(a, f);
            Point hi = lo;
            lo[a] -= quarter;
            hi[a] += quarter;
            s.u(a, f) = 0.5 * (spec.velocity0(wrap(mesh, lo), a, eps) +
                               spec.velocity0(wrap(mesh, hi), a, eps));
        }
    }
    if (!s.u.all_finite()) throw InvalidInitialData("init_state: non-finite initial velocity");
    return s;
}

double eos_pressure(double theta_total, double gamma) {
    if (!(theta_total > 0.0)) throw DomainError("eos_pressure: rho*theta must be positive");
    return std::pow(theta_total, gamma);
}

CellField eos_pressure(const CellField& theta_total, double gamma) {
    if (!(gamma >= 1.0)) throw DomainError("eos_pressure: gamma must be >= 1");
    CellField p(theta_total.size());
    for (int k = 0; k < p.size(); ++k) p[k] = eos_pressure(theta_total[k], gamma);
    return p;
}

} // namespace ptmac
