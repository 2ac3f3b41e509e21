#pragma once

#include "ptmac/fields.hpp"
#include "ptmac/mesh.hpp"

namespace ptmac {

/// Upwind mass flux F_{sigma,K} = |sigma| (rho_K u+ + rho_L u-), stored once
/// per face and oriented from the minus cell to the plus cell.
FaceField mass_flux(const Mesh& mesh, const CellField& rho, const FaceField& u);

/// Velocity shift delta u = (eta dt / eps^2) grad_E p.
FaceField stab_shift(const Mesh& mesh, const CellField& p, double eta, double dt, double eps);

/// Non-negative and non-positive parts of the stabilised velocity
/// v = u - du, split so that the old velocity and the pressure shift are
/// upwinded independently.
struct SignSplitVelocity {
    double plus = 0.0;
    double minus = 0.0;
    double sum() const { return plus + minus; }
};

/// Split with respect to the reference normal of the face (minus cell K).
inline SignSplitVelocity sign_split(double u_face, double du_face) {
    const double up = u_face > 0.0 ? u_face : 0.0;
    const double um = u_face < 0.0 ? u_face : 0.0;
    const double dup = du_face > 0.0 ? du_face : 0.0;
    const double dum = du_face < 0.0 ? du_face : 0.0;
    return {up - dum, um - dup};
}

/// Implicit upwind flux of Theta = rho theta with the stabilised velocity,
/// |sigma| (Theta_K v+ + Theta_L v-), oriented from minus to plus cell.
FaceField temp_flux(const Mesh& mesh, const CellField& theta_total, const FaceField& u,
                    const FaceField& du);

} // namespace ptmac
