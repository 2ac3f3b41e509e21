#include "ptmac/fluxes.hpp"

#include "ptmac/discrete_ops.hpp"

namespace ptmac {

FaceField mass_flux(const Mesh& mesh, const CellField& rho, const FaceField& u) {
    FaceField F(mesh);
    for (int a = 0; a < mesh.dim(); ++a) {
        const double area = mesh.face_area(a);
        auto dst = F.component(a);
        auto vel = u.component(a);
        for (int f = 0; f < mesh.face_count(a); ++f) {
            const auto v = sign_split(vel[f], 0.0);
            dst[f] = area * (rho[mesh.face_minus_cell(a, f)] * v.plus +
                             rho[mesh.face_plus_cell(a, f)] * v.minus);
        }
    }
    return F;
}

FaceField stab_shift(const Mesh& mesh, const CellField& p, double eta, double dt, double eps) {
    FaceField du = grad_faces(mesh, p);
    const double c = eta * dt / (eps * eps);
    for (int a = 0; a < mesh.dim(); ++a) {
        for (double& v : du.component(a)) v *= c;
    }
    return du;
}

FaceField temp_flux(const Mesh& mesh, const CellField& theta_total, const FaceField& u,
                    const FaceField& du) {
    FaceField F(mesh);
    for (int a = 0; a < mesh.dim(); ++a) {
        const double area = mesh.face_area(a);
        auto dst = F.component(a);
        for (int f = 0; f < mesh.face_count(a); ++f) {
            const auto v = sign_split(u(a, f), du(a, f));
            dst[f] = area * (theta_total[mesh.face_minus_cell(a, f)] * v.plus +
                             theta_total[mesh.face_plus_cell(a, f)] * v.minus);
        }
    }
    return F;
}

} // namespace ptmac
