#include "ptmac/discrete_ops.hpp"

namespace ptmac {

FaceField grad_faces(const Mesh& mesh, const CellField& p) {
    FaceField g(mesh);
    for (int a = 0; a < mesh.dim(); ++a) {
        const double scale = mesh.face_area(a) / mesh.dual_volume(a);
        auto out = g.component(a);
        for (int f = 0; f < mesh.face_count(a); ++f) {
            out[f] = scale * (p[mesh.face_plus_cell(a, f)] - p[mesh.face_minus_cell(a, f)]);
        }
    }
    return g;
}

CellField flux_divergence(const Mesh& mesh, const FaceField& flux) {
    const int n = mesh.cell_count();
    CellField div(n);
    const double inv_vol = 1.0 / mesh.cell_volume();
    for (int k = 0; k < n; ++k) {
        double s = 0.0;
        for (int a = 0; a < mesh.dim(); ++a) {
            s += flux(a, mesh.cell_plus_face(a, k)) - flux(a, mesh.cell_minus_face(a, k));
        }
        div[k] = inv_vol * s;
    }
    return div;
}

CellField div_cells(const Mesh& mesh, const FaceField& u) {
    FaceField flux(mesh);
    for (int a = 0; a < mesh.dim(); ++a) {
        const double area = mesh.face_area(a);
        auto src = u.component(a);
        auto dst = flux.component(a);
        for (int f = 0; f < mesh.face_count(a); ++f) dst[f] = area * src[f];
    }
    return flux_divergence(mesh, flux);
}

FaceField dual_density(const Mesh& mesh, const CellField& rho) {
    FaceField out(mesh);
    const double vol = mesh.cell_volume();
    for (int a = 0; a < mesh.dim(); ++a) {
        const double inv = 1.0 / (2.0 * mesh.dual_volume(a));
        auto dst = out.component(a);
        for (int f = 0; f < mesh.face_count(a); ++f) {
            dst[f] = inv * (vol * rho[mesh.face_minus_cell(a, f)] + vol * rho[mesh.face_plus_cell(a, f)]);
        }
    }
    return out;
}

DualMassBalanceData dual_momentum_fluxes(const Mesh& mesh, const CellField& rho,
                                         const FaceField& u, const FaceField& primal_flux) {
    DualMassBalanceData d;
    d.rho_dual = dual_density(mesh, rho);
    const int dim = mesh.dim();
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            FaceField& F = d.flux[a][b];
            FaceField& up = d.upwind[a][b];
            F = FaceField(mesh);
            up = FaceField(mesh);
            auto Fa = F.component(a);
            auto upa = up.component(a);
            for (int f = 0; f < mesh.face_count(a); ++f) {
                const int next = mesh.shift(f, b, +1);
                double flux;
                if (a == b) {
                    // dual face through the centre of the plus cell L = f:
                    // average of the two primal a-fluxes bounding L
                    flux = 0.5 * (primal_flux(a, f) + primal_flux(a, mesh.cell_plus_face(a, f)));
                } else {
                    // transverse dual face: half of K's and half of L's plus-b face
                    const int K = mesh.face_minus_cell(a, f);
                    const int L = mesh.face_plus_cell(a, f);
                    flux = 0.5 * (primal_flux(b, mesh.cell_plus_face(b, K)) +
                                  primal_flux(b, mesh.cell_plus_face(b, L)));
                }
                Fa[f] = flux;
                if (flux > 0.0) {
                    upa[f] = u(a, f);
                } else if (flux < 0.0) {
                    upa[f] = u(a, next);
                } else {
                    upa[f] = 0.5 * (u(a, f) + u(a, next));
                }
            }
        }
    }
    return d;
}

FaceField dual_convection(const Mesh& mesh, const DualMassBalanceData& dual) {
    FaceField out(mesh);
    for (int a = 0; a < mesh.dim(); ++a) {
        const double inv_vol = 1.0 / mesh.dual_volume(a);
        auto dst = out.component(a);
        for (int f = 0; f < mesh.face_count(a); ++f) {
            double s = 0.0;
            for (int b = 0; b < mesh.dim(); ++b) {
                const int prev = mesh.shift(f, b, -1);
                s += dual.flux[a][b](a, f) * dual.upwind[a][b](a, f) -
                     dual.flux[a][b](a, prev) * dual.upwind[a][b](a, prev);
            }
            dst[f] = inv_vol * s;
        }
    }
    return out;
}

FaceField dual_flux_divergence(const Mesh& mesh, const DualMassBalanceData& dual) {
    FaceField out(mesh);
    for (int a = 0; a < mesh.dim(); ++a) {
        const double inv_vol = 1.0 / mesh.dual_volume(a);
        auto dst = out.component(a);
        for (int f = 0; f < mesh.face_count(a); ++f) {
            double s = 0.0;
            for (int b = 0; b < mesh.dim(); ++b) {
                s += dual.flux[a][b](a, f) - dual.flux[a][b](a, mesh.shift(f, b, -1));
            }
            dst[f] = inv_vol * s;
        }
    }
    return out;
}

} // namespace ptmac
