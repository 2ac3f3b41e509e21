#pragma once

#include <array>

#include "ptmac/fields.hpp"
#include "ptmac/mesh.hpp"

namespace ptmac {

/// Face gradient (d_E^(a) p)_sigma = |sigma| (p_L - p_K) / |D_sigma|.
FaceField grad_faces(const Mesh& mesh, const CellField& p);

/// Cell divergence (div_M u)_K = (1/|K|) sum_sigma |sigma| u_{sigma,K}.
CellField div_cells(const Mesh& mesh, const FaceField& u);

/// Cell divergence of a single-valued face flux (already multiplied by |sigma|):
/// (1/|K|) sum_sigma F_{sigma,K}.
CellField flux_divergence(const Mesh& mesh, const FaceField& flux);

/// Volume-weighted two-cell average rho_{D_sigma}.
FaceField dual_density(const Mesh& mesh, const CellField& rho);

/// Fluxes through the faces of the dual cells.
///
/// `flux[a][b](f)` is the mass flux through the dual face (a, b, f), oriented
/// along +e^(b), i.e. out of D_f and into D_{f+e_b}. `upwind[a][b](f)` is the
/// velocity transported across that dual face.
struct DualMassBalanceData {
    FaceField rho_dual;
    std::array<std::array<FaceField, kMaxDim>, kMaxDim> flux;
    std::array<std::array<FaceField, kMaxDim>, kMaxDim> upwind;
};

/// Assembles dual fluxes as half-sums of the primal mass fluxes so that the
/// dual cells satisfy a discrete mass balance whenever the primal cells do.
DualMassBalanceData dual_momentum_fluxes(const Mesh& mesh, const CellField& rho,
                                         const FaceField& u, const FaceField& primal_flux);

/// (1/|D_sigma|) sum_eps F_{eps,sigma} u_{eps,up}, the momentum convection term.
FaceField dual_convection(const Mesh& mesh, const DualMassBalanceData& dual);

/// (1/|D_sigma|) sum_eps F_{eps,sigma}, the dual mass-flux divergence.
FaceField dual_flux_divergence(const Mesh& mesh, const DualMassBalanceData& dual);

} // namespace ptmac
