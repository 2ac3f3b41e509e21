#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "ptmac/cases.hpp"
#include "ptmac/diagnostics.hpp"
#include "ptmac/discrete_ops.hpp"
#include "ptmac/limit_stepper.hpp"
#include "random_fields.hpp"

using namespace ptmac;
using namespace ptmac::testing;

TEST(Pressure, DivergenceFreeGivesZero) {
    const Mesh m = mesh_2d(8, 8);
    FaceField U(m, 0.0);
    for (int f = 0; f < 64; ++f) {
        U(0, f) = 0.7;
        U(1, f) = -0.1;
    }
    const CellField pi = solve_pressure(m, U, 1.5, 0.01);
    for (int k = 0; k < 64; ++k) EXPECT_EQ(pi[k], 0.0);
}

TEST(Pressure, FourierModeDenseOracle) {
    const int n = 16;
    const Mesh m = mesh_1d(n);
    const double eta = 1.5, dt = 0.02;
    CellField phi(n);
    for (int k = 0; k < n; ++k) phi[k] = std::cos(2.0 * std::numbers::pi * 3.0 * m.cell_center(k)[0]);
    const FaceField U = grad_faces(m, phi);
    const CellField pi = solve_pressure(m, U, eta, dt);

    // dense eigen-decomposition of the periodic Laplacian; invert on the range
    const Eigen::MatrixXd L = Eigen::MatrixXd(mac_laplacian(m));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
    Eigen::VectorXd rhs(n);
    const CellField d = div_cells(m, U);
    for (int k = 0; k < n; ++k) rhs(k) = d[k] / (eta * dt);
    const Eigen::VectorXd coeff = es.eigenvectors().transpose() * rhs;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        if (std::abs(es.eigenvalues()(i)) > 1e-8) x += coeff(i) / es.eigenvalues()(i) * es.eigenvectors().col(i);
    for (int k = 0; k < n; ++k) {
        EXPECT_NEAR(pi[k], x(k), 1e-10);
        EXPECT_NEAR(pi[k], phi[k] / (eta * dt), 1e-9);
    }
}

TEST(Pressure, LinearInEta) {
    std::mt19937 rng(73);
    const Mesh m = mesh_2d(10, 6);
    const FaceField U = random_faces(m, rng, -1.0, 1.0);
    const CellField a = solve_pressure(m, U, 1.5, 0.01);
    const CellField b = solve_pressure(m, U, 3.0, 0.01);
    double mean = 0.0;
    for (int k = 0; k < m.cell_count(); ++k) {
        EXPECT_NEAR(b[k], 0.5 * a[k], 1e-9 * std::abs(a.max()));
        mean += a[k];
    }
    EXPECT_NEAR(mean, 0.0, 1e-9);
    // stabilised constraint div(U - eta dt grad pi) = 0
    const FaceField g = grad_faces(m, a);
    FaceField w = U;
    for (int ax = 0; ax < 2; ++ax)
        for (int f = 0; f < m.cell_count(); ++f) w(ax, f) -= 1.5 * 0.01 * g(ax, f);
    EXPECT_LE(div_cells(m, w).max(), 1e-9);
    EXPECT_GE(div_cells(m, w).min(), -1e-9);
}

TEST(LimitMass, ConservesMass) {
    std::mt19937 rng(79);
    const Mesh m = mesh_2d(6, 6);
    LimitState ls;
    ls.rho = random_cells(m, rng, 0.5, 1.5);
    ls.U = random_faces(m, rng, -1.0, 1.0);
    ls.pi = CellField(36, 0.0);
    const CellField r = limit_mass_update(m, ls, 0.005);
    EXPECT_NEAR(cell_total(m, r), cell_total(m, ls.rho), 1e-13);
}

TEST(LimitMomentum, ConstantStateUnchangedAndMomentumConserved) {
    const Mesh m = mesh_2d(5, 5);
    LimitState ls;
    ls.rho = CellField(25, 1.2);
    ls.U = FaceField(m, 0.4);
    ls.pi = CellField(25, 0.0);
    const FaceField U = limit_momentum_update(m, ls, ls.rho, CellField(25, 3.0), 0.01);
    for (int a = 0; a < 2; ++a)
        for (int f = 0; f < 25; ++f) EXPECT_NEAR(U(a, f), 0.4, 1e-15);

    std::mt19937 rng(83);
    ls.rho = random_cells(m, rng, 0.5, 1.5);
    ls.U = random_faces(m, rng, -1.0, 1.0);
    const CellField rn = limit_mass_update(m, ls, 0.005);
    const CellField pi = random_cells(m, rng, -1.0, 1.0);
    const FaceField Un = limit_momentum_update(m, ls, rn, pi, 0.005);
    const auto before = momentum_totals(m, ls.rho, ls.U), after = momentum_totals(m, rn, Un);
    for (int a = 0; a < 2; ++a) EXPECT_NEAR(after[a], before[a], 1e-13);
}

TEST(LimitStepper, VortexKineticEnergyNonIncreasing) {
    CaseSpec c = case_stationary_vortex();
    c.counts = {24, 24};
    const Mesh m = Mesh::uniform(c.extents, c.counts);
    LimitState ls = init_limit_state(m, c, 0.01);
    for (int k = 0; k < m.cell_count(); ++k) EXPECT_DOUBLE_EQ(ls.theta()[k], 1.0 / ls.rho[k]);
    LimitStepper st(m, {});
    const double mass0 = cell_total(m, ls.rho);
    for (int i = 0; i < 30; ++i) {
        auto [next, rep] = st.step(ls);
        EXPECT_LE(rep.kinetic_after, rep.kinetic_before * (1.0 + 1e-13));
        EXPECT_GE(rep.eta, 1.5 / ls.rho.max() - 1e-12);
        ls = std::move(next);
    }
    EXPECT_NEAR(cell_total(m, ls.rho), mass0, 1e-13);
    EXPECT_EQ(ls.step_index, 30);
}
