#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "ptmac/errors.hpp"
#include "ptmac/implicit_theta.hpp"
#include "random_fields.hpp"

using namespace ptmac;
using namespace ptmac::testing;

namespace {

State make_state(const Mesh& m, CellField rho, CellField theta, FaceField u) {
    State s;
    s.rho = std::move(rho);
    s.theta = std::move(theta);
    s.u = std::move(u);
    return s;
}

// Residual of the 1D implicit temperature equation written out by hand,
// independent of the library's flux and operator code.
Eigen::VectorXd residual_1d(const Eigen::VectorXd& th, const Eigen::VectorXd& th_old,
                            const std::vector<double>& u, double h, double dt, double c, double gamma) {
    const int n = static_cast<int>(th.size());
    Eigen::VectorXd F(n), R(n);
    for (int f = 0; f < n; ++f) {
        const int K = (f + n - 1) % n;
        const double du = c * (std::pow(th(f), gamma) - std::pow(th(K), gamma)) / h;
        const double vp = std::max(u[f], 0.0) - std::min(du, 0.0);
        const double vm = std::min(u[f], 0.0) - std::max(du, 0.0);
        F(f) = th(K) * vp + th(f) * vm;
    }
    for (int k = 0; k < n; ++k) R(k) = (th(k) - th_old(k)) / dt + (F((k + 1) % n) - F(k)) / h;
    return R;
}

} // namespace

TEST(ImplicitTheta, ConstantIsFixedPoint) {
    const Mesh m = mesh_2d(6, 5);
    FaceField u(m, 0.0);
    for (int f = 0; f < 30; ++f) {
        u(0, f) = 0.4;
        u(1, f) = -0.7;
    }
    const State s = make_state(m, CellField(30, 1.3), CellField(30, 0.9), u);
    const auto r = solve_theta_implicit(m, s, 0.01, 1.5, 0.1, 1.4);
    for (int k = 0; k < 30; ++k) EXPECT_NEAR(r.theta_total[k], 1.3 * 0.9, 1e-13);
    EXPECT_LE(r.iterations, 1);
}

TEST(ImplicitTheta, DenseNewtonOracle) {
    std::mt19937 rng(41);
    const int n = 16;
    const Mesh m = mesh_1d(n);
    const double h = m.spacing(0), dt = 0.01, eta = 2.0, gamma = 1.4;
    for (double eps : {1.0, 0.3, 0.05}) {
        const CellField rho = random_cells(m, rng, 0.8, 1.2);
        const CellField theta = random_cells(m, rng, 0.8, 1.2);
        const FaceField u = random_faces(m, rng, -1.0, 1.0);
        const State s = make_state(m, rho, theta, u);

        const double c = eta * dt / (eps * eps);
        Eigen::VectorXd old(n);
        for (int k = 0; k < n; ++k) old(k) = rho[k] * theta[k];
        std::vector<double> uf(u.component(0).begin(), u.component(0).end());
        // Newton with a centred finite-difference Jacobian
        Eigen::VectorXd x = old;
        for (int it = 0; it < 60; ++it) {
            const Eigen::VectorXd R = residual_1d(x, old, uf, h, dt, c, gamma);
            if (R.cwiseAbs().maxCoeff() < 1e-10) break;
            Eigen::MatrixXd J(n, n);
            for (int j = 0; j < n; ++j) {
                const double d = 1e-7 * std::max(1.0, std::abs(x(j)));
                Eigen::VectorXd xp = x, xm = x;
                xp(j) += d;
                xm(j) -= d;
                J.col(j) = (residual_1d(xp, old, uf, h, dt, c, gamma) - residual_1d(xm, old, uf, h, dt, c, gamma)) / (2 * d);
            }
            x -= J.fullPivLu().solve(R);
        }
        ASSERT_LT(residual_1d(x, old, uf, h, dt, c, gamma).cwiseAbs().maxCoeff(), 1e-8);

        const auto r = solve_theta_implicit(m, s, dt, eta, eps, gamma);
        for (int k = 0; k < n; ++k) EXPECT_NEAR(r.theta_total[k], x(k), 1e-12) << "eps " << eps;
        for (int k = 0; k < n; ++k) EXPECT_NEAR(r.pressure[k], std::pow(r.theta_total[k], gamma), 1e-14);
        EXPECT_LE(r.iterations, 8);
    }
}

// With eps = 1e3 the pressure shift is eta dt/eps^2 grad p^{n+1} ~ 3e-8 grad p,
// so it is only negligible when Theta^{n+1} is smooth. Random face
// velocities make Theta^{n+1} rough (grad p ~ 1/h) and move it by ~1e-7.
TEST(ImplicitTheta, LargeEpsMatchesImplicitUpwind) {
    const int n = 16;
    const Mesh m = mesh_1d(n);
    const double h = m.spacing(0), dt = 0.02;
    FaceField u(m, 0.0);
    for (int f = 0; f < n; ++f) u(0, f) = 0.5 + 0.3 * std::sin(2.0 * std::numbers::pi * m.face_center(0, f)[0]);
    CellField rho(n), theta(n);
    for (int k = 0; k < n; ++k) {
        const double x = m.cell_center(k)[0];
        rho[k] = 1.0 + 0.2 * std::sin(2.0 * std::numbers::pi * x);
        theta[k] = (1.0 + 0.1 * std::cos(2.0 * std::numbers::pi * x)) / rho[k];
    }
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n) / dt;
    Eigen::VectorXd b(n);
    for (int k = 0; k < n; ++k) b(k) = rho[k] * theta[k] / dt;
    for (int f = 0; f < n; ++f) {
        const int K = (f + n - 1) % n;
        const double up = std::max(u(0, f), 0.0), um = std::min(u(0, f), 0.0);
        A(K, K) += up / h;
        A(K, f) += um / h;
        A(f, K) -= up / h;
        A(f, f) -= um / h;
    }
    const Eigen::VectorXd ref = A.fullPivLu().solve(b);
    const State s = make_state(m, rho, theta, u);
    const auto r = solve_theta_implicit(m, s, dt, 1.5, 1e3, 1.4);
    double gap3 = 0.0;
    for (int k = 0; k < n; ++k) {
        EXPECT_NEAR(r.theta_total[k], ref(k), 1e-8);
        gap3 = std::max(gap3, std::abs(r.theta_total[k] - ref(k)));
    }
    // the remaining gap is the pressure shift, which scales like 1/eps^2
    const auto r2 = solve_theta_implicit(m, s, dt, 1.5, 1e2, 1.4);
    double gap2 = 0.0;
    for (int k = 0; k < n; ++k) gap2 = std::max(gap2, std::abs(r2.theta_total[k] - ref(k)));
    EXPECT_NEAR(gap3 / gap2, 1e-2, 2e-3) << gap2 << " " << gap3;
}

TEST(ImplicitTheta, SingleCellGrid) {
    const Mesh m = mesh_1d(1);
    FaceField u(m, 0.0);
    u(0, 0) = 3.0;
    const auto r = solve_theta_implicit(m, make_state(m, CellField(1, 2.0), CellField(1, 0.7), u), 0.1, 1.5, 0.01, 1.4);
    EXPECT_DOUBLE_EQ(r.theta_total[0], 1.4);
}

TEST(ImplicitTheta, ConservesAndStaysPositive2D) {
    std::mt19937 rng(47);
    const Mesh m = mesh_2d(12, 10, {-1.0, 1.0}, {0.0, 0.4});
    for (double eps : {1.0, 1e-2, 1e-4}) {
        const CellField rho = random_cells(m, rng, 0.5, 1.5);
        const CellField theta = random_cells(m, rng, 0.5, 1.5);
        const FaceField u = random_faces(m, rng, -1.0, 1.0);
        const auto r = solve_theta_implicit(m, make_state(m, rho, theta, u), 1e-3, 3.0, eps, 1.4);
        double before = 0.0, after = 0.0;
        for (int k = 0; k < m.cell_count(); ++k) {
            before += rho[k] * theta[k];
            after += r.theta_total[k];
            EXPECT_GT(r.theta_total[k], 0.0);
        }
        EXPECT_NEAR(after, before, 1e-12 * before);
        EXPECT_LE(r.residual, r.tolerance);
        EXPECT_LE(r.iterations, 8);
    }
}

TEST(ImplicitTheta, JacobianMatchesFiniteDifferences) {
    std::mt19937 rng(53);
    const Mesh m = mesh_2d(4, 3);
    ThetaProblem pb;
    pb.mesh = &m;
    pb.theta_old = random_cells(m, rng, 0.5, 1.5);
    pb.u = random_faces(m, rng, -1.0, 1.0);
    pb.dt = 0.01;
    pb.eta = 2.0;
    pb.eps = 0.5;
    const CellField th = random_cells(m, rng, 0.5, 1.5);
    const Eigen::MatrixXd J = Eigen::MatrixXd(theta_jacobian(pb, th).matrix);
    for (int j = 0; j < m.cell_count(); ++j) {
        CellField p = th, q = th;
        const double d = 1e-7;
        p[j] += d;
        q[j] -= d;
        const CellField rp = theta_residual(pb, p), rq = theta_residual(pb, q);
        for (int i = 0; i < m.cell_count(); ++i)
            EXPECT_NEAR(J(i, j), (rp[i] - rq[i]) / (2 * d), 1e-4 * (1.0 + std::abs(J(i, j))));
    }
}

TEST(ImplicitTheta, Errors) {
    const Mesh m = mesh_1d(4);
    const State s = make_state(m, CellField(4, 1.0), CellField(4, 1.0), FaceField(m, 0.0));
    EXPECT_THROW(solve_theta_implicit(m, s, 0.0, 1.5, 0.1, 1.4), ConfigError);
    State bad = s;
    bad.theta[2] = -1.0;
    EXPECT_THROW(solve_theta_implicit(m, bad, 0.1, 1.5, 0.1, 1.4), DomainError);
}
