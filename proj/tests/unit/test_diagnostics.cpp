#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "ptmac/cases.hpp"
#include "ptmac/diagnostics.hpp"
#include "ptmac/errors.hpp"
#include "random_fields.hpp"

using namespace ptmac;
using namespace ptmac::testing;

TEST(Helmholtz, Examples) {
    EXPECT_DOUBLE_EQ(helmholtz(1.0, 2.0), 1.0);
    EXPECT_DOUBLE_EQ(helmholtz(2.0, 2.0), 4.0);
    EXPECT_DOUBLE_EQ(helmholtz(1.0, 1.4), 2.5);
    EXPECT_THROW(helmholtz(1.0, 1.0), UnsupportedDiagnostic);
    EXPECT_THROW(helmholtz(0.0, 1.4), DomainError);
}

TEST(RelativeInternalEnergy, Examples) {
    for (double z : {0.1, 0.5, 0.9, 1.0, 1.3, 4.0}) EXPECT_NEAR(relative_internal_energy(z, 2.0), (z - 1) * (z - 1), 1e-14);
    EXPECT_EQ(relative_internal_energy(1.0, 1.4), 0.0);
    EXPECT_EQ(relative_internal_energy(1.0, 2.0), 0.0);
    // 30-digit evaluation of 1.1^1.4/0.4 - 2.5 - 0.35
    EXPECT_NEAR(relative_internal_energy(1.1, 1.4), 0.006865325198732818, 1e-16);
    EXPECT_THROW(relative_internal_energy(1.0, 1.0), UnsupportedDiagnostic);
}

TEST(RelativeInternalEnergy, SeriesBranchNearOne) {
    // Pi ~ gamma/2 (z-1)^2 + gamma (gamma-2)/6 (z-1)^3 for small z-1
    const double g = 1.4;
    for (double d : {1e-3, 1e-5, 1e-8, -1e-8, -1e-4}) {
        const double approx = 0.5 * g * d * d + g * (g - 2.0) / 6.0 * d * d * d;
        EXPECT_NEAR(relative_internal_energy(1.0 + d, g), approx, std::abs(approx) * 1e-2 * std::abs(d) / 1e-3 + 1e-30);
        EXPECT_GT(relative_internal_energy(1.0 + d, g), 0.0);
    }
}

TEST(RelativeInternalEnergy, NonNegativeConvex) {
    std::mt19937 rng(21);
    std::uniform_real_distribution<double> d(1e-6, 10.0);
    for (double g : {1.4, 2.0}) {
        for (int i = 0; i < 5000; ++i) {
            const double z = d(rng);
            const double p = relative_internal_energy(z, g);
            ASSERT_GE(p, 0.0);
            if (std::abs(z - 1.0) > 1e-3) ASSERT_GT(p, 0.0);
            const double a = d(rng), b = d(rng);
            ASSERT_LE(relative_internal_energy(0.5 * (a + b), g),
                      0.5 * (relative_internal_energy(a, g) + relative_internal_energy(b, g)) + 1e-12);
        }
    }
}

TEST(TotalEnergy, Examples) {
    const Mesh m = mesh_2d(4, 4);
    State s;
    s.rho = CellField(16, 1.0);
    s.theta = CellField(16, 1.0);
    s.u = FaceField(m, 0.0);
    EXPECT_EQ(total_energy(m, s, 0.1, 1.4).total(), 0.0);
    for (int a = 0; a < 2; ++a)
        for (int f = 0; f < 16; ++f) s.u(a, f) = a == 0 ? 1.0 : 0.0;
    const auto e = total_energy(m, s, 0.1, 1.4);
    EXPECT_DOUBLE_EQ(e.kinetic, 0.5);
    EXPECT_EQ(e.internal.value(), 0.0);

    const auto e1 = total_energy(m, s, 0.1, 1.0);
    EXPECT_FALSE(e1.internal.has_value());
    EXPECT_DOUBLE_EQ(e1.total(), 0.5);

    s.theta = CellField(16, 2.0);  // rho theta = 2, gamma = 2: Pi = 1 per unit volume
    EXPECT_NEAR(total_energy(m, s, 0.5, 2.0).internal.value(), 4.0, 1e-14);
}

TEST(TotalEnergy, RotationInvariant) {
    // state on a square grid, rotated by 90 degrees: (i, j) -> (j, n-1-i)
    std::mt19937 rng(23);
    const int n = 6;
    const Mesh m = mesh_2d(n, n);
    State s;
    s.rho = random_cells(m, rng, 0.5, 1.5);
    s.theta = random_cells(m, rng, 0.5, 1.5);
    s.u = random_faces(m, rng, -1.0, 1.0);
    State r = s;
    auto idx = [n](int i, int j) { return ((i % n) + n) % n + n * (((j % n) + n) % n); };
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int c = idx(i, j), rc = idx(j, n - 1 - i);
            r.rho[rc] = s.rho[c];
            r.theta[rc] = s.theta[c];
            // x-face (i-1/2, j) maps to y-face (j, n-1-i+1/2), i.e. the minus y-face of (j, n-i)
            r.u(1, idx(j, n - i)) = -s.u(0, c);
            // y-face (i, j-1/2) maps to x-face (j-1/2, n-1-i)
            r.u(0, idx(j, n - 1 - i)) = s.u(1, c);
        }
    }
    const auto a = total_energy(m, s, 0.1, 1.4), b = total_energy(m, r, 0.1, 1.4);
    EXPECT_NEAR(a.kinetic, b.kinetic, 1e-13);
    EXPECT_NEAR(*a.internal, *b.internal, 1e-10);
}

TEST(LgammaNorm, Examples) {
    const Mesh m = mesh_2d(5, 5);
    EXPECT_DOUBLE_EQ(lgamma_norm(m, CellField(25, 1.0), 2.0), 1.0);
    const Mesh m2 = mesh_2d(4, 4, {-1.0, 1.0}, {0.0, 0.4});
    EXPECT_NEAR(lgamma_norm(m2, CellField(16, -3.0), 1.4), 3.0 * std::pow(0.8, 1.0 / 1.4), 1e-14);
    EXPECT_NEAR(lgamma_norm(m2, CellField(16, 1.5), 2.0, 1.0), 0.5 * std::sqrt(0.8), 1e-14);
}

TEST(Mach, Examples) {
    const Mesh m = mesh_2d(3, 3);
    State s;
    s.rho = CellField(9, 1.0);
    s.theta = CellField(9, 1.0);
    s.u = FaceField(m, 0.0);
    EXPECT_EQ(mach_field(m, s, 2.0).max(), 0.0);
    for (int f = 0; f < 9; ++f) s.u(0, f) = 1.0;
    const CellField M = mach_field(m, s, 2.0);
    for (int k = 0; k < 9; ++k) EXPECT_DOUBLE_EQ(M[k], 1.0 / std::sqrt(2.0));
}

TEST(Mach, VortexMaximumAtInnerRadius) {
    const CaseSpec c = case_stationary_vortex();
    const Mesh m = Mesh::uniform(c.extents, c.counts);
    const State s = init_state(m, c, 1e-4);
    const CellField M = mach_field(m, s, c.gamma);
    int arg = 0;
    for (int k = 1; k < m.cell_count(); ++k)
        if (M[k] > M[arg]) arg = k;
    const Point x = m.cell_center(arg);
    const double r = std::hypot(x[0] - 0.5, x[1] - 0.5);
    EXPECT_NEAR(r, vortex::kInnerRadius, 2.0 * m.spacing(0));
    // p = rho = 1 + O(eps^2): M ~ |u| / sqrt(2) with |u| <= a
    EXPECT_NEAR(M[arg], vortex::kAmplitude / std::sqrt(2.0), 0.01 * vortex::kAmplitude);
}

TEST(Records, MassLedgerAndDivergence) {
    std::mt19937 rng(27);
    const Mesh m = mesh_2d(4, 4);
    State s;
    s.rho = random_cells(m, rng, 0.5, 1.5);
    s.theta = random_cells(m, rng, 0.5, 1.5);
    s.u = FaceField(m, 0.3);
    const DiagnosticsRecord r = make_record(m, s, 0.1, 1.4, 3, 0.01);
    EXPECT_NEAR(r.mass, cell_total(m, s.rho), 1e-15);
    EXPECT_NEAR(r.max_div, 0.0, 1e-13);
    EXPECT_EQ(r.newton_iterations, 3);
    EXPECT_EQ(r.min_rho, s.rho.min());
    EXPECT_NEAR(r.total_energy, total_energy(m, s, 0.1, 1.4).total(), 1e-15);
    const auto mom = momentum_totals(m, s.rho, s.u);
    EXPECT_NEAR(mom[0], 0.3 * cell_total(m, s.rho), 1e-14);
}
