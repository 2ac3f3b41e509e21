#include <cmath>

#include <gtest/gtest.h>

#include "ptmac/cases.hpp"
#include "ptmac/errors.hpp"
#include "ptmac/reference.hpp"

using namespace ptmac;

TEST(Rusanov, EqualStatesGivePhysicalFlux) {
    const Cons3 q{1.2, 1.2 * 0.7, 1.2 * 0.9};
    const Cons3 f = euler_flux(q, 0.5, 1.4);
    const Cons3 r = rusanov_flux(q, q, 0.5, 1.4);
    for (int i = 0; i < 3; ++i) EXPECT_EQ(r[i], f[i]);
    EXPECT_DOUBLE_EQ(f[0], 1.2 * 0.7);
    EXPECT_DOUBLE_EQ(f[1], 1.2 * 0.49 + std::pow(1.08, 1.4) / 0.25);
}

TEST(Rusanov, SoundSpeed) {
    EXPECT_NEAR(max_wave_speed({1.0, 0.0, 1.0}, 1.0, 1.4), std::sqrt(1.4), 1e-15);
    EXPECT_NEAR(max_wave_speed({1.0, 0.0, 1.0}, 1.0, 1.4), 1.18322, 1e-5);
    EXPECT_NEAR(max_wave_speed({1.0, -0.5, 1.0}, 0.1, 1.4), 0.5 + 10.0 * std::sqrt(1.4), 1e-13);
}

TEST(Rusanov, SymmetricStatesCarryNoMass) {
    const Cons3 l{1.0, 2.0, 0.52}, r{1.0, -2.0, 0.52};
    EXPECT_NEAR(rusanov_flux(l, r, 1.0, 1.4)[0], 0.0, 1e-15);
    EXPECT_NEAR(rusanov_flux(l, r, 1.0, 1.4)[2], 0.0, 1e-15);
}

TEST(Reference, ConstantDataUnchanged) {
    CaseSpec c = case_riemann_1d();
    c.velocity0 = [](const Point&, int, double) { return 0.3; };
    const ConservativeState1D s = run_reference(c, 50, 0.05, 1.0);
    for (int i = 0; i < s.size(); ++i) {
        EXPECT_NEAR(s.rho[i], 1.0, 1e-14);
        EXPECT_NEAR(s.mom[i], 0.3, 1e-14);
        EXPECT_NEAR(s.rho_theta[i], 1.0, 1e-14);
    }
    EXPECT_DOUBLE_EQ(s.time, 0.05);
}

TEST(Reference, RejectsTwoDimensionalCases) {
    EXPECT_THROW(sample_reference_initial(case_stationary_vortex(), 10, 0.1), ConfigError);
}

TEST(Reference, ConservesTotals) {
    const CaseSpec c = case_riemann_1d();
    const auto a = sample_reference_initial(c, 300, 1.0);
    const auto b = run_reference(c, 300, 0.05, 1.0);
    double m0 = 0, m1 = 0, q0 = 0, q1 = 0, t0 = 0, t1 = 0;
    for (int i = 0; i < 300; ++i) {
        m0 += a.rho[i], m1 += b.rho[i];
        q0 += a.mom[i], q1 += b.mom[i];
        t0 += a.rho_theta[i], t1 += b.rho_theta[i];
    }
    EXPECT_NEAR(m1, m0, 1e-11);
    EXPECT_NEAR(q1, q0, 1e-11);
    EXPECT_NEAR(t1, t0, 1e-11);
}

TEST(Reference, SelfConvergence) {
    const CaseSpec c = case_riemann_1d();
    const auto fine = run_reference(c, 10000, 0.05, 1.0);
    auto l1 = [&](int n) {
        const auto s = run_reference(c, n, 0.05, 1.0);
        const int r = 10000 / n;
        double e = 0.0;
        for (int i = 0; i < n; ++i) {
            double avg = 0.0;
            for (int j = 0; j < r; ++j) avg += fine.rho[i * r + j];
            e += s.h * std::abs(s.rho[i] - avg / r);
        }
        return e;
    };
    const double e625 = l1(625), e2500 = l1(2500);
    const double alpha = std::log(e625 / e2500) / std::log(4.0);
    EXPECT_GE(alpha, 0.7) << e625 << " " << e2500;
}

TEST(Reference, ExtremeRiemannPositiveAndSymmetric) {
    const auto s = run_reference(case_extreme_riemann(), 400, 0.15, 1.0);
    for (int i = 0; i < s.size(); ++i) {
        EXPECT_GT(s.rho[i], 0.0);
        EXPECT_GT(s.rho_theta[i], 0.0);
        EXPECT_NEAR(s.rho[i], s.rho[s.size() - 1 - i], 1e-10);
    }
}
