#include <benchmark/benchmark.h>

#include "ptmac/cases.hpp"
#include "ptmac/implicit_theta.hpp"
#include "ptmac/limit_stepper.hpp"
#include "ptmac/stepper.hpp"

using namespace ptmac;

namespace {

Mesh vortex_mesh(int n) {
    const CaseSpec c = case_stationary_vortex();
    const int counts[] = {n, n};
    return Mesh::uniform(c.extents, counts);
}

} // namespace

static void BM_VortexStep(benchmark::State& bs) {
    const int n = static_cast<int>(bs.range(0));
    const double eps = bs.range(1) == 0 ? 1e-1 : 1e-4;
    const CaseSpec c = case_stationary_vortex();
    const Mesh m = vortex_mesh(n);
    StepperConfig cfg;
    cfg.eps = eps;
    cfg.gamma = c.gamma;
    cfg.eta.floor = c.eta_floor;
    SemiImplicitStepper st(m, cfg);
    const State s = init_state(m, c, eps);
    for (auto _ : bs) {
        auto out = st.step(s);
        benchmark::DoNotOptimize(out.first.rho[0]);
    }
    bs.SetItemsProcessed(bs.iterations() * m.cell_count());
}
BENCHMARK(BM_VortexStep)->ArgsProduct({{50, 100, 200}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_ThetaSolve1D(benchmark::State& bs) {
    const CaseSpec c = case_colliding_pulses();
    const Mesh m = Mesh::uniform(c.extents, c.counts);
    const State s = init_state(m, c, 0.1);
    const double dt = compute_dt(m, s.rho, s.u, 0.5, m.min_spacing());
    for (auto _ : bs) {
        auto r = solve_theta_implicit(m, s, dt, choose_eta(m, s.rho), 0.1, c.gamma);
        benchmark::DoNotOptimize(r.theta_total[0]);
    }
}
BENCHMARK(BM_ThetaSolve1D)->Unit(benchmark::kMicrosecond);

static void BM_LimitPressure(benchmark::State& bs) {
    const int n = static_cast<int>(bs.range(0));
    const CaseSpec c = case_stationary_vortex();
    const Mesh m = vortex_mesh(n);
    const LimitState ls = init_limit_state(m, c, 0.01);
    PressureSolver solver(m);
    for (auto _ : bs) {
        auto pi = solver.solve(ls.U, 3.0, 0.5 / n);
        benchmark::DoNotOptimize(pi[0]);
    }
}
BENCHMARK(BM_LimitPressure)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
