// Command line front end: run, sweep-eoc, compare-limit, reference.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ptmac/cases.hpp"
#include "ptmac/errors.hpp"
#include "ptmac/io.hpp"
#include "ptmac/reference.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct Overrides {
    std::string config_file;
    double eps = 0, gamma = 0, t_end = -1, beta = 0, dt_max = 0, eta_floor = -1, newton_tol = 0;
    int nx = 0, ny = 0, newton_max_iter = 0;
    std::string eta;
    std::vector<double> snapshots;
    std::string out;
    bool dry_run = false;
};

void add_common(CLI::App* app, Overrides& o) {
    app->add_option("--config", o.config_file, "key = value config file; flags win over it");
    app->add_option("--eps", o.eps, "Mach number scaling");
    app->add_option("--gamma", o.gamma, "adiabatic exponent");
    app->add_option("--nx", o.nx, "cells along x (both axes for square 2D cases)");
    app->add_option("--ny", o.ny, "cells along y");
    app->add_option("--t-end", o.t_end, "final time");
    app->add_option("--beta", o.beta, "time step fraction, 0 < beta <= 1/2");
    app->add_option("--eta", o.eta, "stabilisation parameter: auto or a number");
    app->add_option("--eta-floor", o.eta_floor, "lower bound for the automatic eta");
    app->add_option("--dt-max", o.dt_max, "cap on the time step (default: smallest spacing)");
    app->add_option("--newton-tol", o.newton_tol, "absolute Newton tolerance (default: automatic)");
    app->add_option("--newton-max-iter", o.newton_max_iter, "Newton iteration limit");
    app->add_option("--snapshots", o.snapshots, "snapshot times")->delimiter(',');
    app->add_option("--out", o.out, "output directory");
}

ptmac::RunConfig build_config(const std::string& case_id, const Overrides& o) {
    ptmac::RunConfig cfg = o.config_file.empty() ? ptmac::RunConfig{} : ptmac::load_run_config(o.config_file);
    if (!case_id.empty()) cfg.case_id = case_id;
    if (cfg.case_id.empty()) throw ptmac::ConfigError("no case given");
    if (o.eps > 0) cfg.eps = o.eps;
    if (o.gamma > 0) cfg.gamma = o.gamma;
    if (o.nx > 0) {
        cfg.counts = {o.nx};
        if (o.ny > 0) cfg.counts.push_back(o.ny);
    } else if (o.ny > 0) {
        throw ptmac::ConfigError("--ny needs --nx");
    }
    if (o.t_end >= 0) cfg.t_end = o.t_end;
    if (o.beta > 0) cfg.beta = o.beta;
    if (!o.eta.empty()) {
        if (o.eta == "auto") cfg.eta.reset();
        else {
            try {
                cfg.eta = std::stod(o.eta);
            } catch (const std::exception&) {
                throw ptmac::ConfigError("--eta expects 'auto' or a number");
            }
        }
    }
    if (o.eta_floor >= 0) cfg.eta_floor = o.eta_floor;
    if (o.dt_max > 0) cfg.dt_max = o.dt_max;
    if (o.newton_tol > 0) cfg.newton_tol = o.newton_tol;
    if (o.newton_max_iter > 0) cfg.newton_max_iter = o.newton_max_iter;
    if (!o.snapshots.empty()) cfg.snapshot_times = o.snapshots;
    if (!o.out.empty()) cfg.output_dir = o.out;
    cfg.dry_run = o.dry_run;
    return cfg;
}


} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semi-implicit MAC solver for the Euler equations with potential temperature"};
    app.require_subcommand(1);

    std::string case_id;
    Overrides run_o;
    auto* run = app.add_subcommand("run", "run one case and write snapshots, diagnostics and a manifest");
    run->add_option("case", case_id, "case id (" + [] {
        std::string s;
        for (const auto& n : ptmac::case_names()) s += (s.empty() ? "" : ", ") + n;
        return s;
    }() + ")");
    add_common(run, run_o);
    run->add_flag("--dry-run", run_o.dry_run, "write the manifest only");

    Overrides sweep_o;
    std::vector<double> eps_list;
    std::vector<int> n_list;
    auto* sweep = app.add_subcommand("sweep-eoc", "L1 errors against the initial data and EOC");
    sweep->add_option("case", case_id)->required();
    sweep->add_option("--eps-list", eps_list)->delimiter(',')->required();
    sweep->add_option("--n-list", n_list)->delimiter(',')->required();
    add_common(sweep, sweep_o);

    Overrides cmp_o;
    auto* cmp = app.add_subcommand("compare-limit", "distance to the incompressible limit scheme");
    cmp->add_option("case", case_id)->required();
    cmp->add_option("--eps-list", eps_list)->delimiter(',')->required();
    add_common(cmp, cmp_o);

    int ref_n = 10000;
    double ref_cfl = 0.45, ref_eps = 0, ref_t = -1;
    std::string ref_out;
    auto* ref = app.add_subcommand("reference", "explicit Rusanov reference solution (1D cases)");
    ref->add_option("case", case_id)->required();
    ref->add_option("--n", ref_n, "cells");
    ref->add_option("--cfl", ref_cfl, "CFL number");
    ref->add_option("--eps", ref_eps, "Mach number scaling");
    ref->add_option("--t-end", ref_t, "final time");
    ref->add_option("--out", ref_out, "output CSV");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const ptmac::RunArtifacts a = ptmac::run_case(build_config(case_id, run_o));
            std::printf("%s: %ld steps to t=%g, manifest %s\n", a.ok ? "ok" : "failed", a.steps, a.final_time,
                        a.manifest.string().c_str());
            if (!a.ok) {
                std::fprintf(stderr, "solver failure: %s\n", a.message.c_str());
                return kExitSolver;
            }
        } else if (*sweep) {
            ptmac::SweepOptions so;
            so.base = build_config(case_id, sweep_o);
            so.output_dir = sweep_o.out.empty() ? ptmac::output_root() / (case_id + "-eoc") : fs::path(sweep_o.out);
            const ptmac::EocTable t = ptmac::sweep_eoc(case_id, eps_list, n_list, so);
            std::printf("%-8s %-5s", "eps", "N");
            for (const auto& v : t.variables) std::printf(" %12s %6s", ("L1 " + v).c_str(), "EOC");
            std::printf("\n");
            for (const auto& r : t.rows) {
                std::printf("%-8g %-5d", r.eps, r.n);
                for (std::size_t i = 0; i < r.errors.size(); ++i) {
                    std::printf(" %12.6f %6s", r.errors[i], r.eoc[i] ? std::to_string(*r.eoc[i]).substr(0, 4).c_str() : "--");
                }
                std::printf("\n");
            }
            std::printf("written to %s\n", (so.output_dir / "eoc.csv").string().c_str());
        } else if (*cmp) {
            const ptmac::RunConfig base = build_config(case_id, cmp_o);
            const auto rows = ptmac::compare_limit(case_id, eps_list, base);
            std::printf("%-8s %12s %12s %12s\n", "eps", "rho", "u", "theta");
            for (const auto& r : rows) std::printf("%-8g %12.4e %12.4e %12.4e\n", r.eps, r.rho, r.u, r.theta);
            const fs::path out = cmp_o.out.empty() ? ptmac::output_root() / (case_id + "-limit") / "limit.csv"
                                                   : fs::path(cmp_o.out) / "limit.csv";
            ptmac::write_limit_csv(out, rows);
            std::printf("written to %s\n", out.string().c_str());
        } else if (*ref) {
            const ptmac::CaseSpec spec = ptmac::case_by_name(case_id);
            const double eps = ref_eps > 0 ? ref_eps : spec.default_eps;
            const double t_end = ref_t >= 0 ? ref_t : spec.t_end;
            const auto s = ptmac::run_reference(spec, ref_n, t_end, eps, ref_cfl);
            const fs::path out = ref_out.empty() ? ptmac::output_root() / (case_id + "-reference") / "reference.csv"
                                                 : fs::path(ref_out);
            ptmac::write_reference_csv(out, s);
            std::printf("%ld steps, written to %s\n", s.steps, out.string().c_str());
        }
    } catch (const ptmac::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    } catch (const ptmac::SolverError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return kExitSolver;
    } catch (const ptmac::DomainError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    }
    return 0;
}
