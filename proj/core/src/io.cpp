#include "ptmac/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <fmt/os.h>
#include <json.hpp>

#include "ptmac/errors.hpp"

#ifndef PTMAC_GIT_DESCRIBE
#define PTMAC_GIT_DESCRIBE "unknown"
#endif

namespace ptmac {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string provenance() { return std::string("ptmac 0.1.0 (") + PTMAC_GIT_DESCRIBE + ")"; }

std::vector<std::string> field_columns(int dim) {
    if (dim == 1) return {"x", "rho", "u", "theta", "rho_theta"};
    return {"x", "y", "rho", "u_center", "v_center", "theta", "mach"};
}

std::vector<std::string> face_columns() { return {"axis", "face", "x", "y", "velocity"}; }

std::vector<std::string> diagnostics_keys() {
    return {"time", "step", "dt", "mass", "theta_total", "momentum", "kinetic", "internal",
            "total_energy", "rho_theta_deviation", "max_div", "min_rho", "min_theta", "newton_iterations"};
}

// ---------------------------------------------------------------------------
// configuration

namespace {

std::string trim(std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& key, const std::string& v) {
    const double d = to_double(key, v);
    if (d != std::floor(d)) throw ConfigError("config key '" + key + "': expected an integer");
    return static_cast<int>(d);
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(key, item));
    }
    return out;
}

} // namespace

RunConfig parse_run_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int nx = 0, ny = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty() || line.front() == '[') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(fmt::format("config line {}: expected key = value", lineno));
        }
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (val.size() >= 2 && val.front() == '"' && val.back() == '"') val = val.substr(1, val.size() - 2);
        std::replace(key.begin(), key.end(), '-', '_');
        if (key == "case") cfg.case_id = val;
        else if (key == "eps") cfg.eps = to_double(key, val);
        else if (key == "gamma") cfg.gamma = to_double(key, val);
        else if (key == "nx") nx = to_int(key, val);
        else if (key == "ny") ny = to_int(key, val);
        else if (key == "beta") cfg.beta = to_double(key, val);
        else if (key == "eta") {
            if (val == "auto") cfg.eta.reset();
            else cfg.eta = to_double(key, val);
        } else if (key == "eta_floor") cfg.eta_floor = to_double(key, val);
        else if (key == "dt_max") cfg.dt_max = to_double(key, val);
        else if (key == "t_end") cfg.t_end = to_double(key, val);
        else if (key == "newton_tol") cfg.newton_tol = to_double(key, val);
        else if (key == "newton_max_iter") cfg.newton_max_iter = to_int(key, val);
        else if (key == "snapshots") cfg.snapshot_times = to_list(key, val);
        else if (key == "out") cfg.output_dir = val;
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(to_int(key, val));
        else if (key == "dry_run") cfg.dry_run = (val == "true" || val == "1");
        else throw ConfigError(fmt::format("config line {}: unknown key '{}'", lineno, key));
    }
    if (nx > 0) {
        cfg.counts = {nx};
        if (ny > 0) cfg.counts.push_back(ny);
    } else if (ny > 0) {
        throw ConfigError("config sets ny without nx");
    }
    return cfg;
}

RunConfig load_run_config(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot read config file " + file.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

void validate(const RunConfig& cfg, const CaseSpec& spec) {
    if (!(cfg.beta > 0.0 && cfg.beta <= 0.5)) throw ConfigError("beta must lie in (0, 1/2]");
    if (cfg.eps && !(*cfg.eps > 0.0 && *cfg.eps <= 1.0)) throw ConfigError("eps must lie in (0, 1]");
    if (cfg.gamma && !(*cfg.gamma >= 1.0)) throw ConfigError("gamma must be at least 1");
    if (cfg.eta && !(*cfg.eta > 0.0)) throw ConfigError("eta must be positive");
    if (cfg.t_end && !(*cfg.t_end >= 0.0)) throw ConfigError("t_end must be non-negative");
    if (cfg.newton_max_iter < 1) throw ConfigError("newton_max_iter must be at least 1");
    if (!cfg.counts.empty()) {
        if (static_cast<int>(cfg.counts.size()) > spec.dim) {
            throw ConfigError(fmt::format("case {} is {}-dimensional", spec.name, spec.dim));
        }
        for (int n : cfg.counts) {
            if (n < 1) throw ConfigError("cell counts must be positive");
        }
    }
}

ResolvedRun resolve(const RunConfig& cfg) {
    CaseSpec spec = case_by_name(cfg.case_id);
    validate(cfg, spec);
    std::vector<int> counts = spec.counts;
    for (std::size_t a = 0; a < cfg.counts.size(); ++a) counts[a] = cfg.counts[a];
    // A single count on a square 2D case refines both directions.
    if (spec.dim == 2 && cfg.counts.size() == 1 && spec.counts[0] == spec.counts[1]) counts[1] = cfg.counts[0];
    Mesh mesh = Mesh::uniform(spec.extents, counts);

    ResolvedRun r{spec, std::move(mesh), {}, 0.0, {}};
    r.stepper.eps = cfg.eps.value_or(spec.default_eps);
    r.stepper.gamma = cfg.gamma.value_or(spec.gamma);
    r.spec.gamma = r.stepper.gamma;
    r.stepper.beta = cfg.beta;
    r.stepper.dt_max = cfg.dt_max;
    r.stepper.eta.fixed = cfg.eta;
    r.stepper.eta.floor = cfg.eta_floor.value_or(spec.eta_floor);
    r.stepper.newton.tol = cfg.newton_tol;
    r.stepper.newton.max_iter = cfg.newton_max_iter;
    r.t_end = cfg.t_end.value_or(spec.t_end);
    std::vector<double> snaps = cfg.snapshot_times.value_or(spec.snapshot_times);
    std::sort(snaps.begin(), snaps.end());
    for (double t : snaps) {
        if (t >= 0.0 && t <= r.t_end) r.snapshot_times.push_back(t);
    }
    if (r.snapshot_times.empty() || r.snapshot_times.back() != r.t_end) r.snapshot_times.push_back(r.t_end);
    return r;
}

fs::path output_root() {
    if (const char* env = std::getenv("PTMAC_OUTPUT_ROOT"); env && *env) return fs::path(env);
    return fs::path("runs");
}

// ---------------------------------------------------------------------------
// writers

namespace {

std::string num(double v) { return fmt::format("{}", v); }

void ensure_parent(const fs::path& file) {
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
}

std::string join(const std::vector<std::string>& cols) {
    std::string out;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += cols[i];
    }
    return out;
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

} // namespace

void write_field_csv(const fs::path& file, const Mesh& mesh, const State& state, double gamma) {
    ensure_parent(file);
    auto out = fmt::output_file(file.string());
    out.print("{}\n", join(field_columns(mesh.dim())));
    const auto uc = cell_centered_velocity(mesh, state.u);
    if (mesh.dim() == 1) {
        for (int k = 0; k < mesh.cell_count(); ++k) {
            out.print("{},{},{},{},{}\n", num(mesh.cell_center(k)[0]), num(state.rho[k]), num(uc[0][k]),
                      num(state.theta[k]), num(state.rho[k] * state.theta[k]));
        }
        return;
    }
    const CellField mach = mach_field(mesh, state, gamma);
    for (int k = 0; k < mesh.cell_count(); ++k) {
        const Point c = mesh.cell_center(k);
        out.print("{},{},{},{},{},{},{}\n", num(c[0]), num(c[1]), num(state.rho[k]), num(uc[0][k]),
                  num(uc[1][k]), num(state.theta[k]), num(mach[k]));
    }
}

void write_face_csv(const fs::path& file, const Mesh& mesh, const FaceField& u) {
    ensure_parent(file);
    auto out = fmt::output_file(file.string());
    out.print("{}\n", join(face_columns()));
    for (int a = 0; a < mesh.dim(); ++a) {
        for (int f = 0; f < mesh.face_count(a); ++f) {
            const Point x = mesh.face_center(a, f);
            out.print("{},{},{},{},{}\n", a, f, num(x[0]), num(mesh.dim() > 1 ? x[1] : 0.0), num(u(a, f)));
        }
    }
}

std::string diagnostics_json_line(const DiagnosticsRecord& r) {
    json j = json::object();
    j["time"] = r.time;
    j["step"] = r.step;
    j["dt"] = r.dt;
    j["mass"] = r.mass;
    j["theta_total"] = r.theta_total;
    j["momentum"] = json::array({r.momentum[0], r.momentum[1]});
    j["kinetic"] = r.kinetic;
    j["internal"] = r.internal ? nullable(*r.internal) : json(nullptr);
    j["total_energy"] = r.total_energy;
    j["rho_theta_deviation"] = r.rho_theta_deviation;
    j["max_div"] = r.max_div;
    j["min_rho"] = r.min_rho;
    j["min_theta"] = r.min_theta;
    j["newton_iterations"] = r.newton_iterations;
    return j.dump();
}

void write_eoc_csv(const fs::path& file, const EocTable& table) {
    ensure_parent(file);
    auto out = fmt::output_file(file.string());
    out.print("eps,N");
    for (const auto& v : table.variables) out.print(",err_{0},eoc_{0}", v);
    out.print(",sup_rho_theta_dev,steps\n");
    for (const auto& row : table.rows) {
        out.print("{},{}", num(row.eps), row.n);
        for (std::size_t i = 0; i < row.errors.size(); ++i) {
            out.print(",{},{}", num(row.errors[i]), row.eoc[i] ? num(*row.eoc[i]) : std::string());
        }
        out.print(",{},{}\n", num(row.sup_rho_theta_deviation), row.steps);
    }
}

void write_limit_csv(const fs::path& file, const std::vector<LimitErrorRow>& rows) {
    ensure_parent(file);
    auto out = fmt::output_file(file.string());
    out.print("eps,err_rho,err_u,err_theta,steps\n");
    for (const auto& r : rows) out.print("{},{},{},{},{}\n", num(r.eps), num(r.rho), num(r.u), num(r.theta), r.steps);
}

void write_reference_csv(const fs::path& file, const ConservativeState1D& s) {
    ensure_parent(file);
    auto out = fmt::output_file(file.string());
    out.print("{}\n", join(field_columns(1)));
    for (int i = 0; i < s.size(); ++i) {
        out.print("{},{},{},{},{}\n", num(s.cell_center(i)), num(s.rho[i]), num(s.mom[i] / s.rho[i]),
                  num(s.rho_theta[i] / s.rho[i]), num(s.rho_theta[i]));
    }
}

// ---------------------------------------------------------------------------
// run_case

namespace {

json config_echo(const RunConfig& cfg, const ResolvedRun& r) {
    json j;
    j["case"] = r.spec.name;
    j["eps"] = r.stepper.eps;
    j["gamma"] = r.stepper.gamma;
    j["counts"] = json::array();
    for (int a = 0; a < r.mesh.dim(); ++a) j["counts"].push_back(r.mesh.count(a));
    j["beta"] = r.stepper.beta;
    j["eta"] = cfg.eta ? json(*cfg.eta) : json("auto");
    j["eta_floor"] = r.stepper.eta.floor;
    j["dt_max"] = r.stepper.dt_max > 0.0 ? r.stepper.dt_max : r.mesh.min_spacing();
    j["t_end"] = r.t_end;
    j["newton_tol"] = cfg.newton_tol > 0.0 ? json(cfg.newton_tol) : json("auto");
    j["newton_max_iter"] = cfg.newton_max_iter;
    j["snapshots"] = r.snapshot_times;
    j["seed"] = cfg.seed;
    j["dry_run"] = cfg.dry_run;
    return j;
}

std::string snapshot_stem(std::size_t index, double t) { return fmt::format("snap_{:03d}_t{:.6f}", index, t); }

} // namespace

RunArtifacts run_case(const RunConfig& cfg) {
    ResolvedRun r = resolve(cfg);
    RunArtifacts art;
    art.directory = cfg.output_dir.empty() ? output_root() / r.spec.name : fs::path(cfg.output_dir);
    fs::create_directories(art.directory);
    art.manifest = art.directory / "manifest.json";

    json manifest;
    manifest["schema"] = kManifestSchema;
    manifest["provenance"] = provenance();
    manifest["config"] = config_echo(cfg, r);
    manifest["field_schema"] = r.mesh.dim() == 1 ? kFieldSchema1D : kFieldSchema2D;
    manifest["face_schema"] = kFaceSchema;
    manifest["diagnostics_schema"] = kDiagnosticsSchema;
    manifest["snapshots"] = json::array();

    auto write_manifest = [&](const std::string& status) {
        manifest["status"] = status;
        manifest["message"] = art.message;
        manifest["steps"] = art.steps;
        manifest["final_time"] = art.final_time;
        manifest["max_newton_iterations"] = art.max_newton_iterations;
        std::ofstream out(art.manifest);
        out << manifest.dump(2) << '\n';
    };

    if (cfg.dry_run) {
        art.message = "dry run";
        write_manifest("dry-run");
        return art;
    }

    State state = init_state(r.mesh, r.spec, r.stepper.eps);
    SemiImplicitStepper stepper(r.mesh, r.stepper);
    art.diagnostics = art.directory / "diagnostics.jsonl";
    manifest["diagnostics"] = art.diagnostics.filename().string();
    std::ofstream diag(art.diagnostics);
    diag << diagnostics_json_line(make_record(r.mesh, state, r.stepper.eps, r.stepper.gamma)) << '\n';

    std::map<int, int> newton_histogram;
    auto snapshot = [&](const State& s, const std::string& stem) {
        SnapshotArtifact sa;
        sa.time = s.time;
        sa.fields = art.directory / (stem + ".csv");
        sa.faces = art.directory / (stem + "_faces.csv");
        write_field_csv(sa.fields, r.mesh, s, r.stepper.gamma);
        write_face_csv(sa.faces, r.mesh, s.u);
        manifest["snapshots"].push_back({{"time", sa.time},
                                         {"fields", sa.fields.filename().string()},
                                         {"faces", sa.faces.filename().string()}});
        art.snapshots.push_back(sa);
    };

    try {
        for (std::size_t i = 0; i < r.snapshot_times.size(); ++i) {
            const double target = r.snapshot_times[i];
            while (state.time < target) {
                const double remaining = target - state.time;
                auto [next, rep] = stepper.step(state, remaining);
                if (rep.dt == remaining) next.time = target;
                state = std::move(next);
                diag << diagnostics_json_line(
                            make_record(r.mesh, state, r.stepper.eps, r.stepper.gamma, rep.newton_iterations, rep.dt))
                     << '\n';
                ++newton_histogram[rep.newton_iterations];
                art.max_newton_iterations = std::max(art.max_newton_iterations, rep.newton_iterations);
                art.steps = state.step_index;
                art.final_time = state.time;
            }
            snapshot(state, snapshot_stem(i, target));
        }
    } catch (const SolverError& e) {
        art.ok = false;
        art.message = e.what();
        snapshot(state, "last_valid");
    }
    json hist = json::object();
    for (const auto& [its, count] : newton_histogram) hist[std::to_string(its)] = count;
    manifest["newton_histogram"] = hist;
    write_manifest(art.ok ? "ok" : "failed");
    return art;
}

// ---------------------------------------------------------------------------
// EOC sweep

std::vector<double> l1_errors(const Mesh& mesh, const State& s, const State& ref) {
    std::vector<double> e;
    double er = 0.0, et = 0.0;
    for (int k = 0; k < mesh.cell_count(); ++k) {
        er += std::abs(s.rho[k] - ref.rho[k]);
        et += std::abs(s.theta[k] - ref.theta[k]);
    }
    e.push_back(mesh.cell_volume() * er);
    for (int a = 0; a < mesh.dim(); ++a) {
        double eu = 0.0;
        for (int f = 0; f < mesh.face_count(a); ++f) eu += std::abs(s.u(a, f) - ref.u(a, f));
        e.push_back(mesh.dual_volume(a) * eu);
    }
    e.push_back(mesh.cell_volume() * et);
    return e;
}

void compute_eoc(EocTable& table) {
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        EocRow& row = table.rows[i];
        row.eoc.assign(row.errors.size(), std::nullopt);
        if (i == 0) continue;
        const EocRow& prev = table.rows[i - 1];
        if (prev.eps != row.eps || prev.n >= row.n) continue;
        for (std::size_t v = 0; v < row.errors.size(); ++v) {
            if (row.errors[v] > 0.0 && prev.errors[v] > 0.0) {
                row.eoc[v] = std::log(prev.errors[v] / row.errors[v]) / std::log(double(row.n) / prev.n);
            }
        }
    }
}

EocTable sweep_eoc(const std::string& case_id, const std::vector<double>& eps_list,
                   const std::vector<int>& n_list, const SweepOptions& options) {
    EocTable table;
    const CaseSpec spec = case_by_name(case_id);
    table.variables = spec.dim == 1 ? std::vector<std::string>{"rho", "u", "theta"}
                                    : std::vector<std::string>{"rho", "u", "v", "theta"};
    for (double eps : eps_list) {
        for (int n : n_list) {
            RunConfig cfg = options.base;
            cfg.case_id = case_id;
            cfg.eps = eps;
            cfg.counts = {n};
            ResolvedRun r = resolve(cfg);
            const State exact = init_state(r.mesh, r.spec, eps);
            SemiImplicitStepper stepper(r.mesh, r.stepper);
            EocRow row;
            row.eps = eps;
            row.n = n;
            std::ofstream diag;
            if (!options.output_dir.empty()) {
                fs::create_directories(options.output_dir);
                diag.open(options.output_dir / fmt::format("diagnostics_eps{}_n{}.jsonl", eps, n));
                diag << diagnostics_json_line(make_record(r.mesh, exact, eps, r.stepper.gamma)) << '\n';
            }
            row.sup_rho_theta_deviation = lgamma_norm(r.mesh, exact.theta_total(), r.stepper.gamma, 1.0);
            const State fin = advance_to(stepper, exact, r.t_end, [&](const State& s, const StepReport& rep) {
                const DiagnosticsRecord rec =
                    make_record(r.mesh, s, eps, r.stepper.gamma, rep.newton_iterations, rep.dt);
                row.sup_rho_theta_deviation = std::max(row.sup_rho_theta_deviation, rec.rho_theta_deviation);
                if (diag.is_open()) diag << diagnostics_json_line(rec) << '\n';
            });
            row.steps = fin.step_index;
            row.errors = l1_errors(r.mesh, fin, exact);
            table.rows.push_back(std::move(row));
        }
    }
    compute_eoc(table);
    if (!options.output_dir.empty()) write_eoc_csv(options.output_dir / "eoc.csv", table);
    return table;
}

// ---------------------------------------------------------------------------
// limit comparison

void LimitErrorAccumulator::add(double dt, const State& s, const LimitState& ls) {
    const Mesh& m = *mesh_;
    const int n = m.cell_count();
    if (s.rho.size() != n || ls.rho.size() != n || s.u.dim() != m.dim() || ls.U.dim() != m.dim()) {
        throw ConfigError("compressible and limit solutions live on different grids");
    }
    for (int a = 0; a < m.dim(); ++a) {
        if (s.u.size(a) != m.face_count(a) || ls.U.size(a) != m.face_count(a)) {
            throw ConfigError("compressible and limit solutions live on different grids");
        }
    }
    CellField dr(n), dt_(n);
    for (int k = 0; k < n; ++k) {
        dr[k] = s.rho[k] - ls.rho[k];
        dt_[k] = s.theta[k] - 1.0 / ls.rho[k];
    }
    rho_sup_ = std::max(rho_sup_, lgamma_norm(m, dr, gamma_));
    theta_sup_ = std::max(theta_sup_, lgamma_norm(m, dt_, gamma_));
    double q = 0.0;
    for (int a = 0; a < m.dim(); ++a) {
        double qa = 0.0;
        for (int f = 0; f < m.face_count(a); ++f) {
            const double d = s.u(a, f) - ls.U(a, f);
            qa += d * d;
        }
        q += m.dual_volume(a) * qa;
    }
    u_sq_ += dt * q;
}

double LimitErrorAccumulator::u_error() const { return std::sqrt(u_sq_); }

std::vector<LimitErrorRow> compare_limit(const std::string& case_id, const std::vector<double>& eps_list,
                                         const RunConfig& base) {
    std::vector<LimitErrorRow> rows;
    for (double eps : eps_list) {
        RunConfig cfg = base;
        cfg.case_id = case_id;
        cfg.eps = eps;
        ResolvedRun r = resolve(cfg);
        const Mesh& mesh = r.mesh;
        State s = init_state(mesh, r.spec, eps);
        LimitState ls = init_limit_state(mesh, r.spec, eps);
        SemiImplicitStepper stepper(mesh, r.stepper);
        LimitStepperConfig lc;
        lc.beta = r.stepper.beta;
        lc.dt_max = r.stepper.dt_max;
        lc.eta_floor = r.stepper.eta.floor;
        LimitStepper limit(mesh, lc);
        LimitErrorAccumulator acc(mesh, r.stepper.gamma);
        acc.add(0.0, s, ls);
        while (s.time < r.t_end) {
            // Same dt and eta for both schemes so the comparison isolates eps.
            const double cap = stepper.dt_max();
            double dt = std::min(compute_dt(mesh, s.rho, s.u, r.stepper.beta, cap),
                                 compute_dt(mesh, ls.rho, ls.U, r.stepper.beta, cap));
            const double remaining = r.t_end - s.time;
            const bool last = dt >= remaining;
            if (last) dt = remaining;
            const double eta = r.stepper.eta.fixed ? *r.stepper.eta.fixed
                                                   : std::max(choose_eta(mesh, s.rho, r.stepper.eta.floor),
                                                              choose_eta(mesh, ls.rho, r.stepper.eta.floor));
            stepper.set_fixed_eta(eta);
            limit.set_fixed_eta(eta);
            auto [ns, rep] = stepper.step(s, dt);
            auto [nl, lrep] = limit.step(ls, dt);
            if (last) ns.time = nl.time = r.t_end;
            s = std::move(ns);
            ls = std::move(nl);
            acc.add(rep.dt, s, ls);
        }
        rows.push_back({eps, acc.rho_error(), acc.u_error(), acc.theta_error(), s.step_index});
    }
    return rows;
}

} // namespace ptmac
