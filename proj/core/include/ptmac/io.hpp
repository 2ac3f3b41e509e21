#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ptmac/cases.hpp"
#include "ptmac/diagnostics.hpp"
#include "ptmac/fields.hpp"
#include "ptmac/limit_stepper.hpp"
#include "ptmac/mesh.hpp"
#include "ptmac/reference.hpp"
#include "ptmac/stepper.hpp"

namespace ptmac {

inline constexpr const char* kFieldSchema1D = "ptmac.fields1d.v1";
inline constexpr const char* kFieldSchema2D = "ptmac.fields2d.v1";
inline constexpr const char* kFaceSchema = "ptmac.faces.v1";
inline constexpr const char* kDiagnosticsSchema = "ptmac.diagnostics.v1";
inline constexpr const char* kManifestSchema = "ptmac.manifest.v1";

/// Column names of the field CSVs, in file order.
std::vector<std::string> field_columns(int dim);
std::vector<std::string> face_columns();
/// Keys of one diagnostics JSON line, in file order.
std::vector<std::string> diagnostics_keys();

struct RunConfig {
    std::string case_id;
    std::optional<double> eps;
    std::optional<double> gamma;
    std::vector<int> counts;          ///< empty: case default
    double beta = 0.5;
    std::optional<double> eta;        ///< fixed eta; empty means auto
    std::optional<double> eta_floor;  ///< empty: case default
    double dt_max = -1.0;
    std::optional<double> t_end;
    double newton_tol = -1.0;
    int newton_max_iter = 50;
    std::optional<std::vector<double>> snapshot_times;
    std::string output_dir;           ///< empty: <output root>/<case>
    std::uint64_t seed = 0;
    bool dry_run = false;
};

/// Flat `key = value` text, `#` starts a comment. Unknown keys are errors.
RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& file);

/// Throws ConfigError when the combination is inadmissible.
void validate(const RunConfig& cfg, const CaseSpec& spec);

/// Mesh, stepper settings and resolved parameters for a config.
struct ResolvedRun {
    CaseSpec spec;
    Mesh mesh;
    StepperConfig stepper;
    double t_end = 0.0;
    std::vector<double> snapshot_times;
};
ResolvedRun resolve(const RunConfig& cfg);

/// $PTMAC_OUTPUT_ROOT, or ./runs when unset.
std::filesystem::path output_root();

void write_field_csv(const std::filesystem::path& file, const Mesh& mesh, const State& state, double gamma);
void write_face_csv(const std::filesystem::path& file, const Mesh& mesh, const FaceField& u);
std::string diagnostics_json_line(const DiagnosticsRecord& r);

struct SnapshotArtifact {
    double time = 0.0;
    std::filesystem::path fields;
    std::filesystem::path faces;
};

struct RunArtifacts {
    bool ok = true;
    std::string message;
    std::filesystem::path directory;
    std::filesystem::path manifest;
    std::filesystem::path diagnostics;
    std::vector<SnapshotArtifact> snapshots;
    long steps = 0;
    double final_time = 0.0;
    int max_newton_iterations = 0;
};

/// Runs a case and writes field CSVs per snapshot, a JSON-lines diagnostics
/// stream (one record per step plus the initial one) and a manifest. Solver
/// failures are reported in the manifest and the result, not thrown;
/// configuration errors throw ConfigError.
RunArtifacts run_case(const RunConfig& cfg);

struct EocRow {
    double eps = 0.0;
    int n = 0;
    std::vector<double> errors;               ///< per variable, see EocTable::variables
    std::vector<std::optional<double>> eoc;   ///< empty for the first N or zero errors
    double sup_rho_theta_deviation = 0.0;     ///< max over steps of ||rho theta - 1||_{L^gamma}
    long steps = 0;
};

struct EocTable {
    std::vector<std::string> variables;
    std::vector<EocRow> rows;
};

/// Unnormalised discrete L1 distance, sum |K| |q_K - q_ref,K|, per variable
/// (rho, u, v, theta in 2D; rho, u, theta in 1D).
std::vector<double> l1_errors(const Mesh& mesh, const State& s, const State& ref);

/// Fills in EOC = log(e_prev / e) / log(N / N_prev) for successive rows with
/// the same eps.
void compute_eoc(EocTable& table);

struct SweepOptions {
    RunConfig base;
    /// Directory for eoc.csv, decay.csv and per-run diagnostics; empty: none written.
    std::filesystem::path output_dir;
};

/// Runs the stationary case for every (eps, N) pair and compares the final
/// state against the initial data.
EocTable sweep_eoc(const std::string& case_id, const std::vector<double>& eps_list,
                   const std::vector<int>& n_list, const SweepOptions& options = {});

void write_eoc_csv(const std::filesystem::path& file, const EocTable& table);

/// Accumulates the Table 2 norms between a compressible and a limit trajectory
/// sampled at the same times.
class LimitErrorAccumulator {
public:
    LimitErrorAccumulator(const Mesh& mesh, double gamma) : mesh_(&mesh), gamma_(gamma) {}
    /// Throws ConfigError when the fields do not live on this mesh.
    void add(double dt, const State& s, const LimitState& ls);

    double rho_error() const { return rho_sup_; }
    double u_error() const;
    double theta_error() const { return theta_sup_; }

private:
    const Mesh* mesh_;
    double gamma_;
    double rho_sup_ = 0.0;
    double theta_sup_ = 0.0;
    double u_sq_ = 0.0;
};

struct LimitErrorRow {
    double eps = 0.0;
    double rho = 0.0;   ///< ||rho - rho~||_{L^inf(0,T;L^gamma)}
    double u = 0.0;     ///< ||u - U||_{L^2(0,T;L^2)}
    double theta = 0.0; ///< ||theta - theta~||_{L^inf(0,T;L^gamma)}
    long steps = 0;
};

/// Runs both schemes in lockstep (same dt and eta sequence) from the same
/// initial data and measures the distance.
std::vector<LimitErrorRow> compare_limit(const std::string& case_id, const std::vector<double>& eps_list,
                                         const RunConfig& base = {});

void write_limit_csv(const std::filesystem::path& file, const std::vector<LimitErrorRow>& rows);
void write_reference_csv(const std::filesystem::path& file, const ConservativeState1D& s);

/// Version plus the git description captured at configure time.
std::string provenance();

} // namespace ptmac
