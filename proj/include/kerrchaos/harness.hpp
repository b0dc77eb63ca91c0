// harness.hpp — declarative run configs, result bundles on disk, and the
// fixture/sweep entry points behind the CLI verbs.

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "kerrchaos/fixtures.hpp"
#include "kerrchaos/lindblad.hpp"
#include "kerrchaos/qsd.hpp"
#include "kerrchaos/semiclassical.hpp"
#include "kerrchaos/sweep.hpp"

namespace kerrchaos {

enum class SolverKind { Lindblad, Qsd };

struct WignerOutputSpec {
    std::vector<double> at_times;
    int nx = 101, ny = 101;
    std::optional<WignerGridSpec> bounds;   // nullopt = auto from the state
};

struct PoincareOutputSpec {
    int n_points = 1000;
    double transient = 100.0;
};

struct OutputRequests {
    bool timeseries = true;
    std::optional<WignerOutputSpec> wigner;
    std::optional<PoincareOutputSpec> poincare;
    std::optional<LyapunovConfig> lyapunov;
};

struct RunConfig {
    std::optional<std::string> fixture;
    SystemParams system;
    int fock_dim = 60;
    SolverKind solver = SolverKind::Lindblad;
    int n_traj = 1000;              // QSD ensemble size
    EvolutionConfig evolution;
    std::uint64_t seed = 0;
    int workers = 0;
    OutputRequests outputs;
};

// Parse + validate; throws ConfigError with the offending key in the message.
// When "fixture" is present its table entry supplies the parameters, and any
// explicitly repeated value must match the table (guards fixture drift).
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& path);

// Sweep configs for the `sweep` verb.
struct SweepRunConfig {
    SweepSpec spec;
    std::optional<std::pair<double, double>> selection_band;
    std::string name = "sweep";
};
SweepRunConfig parse_sweep_config(const nlohmann::json& j);
SweepRunConfig load_sweep_config(const std::filesystem::path& path);

// FNV-1a over the canonical (sorted-key) JSON dump.
std::string config_hash(const nlohmann::json& j);

struct ResultBundle {
    std::filesystem::path dir;
    bool reused = false;            // identical config already on disk; run skipped
    std::vector<ObservableRecord> series;
    SeriesSummary summary;
    std::optional<double> lyapunov;
    std::vector<std::filesystem::path> wigner_files;
    std::optional<std::filesystem::path> poincare_file;
};

// Executes the configured pipeline and writes the bundle under
// out_root/<fixture-or-run>-<hash>/ : manifest.json, timeseries.csv,
// wigner_t*.grid, poincare.csv, diagnostics.json.
ResultBundle run(const RunConfig& cfg, const nlohmann::json& raw_config,
                 const std::filesystem::path& out_root, bool force = false);

// Runs the sweep (checkpointed inside the bundle dir), writes rows.csv and,
// when a selection band is configured, selection.csv + transition.csv.
std::filesystem::path run_sweep_bundle(const SweepRunConfig& cfg, const nlohmann::json& raw_config,
                                       const std::filesystem::path& out_root, bool force = false);

// Re-emits bundle artifacts in the requested format ("csv", "grid", "png")
// under bundle_dir/export/.
void export_bundle(const std::filesystem::path& bundle_dir, const std::string& format);

// One line per fixture: name, parameters, expected diagnostics.
std::string format_fixture_table();

// Emits a complete annotated run config for the named fixture.
nlohmann::json fixture_config(const std::string& name);

} // namespace kerrchaos
