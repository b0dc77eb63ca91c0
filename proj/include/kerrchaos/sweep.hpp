// sweep.hpp — parameter-grid orchestration: scans over drive strength and
// Kerr coefficient, constrained-excitation selection, and the paired
// purity/Lyapunov transition curve.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kerrchaos/lindblad.hpp"
#include "kerrchaos/semiclassical.hpp"

namespace kerrchaos {

// Parameters addressable by a sweep axis.
enum class SweepParam { DriveAmp, Chi, Delta, Nbar, F0, F1, DeltaMod, PulseWidth };

SweepParam sweep_param_from_name(const std::string& name);   // throws on unknown
std::string sweep_param_name(SweepParam p);

// Returns base with the named parameter replaced by value.
SystemParams with_param(const SystemParams& base, SweepParam param, double value);

struct SweepAxis {
    SweepParam param = SweepParam::DriveAmp;
    std::vector<double> values;   // nonempty, strictly monotone
};

struct SweepSpec {
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    SystemParams base;
    int fock_dim = 60;
    EvolutionConfig evolution;     // quantum leg settings
    LyapunovConfig lyapunov;       // semiclassical leg settings
    bool run_quantum = true;
    bool run_lyapunov = false;
    std::uint64_t seed = 0;
    std::string checkpoint_path;   // append-only row persistence; empty = off
    int n_workers = 0;

    void validate() const;
};

struct SweepRow {
    std::size_t i = 0, j = 0;      // grid indices (j = 0 when no axis2)
    double v1 = 0.0, v2 = 0.0;     // axis values
    bool ok = true;
    std::string error;             // failure reason when !ok; sweep continues
    double mean_excitation = 0.0, mean_purity = 0.0;
    double max_excitation = 0.0, max_purity = 0.0;
    double lyapunov = 0.0;
    bool has_quantum = false, has_lyapunov = false;
    std::uint64_t seed = 0;
};

// Runs the grid; rows come back sorted by (i, j). Rows found in the
// checkpoint file are not recomputed; fresh rows are appended as they finish.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

// Checkpoint file round-trip (CSV; one row per grid point).
void append_rows(const std::string& path, const std::vector<SweepRow>& rows, bool write_header);
std::vector<SweepRow> read_rows(const std::string& path);
std::string sweep_row_header();
std::string format_sweep_row(const SweepRow& row);

struct SelectedPoint {
    std::size_t i = 0, j = 0;
    double v1 = 0.0, v2 = 0.0;
    double max_excitation = 0.0;
};

struct ConstraintSelection {
    double band_min = 0.0, band_max = 0.0;
    std::vector<SelectedPoint> selected;   // one per qualifying axis1 value
};

// For each axis1 value picks the axis2 value whose max excitation lies in
// (band_min, band_max), closest to band centre on ties; axis1 values with no
// qualifying row are omitted. Throws EmptySelection when nothing qualifies.
ConstraintSelection select_constant_excitation(const std::vector<SweepRow>& rows, double band_min,
                                               double band_max);

struct TransitionPoint {
    double v1 = 0.0, v2 = 0.0;
    double max_purity = 0.0;
    double lyapunov = 0.0;
};

struct TransitionCurve {
    std::vector<TransitionPoint> points;                    // ordered by v1
    std::optional<std::size_t> lyapunov_sign_change;        // first i with sign(L_i) != sign(L_{i-1})
    std::optional<std::size_t> steepest_purity_drop;        // argmax of purity[i-1] - purity[i]
};

// Pairs each selected point's quantum max purity with its Lyapunov exponent,
// reusing sweep rows where available and computing what is missing.
TransitionCurve transition_curve(const ConstraintSelection& selection, const SweepSpec& spec,
                                 const std::vector<SweepRow>& rows);

// Detectors alone, for synthetic series.
std::optional<std::size_t> detect_sign_change(const std::vector<double>& lyapunov);
std::optional<std::size_t> detect_steepest_drop(const std::vector<double>& purity);

} // namespace kerrchaos
