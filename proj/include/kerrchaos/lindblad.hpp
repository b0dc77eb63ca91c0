// lindblad.hpp — deterministic integration of the master equation
//   dρ/dt = -i[H(t), ρ] + Σᵢ (Lᵢ ρ Lᵢ† - ½Lᵢ†Lᵢρ - ½ρLᵢ†Lᵢ)
// for the driven Kerr oscillator with L1 = √(N+1)·a and L2 = √N·a†.
// This is the reference solver the trajectory engine is validated against.

#pragma once

#include <functional>
#include <span>
#include <vector>

#include "kerrchaos/fock.hpp"
#include "kerrchaos/observables.hpp"
#include "kerrchaos/types.hpp"

namespace kerrchaos {

struct EvolutionConfig {
    double t_end = 50.0;
    double dt = 1e-3;
    int record_every = 50;        // observable sampling stride in steps
    double transient = 20.0;      // excluded from summary statistics
    bool allow_large_dt = false;  // lifts the dt <= 0.01 guard
    int truncation_tail = 5;      // guard band at the top of the basis
    double truncation_tol = 1e-6;
    bool check_truncation = true;

    void validate() const;        // throws std::invalid_argument
};

struct EvolutionResult {
    std::vector<ObservableRecord> series;
    Matrix final_state;
    std::vector<std::pair<double, Matrix>> snapshots;   // at requested times
};

// Summary over records with t >= t_min (the post-transient window).
struct SeriesSummary {
    double mean_excitation = 0.0;
    double mean_purity = 0.0;
    double max_excitation = 0.0;
    double max_purity = 0.0;
    int n_samples = 0;
};
SeriesSummary summarize(std::span<const ObservableRecord> series, double t_min);

namespace lindblad {

using Observer = std::function<void(double t, const Matrix& rho)>;

// Right-hand side of the master equation at time t. O(dim²).
Matrix liouvillian_apply(const SystemParams& params, const Matrix& rho, double t);

// Fixed-step RK4 from rho0. After each step the Hermitian part is enforced
// and the trace renormalized if it drifted beyond 1e-12. Observables are
// recorded every record_every steps (including t=0); ρ snapshots are stored
// at the requested times (rounded to the sample grid). Throws
// TruncationOverflow / NonFiniteState on the respective sample-point checks.
EvolutionResult evolve(const SystemParams& params, const Matrix& rho0,
                       const EvolutionConfig& cfg,
                       std::span<const double> snapshot_times = {},
                       const Observer& observer = nullptr);

} // namespace lindblad
} // namespace kerrchaos
