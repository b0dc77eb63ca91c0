// qsd.hpp — quantum-state-diffusion unraveling of the master equation: an
// ensemble of pure-state trajectories driven by complex Wiener noise whose
// ensemble mean reproduces the density matrix of lindblad::evolve.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "kerrchaos/fock.hpp"
#include "kerrchaos/lindblad.hpp"
#include "kerrchaos/observables.hpp"
#include "kerrchaos/types.hpp"

namespace kerrchaos {

struct EnsembleConfig {
    int n_traj = 1000;
    std::uint64_t seed = 0;
    double dt = 1e-3;
    double t_end = 50.0;
    int record_every = 50;
    double transient = 20.0;
    int n_workers = 0;            // 0 = env/hardware
    int truncation_tail = 5;
    double truncation_tol = 1e-6;
    bool check_truncation = true;

    void validate() const;
};

struct EnsembleResult {
    std::vector<ObservableRecord> series;               // from the ensemble mean ρ̄
    std::vector<double> excitation_stderr;              // standard error of the mean, per sample
    Matrix final_mean_state;
    std::vector<std::pair<double, Matrix>> snapshots;   // ρ̄ at requested times
};

namespace qsd {

// One Itô–Euler step of the trajectory equation
//   dψ = [-iH + Σᵢ(⟨Lᵢ†⟩Lᵢ - ½Lᵢ†Lᵢ - ½|⟨Lᵢ⟩|²)]ψ dt + Σᵢ (Lᵢ - ⟨Lᵢ⟩)ψ dξᵢ
// followed by renormalization. Expectations are taken in the pre-step state.
// noise holds one complex increment per Lindblad channel (L1, L2) with
// E[dξᵢdξⱼ*] = δᵢⱼ dt. Channel 2 carries the √N factor, so its terms vanish
// for a zero-temperature bath.
Vector qsd_step(const SystemParams& params, const Vector& psi, double t, double dt,
                std::span<const Complex> noise);

// Evolves n_traj independent trajectories from psi0 (vacuum by default).
// At each sample time the mean ρ̄ = (1/n)Σ|ψₖ⟩⟨ψₖ| is accumulated in fixed
// trajectory order (fixed-size chunks, combined in chunk order), so results
// are bit-identical for any worker count. Noise streams derive from
// (seed, trajectory index) only.
EnsembleResult run_ensemble(const SystemParams& params, const FockBasis& basis,
                            const EnsembleConfig& cfg,
                            std::span<const double> snapshot_times = {});
EnsembleResult run_ensemble(const SystemParams& params, const FockBasis& basis,
                            const EnsembleConfig& cfg, const Vector& psi0,
                            std::span<const double> snapshot_times = {});

} // namespace qsd
} // namespace kerrchaos
