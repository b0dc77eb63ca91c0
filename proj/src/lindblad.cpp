#include "kerrchaos/lindblad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "kerrchaos/errors.hpp"
#include "kerrchaos/ladder.hpp"

namespace kerrchaos {

void EvolutionConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("EvolutionConfig: dt must be > 0");
    if (dt > 0.01 && !allow_large_dt)
        throw std::invalid_argument(
            "EvolutionConfig: dt > 0.01 rejected (set allow_large_dt to override)");
    if (!(t_end > 0.0)) throw std::invalid_argument("EvolutionConfig: t_end must be > 0");
    if (record_every < 1) throw std::invalid_argument("EvolutionConfig: record_every must be >= 1");
    if (truncation_tail < 1)
        throw std::invalid_argument("EvolutionConfig: truncation_tail must be >= 1");
}

SeriesSummary summarize(std::span<const ObservableRecord> series, double t_min) {
    SeriesSummary s;
    for (const auto& r : series) {
        if (r.t < t_min) continue;
        s.mean_excitation += r.excitation;
        s.mean_purity += r.purity;
        s.max_excitation = std::max(s.max_excitation, r.excitation);
        s.max_purity = std::max(s.max_purity, r.purity);
        ++s.n_samples;
    }
    if (s.n_samples > 0) {
        s.mean_excitation /= s.n_samples;
        s.mean_purity /= s.n_samples;
    }
    return s;
}

namespace lindblad {

namespace {

// dρ = -i(Hρ - ρH) + (N+1)(aρa† - ½{a†a,ρ}) + N(a†ρa - ½{aa†,ρ})
// All terms are banded expressions in the Fock basis; see ladder.hpp.
void apply_liouvillian(const ladder::Workspace& w, const SystemParams& params, const Matrix& rho,
                       double t, Matrix& out, Matrix& scratch) {
    const Complex f = evaluate(params.drive, t);
    const int d = w.dim;
    const double down = params.nbar + 1.0;   // (N+1), rate of L1 = √(N+1) a
    const double up = params.nbar;           // N, rate of L2 = √N a†

    ladder::hamiltonian_left(w, params, f, rho, out);
    ladder::hamiltonian_right(w, params, f, rho, scratch);
    out = -kImag * (out - scratch);

    ladder::sandwich_lowering(w, rho, scratch);
    out += down * scratch;
    // ½{a†a, ρ}: row/column scaling by the level index
    out -= (0.5 * down) * (w.level.asDiagonal() * rho);
    out -= (0.5 * down) * (rho * w.level.asDiagonal());

    if (up > 0.0) {
        ladder::sandwich_raising(w, rho, scratch);
        out += up * scratch;
        // a a† = a†a + 1 on the truncated space except the top corner
        Vector aadag = (w.level.array() + 1.0).matrix();
        aadag(d - 1) = 0.0;   // a†|dim-1⟩ is truncated away
        out -= (0.5 * up) * (aadag.asDiagonal() * rho);
        out -= (0.5 * up) * (rho * aadag.asDiagonal());
    }
}

void check_state(const Matrix& rho, double t, const EvolutionConfig& cfg) {
    if (!rho.allFinite())
        throw NonFiniteState("lindblad: non-finite density matrix at t=" + std::to_string(t));
    if (cfg.check_truncation &&
        !fock::truncation_adequate(rho, cfg.truncation_tail, cfg.truncation_tol))
        throw TruncationOverflow(
            "lindblad: top " + std::to_string(cfg.truncation_tail) + " Fock levels hold " +
            std::to_string(fock::tail_population(rho, cfg.truncation_tail)) + " population at t=" +
            std::to_string(t) + " (tol " + std::to_string(cfg.truncation_tol) + "); raise fock_dim");
}

} // namespace

Matrix liouvillian_apply(const SystemParams& params, const Matrix& rho, double t) {
    if (rho.rows() != rho.cols()) throw std::invalid_argument("liouvillian_apply: rho not square");
    const ladder::Workspace w{FockBasis(static_cast<int>(rho.rows()))};
    Matrix out, scratch;
    apply_liouvillian(w, params, rho, t, out, scratch);
    return out;
}

EvolutionResult evolve(const SystemParams& params, const Matrix& rho0, const EvolutionConfig& cfg,
                       std::span<const double> snapshot_times, const Observer& observer) {
    cfg.validate();
    params.validate();
    if (rho0.rows() != rho0.cols()) throw std::invalid_argument("evolve: rho0 not square");

    const int dim = static_cast<int>(rho0.rows());
    const ladder::Workspace w{FockBasis(dim)};
    const double dt = cfg.dt;
    const long n_steps = std::lround(cfg.t_end / dt);

    // snapshot times rounded to the sampling grid
    std::vector<long> snap_steps;
    snap_steps.reserve(snapshot_times.size());
    for (double ts : snapshot_times) {
        long k = std::lround(ts / dt);
        snap_steps.push_back(std::clamp(k, 0L, n_steps));
    }

    EvolutionResult result;
    result.series.reserve(static_cast<std::size_t>(n_steps / cfg.record_every) + 2);

    Matrix rho = rho0;
    Matrix k1(dim, dim), k2(dim, dim), k3(dim, dim), k4(dim, dim);
    Matrix stage(dim, dim), scratch(dim, dim);

    auto sample = [&](long step) {
        const double t = static_cast<double>(step) * dt;
        check_state(rho, t, cfg);
        result.series.push_back(observables::observe(t, rho));
        if (observer) observer(t, rho);
        for (std::size_t i = 0; i < snap_steps.size(); ++i)
            if (snap_steps[i] == step) result.snapshots.emplace_back(t, rho);
    };

    check_state(rho0, 0.0, cfg);
    sample(0);

    for (long step = 0; step < n_steps; ++step) {
        const double t = static_cast<double>(step) * dt;

        apply_liouvillian(w, params, rho, t, k1, scratch);
        stage = rho + (0.5 * dt) * k1;
        apply_liouvillian(w, params, stage, t + 0.5 * dt, k2, scratch);
        stage = rho + (0.5 * dt) * k2;
        apply_liouvillian(w, params, stage, t + 0.5 * dt, k3, scratch);
        stage = rho + dt * k3;
        apply_liouvillian(w, params, stage, t + dt, k4, scratch);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        // enforce the Hermitian part and renormalize trace drift
        rho = 0.5 * (rho + rho.adjoint().eval());
        const double trace = rho.trace().real();
        if (std::abs(trace - 1.0) > 1e-12) rho /= trace;

        if ((step + 1) % cfg.record_every == 0) sample(step + 1);
    }

    result.final_state = std::move(rho);
    return result;
}

} // namespace lindblad
} // namespace kerrchaos
