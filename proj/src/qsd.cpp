#include "kerrchaos/qsd.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "kerrchaos/errors.hpp"
#include "kerrchaos/ladder.hpp"
#include "kerrchaos/parallel.hpp"
#include "kerrchaos/rng.hpp"

namespace kerrchaos {

void EnsembleConfig::validate() const {
    if (n_traj < 1) throw std::invalid_argument("EnsembleConfig: n_traj must be >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("EnsembleConfig: dt must be > 0");
    if (!(t_end > 0.0)) throw std::invalid_argument("EnsembleConfig: t_end must be > 0");
    if (record_every < 1) throw std::invalid_argument("EnsembleConfig: record_every must be >= 1");
}

namespace qsd {

namespace {

// fixed reduction granularity; independent of worker count so that the
// chunk-ordered sum is identical however the chunks are scheduled
constexpr int kChunk = 32;

struct StepBuffers {
    Vector lower, raise, drift;
};

// shared implementation behind qsd_step and the ensemble loop
void step_into(const ladder::Workspace& w, const SystemParams& params, const Vector& psi,
               double t, double dt, std::span<const Complex> noise, StepBuffers& b, Vector& out) {
    const double down_rate = params.nbar + 1.0;   // L1 = √(N+1) a
    const double up_rate = params.nbar;           // L2 = √N a†
    const double sqrt_down = std::sqrt(down_rate);
    const double sqrt_up = std::sqrt(up_rate);
    const int d = w.dim;

    ladder::apply_lowering(w, psi, b.lower);
    const Complex exp_a = psi.dot(b.lower);       // ⟨a⟩ = ψ†(aψ)
    const Complex exp_l1 = sqrt_down * exp_a;

    // drift = -iH ψ + Σᵢ (⟨Lᵢ⟩* Lᵢ - ½Lᵢ†Lᵢ - ½|⟨Lᵢ⟩|²) ψ
    ladder::apply_hamiltonian(w, params, evaluate(params.drive, t), psi, b.drift);
    b.drift *= -kImag;

    b.drift += (std::conj(exp_l1) * sqrt_down) * b.lower;
    b.drift -= (0.5 * down_rate) * w.level.cwiseProduct(psi);
    b.drift -= (0.5 * std::norm(exp_l1)) * psi;

    out = psi + dt * b.drift;
    out += (sqrt_down * noise[0]) * b.lower;
    out -= (noise[0] * exp_l1) * psi;

    if (up_rate > 0.0) {
        ladder::apply_raising(w, psi, b.raise);
        const Complex exp_l2 = sqrt_up * std::conj(exp_a);   // ⟨a†⟩ = ⟨a⟩*
        // L2†L2 = N a a†: diagonal n+1, except the truncated top level
        out += dt * ((std::conj(exp_l2) * sqrt_up) * b.raise);
        Vector aadag_psi = (w.level.array() + 1.0).matrix().cwiseProduct(psi);
        aadag_psi(d - 1) = 0.0;
        out -= dt * ((0.5 * up_rate) * aadag_psi);
        out -= dt * ((0.5 * std::norm(exp_l2)) * psi);
        out += (sqrt_up * noise[1]) * b.raise;
        out -= (noise[1] * exp_l2) * psi;
    }

    const double norm = out.norm();
    if (!(norm > 0.0) || !std::isfinite(norm))
        throw NonFiniteState("qsd step overflowed at t=" + std::to_string(t));
    out /= norm;
}

} // namespace

Vector qsd_step(const SystemParams& params, const Vector& psi, double t, double dt,
                std::span<const Complex> noise) {
    if (noise.size() < 2) throw std::invalid_argument("qsd_step: need one increment per channel");
    const ladder::Workspace w{FockBasis(static_cast<int>(psi.size()))};
    StepBuffers buffers;
    Vector out;
    step_into(w, params, psi, t, dt, noise, buffers, out);
    return out;
}

EnsembleResult run_ensemble(const SystemParams& params, const FockBasis& basis,
                            const EnsembleConfig& cfg, std::span<const double> snapshot_times) {
    return run_ensemble(params, basis, cfg, fock::vacuum_state(basis), snapshot_times);
}

EnsembleResult run_ensemble(const SystemParams& params, const FockBasis& basis,
                            const EnsembleConfig& cfg, const Vector& psi0,
                            std::span<const double> snapshot_times) {
    cfg.validate();
    params.validate();
    if (psi0.size() != basis.dim) throw std::invalid_argument("run_ensemble: psi0/basis mismatch");

    const ladder::Workspace w(basis);
    const int n = cfg.n_traj;
    const int n_chunks = (n + kChunk - 1) / kChunk;
    const long n_steps = std::lround(cfg.t_end / cfg.dt);
    const long sample_stride = cfg.record_every;

    std::vector<Vector> states(static_cast<std::size_t>(n), psi0.normalized());
    std::vector<GaussianStream> streams;
    streams.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) streams.emplace_back(cfg.seed, static_cast<std::uint64_t>(k));

    // snapshot times rounded to the sampling grid
    std::vector<long> snap_steps;
    for (double ts : snapshot_times) {
        long s = std::lround(ts / (cfg.dt * static_cast<double>(sample_stride))) * sample_stride;
        snap_steps.push_back(std::clamp(s, 0L, n_steps));
    }

    EnsembleResult result;
    struct ChunkPartial {
        Matrix rho_sum;
        double n_sum = 0.0, n_sq_sum = 0.0;   // per-trajectory excitation moments
    };
    std::vector<ChunkPartial> partials(static_cast<std::size_t>(n_chunks));

    auto reduce_sample = [&](long step) {
        Matrix rho_bar = Matrix::Zero(basis.dim, basis.dim);
        double n_sum = 0.0, n_sq_sum = 0.0;
        for (const auto& p : partials) {
            rho_bar += p.rho_sum;
            n_sum += p.n_sum;
            n_sq_sum += p.n_sq_sum;
        }
        rho_bar /= static_cast<double>(n);
        const double mean_n = n_sum / n;
        const double var_n = n > 1 ? std::max(0.0, (n_sq_sum - n * mean_n * mean_n) / (n - 1)) : 0.0;
        result.excitation_stderr.push_back(std::sqrt(var_n / n));
        const double t = static_cast<double>(step) * cfg.dt;
        if (!rho_bar.allFinite())
            throw NonFiniteState("run_ensemble: non-finite mean state at t=" + std::to_string(t));
        if (cfg.check_truncation &&
            !fock::truncation_adequate(rho_bar, cfg.truncation_tail, cfg.truncation_tol))
            throw TruncationOverflow(
                "run_ensemble: top " + std::to_string(cfg.truncation_tail) +
                " Fock levels hold " +
                std::to_string(fock::tail_population(rho_bar, cfg.truncation_tail)) +
                " population at t=" + std::to_string(t) + "; raise fock_dim");
        result.series.push_back(observables::observe(t, rho_bar));
        for (std::size_t i = 0; i < snap_steps.size(); ++i)
            if (snap_steps[i] == step) result.snapshots.emplace_back(t, rho_bar);
        return rho_bar;
    };

    auto accumulate_chunk = [&](std::size_t chunk) {
        ChunkPartial& partial = partials[chunk];
        partial.rho_sum.setZero(basis.dim, basis.dim);
        partial.n_sum = partial.n_sq_sum = 0.0;
        const int k_begin = static_cast<int>(chunk) * kChunk;
        const int k_end = std::min(n, k_begin + kChunk);
        for (int k = k_begin; k < k_end; ++k) {
            const Vector& psi = states[static_cast<std::size_t>(k)];
            partial.rho_sum.noalias() += psi * psi.adjoint();
            double nk = 0.0;
            for (int i = 1; i < basis.dim; ++i) nk += static_cast<double>(i) * std::norm(psi(i));
            partial.n_sum += nk;
            partial.n_sq_sum += nk * nk;
        }
    };

    // t = 0 sample
    parallel_for(static_cast<std::size_t>(n_chunks), accumulate_chunk, cfg.n_workers);
    Matrix rho_bar = reduce_sample(0);

    for (long step = 0; step < n_steps; step += sample_stride) {
        const long interval = std::min(sample_stride, n_steps - step);
        parallel_for(
            static_cast<std::size_t>(n_chunks),
            [&](std::size_t chunk) {
                StepBuffers buffers;
                Vector next;
                const int k_begin = static_cast<int>(chunk) * kChunk;
                const int k_end = std::min(n, k_begin + kChunk);
                for (int k = k_begin; k < k_end; ++k) {
                    Vector& psi = states[static_cast<std::size_t>(k)];
                    GaussianStream& stream = streams[static_cast<std::size_t>(k)];
                    for (long s = 0; s < interval; ++s) {
                        const double t = static_cast<double>(step + s) * cfg.dt;
                        const Complex noise[2] = {stream.next_wiener(cfg.dt),
                                                  stream.next_wiener(cfg.dt)};
                        try {
                            step_into(w, params, psi, t, cfg.dt, noise, buffers, next);
                        } catch (const NonFiniteState& e) {
                            throw NonFiniteState("trajectory " + std::to_string(k) + ": " +
                                                 e.what());
                        }
                        psi.swap(next);
                    }
                }
                accumulate_chunk(chunk);
            },
            cfg.n_workers);
        rho_bar = reduce_sample(step + interval);
    }

    result.final_mean_state = std::move(rho_bar);
    return result;
}

} // namespace qsd
} // namespace kerrchaos
