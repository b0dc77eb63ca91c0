// semiclassical.hpp — mean-field companion of the quantum solvers: the
// deterministic amplitude ODE, maximum Lyapunov exponent by the
// two-trajectory renormalization method, and stroboscopic Poincaré sections.

#pragma once

#include <vector>

#include "kerrchaos/fock.hpp"
#include "kerrchaos/types.hpp"

namespace kerrchaos {

// Mean amplitude sample (X, Y) = (Re α, Im α) at time t.
struct PhasePoint {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;
};

struct LyapunovConfig {
    double d0 = 1e-8;           // initial trajectory separation
    int renorm_every = 10;      // steps between renormalizations
    double t_transient = 100.0; // discarded before averaging
    double t_total = 2000.0;    // end of the averaging window
    double dt = 1e-3;

    void validate() const;
};

namespace semiclassical {

// dα/dt = -i(Δ + χ + 2χ|α|²)α - i f(t) - α/2   (γ = 1 units)
//
// The α/2 is the amplitude damping the master equation implies: the
// dissipator of L1 = √((N+1)γ)a contributes -γ/2·⟨a⟩ to d⟨a⟩/dt, so the
// mean field of a mode whose excitation number decays at γ contracts at γ/2.
Complex mean_field_rhs(const SystemParams& params, Complex alpha, double t);

// Fixed-step RK4 over [0, t_end]; samples every sample_every time units
// (rounded to a whole number of steps), always including t = 0.
std::vector<PhasePoint> integrate_trajectory(const SystemParams& params, Complex alpha0,
                                             double t_end, double dt, double sample_every);

// Endpoint only; cheaper when no series is wanted.
Complex propagate(const SystemParams& params, Complex alpha0, double t_begin, double t_end,
                  double dt);

// Maximum Lyapunov exponent from two nearby trajectories with periodic
// renormalization of their separation back to d0.
double lyapunov_max(const SystemParams& params, const LyapunovConfig& cfg,
                    Complex alpha0 = Complex{0.0, 0.0});

// Stroboscopic samples at t_n = t0 + period·n, with t0 the first multiple of
// the drive period past t_transient (drive phase zero). The step is made
// commensurate with the period so samples land on exact step boundaries.
// Throws NoPeriod when the drive has no modulation period.
std::vector<PhasePoint> poincare_section(const SystemParams& params, Complex alpha0,
                                         int n_points, double t_transient, double dt_hint = 1e-3);

// Number of points that remain after greedy radius-`resolution` clustering;
// the distinct-point count used by the attractor diagnostics.
int distinct_point_count(const std::vector<PhasePoint>& points, double resolution);

} // namespace semiclassical
} // namespace kerrchaos
