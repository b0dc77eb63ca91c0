#include "kerrchaos/semiclassical.hpp"

#include <cmath>
#include <stdexcept>

#include "kerrchaos/errors.hpp"

namespace kerrchaos {

void LyapunovConfig::validate() const {
    if (!(d0 > 0.0)) throw std::invalid_argument("LyapunovConfig: d0 must be > 0");
    if (renorm_every < 1) throw std::invalid_argument("LyapunovConfig: renorm_every must be >= 1");
    if (!(t_total > t_transient))
        throw std::invalid_argument("LyapunovConfig: t_total must exceed t_transient");
    if (!(dt > 0.0)) throw std::invalid_argument("LyapunovConfig: dt must be > 0");
}

namespace semiclassical {

Complex mean_field_rhs(const SystemParams& params, Complex alpha, double t) {
    const double norm_sq = std::norm(alpha);
    const Complex f = evaluate(params.drive, t);
    return -kImag * ((params.delta + params.chi + 2.0 * params.chi * norm_sq) * alpha + f) -
           0.5 * alpha;
}

namespace {

Complex rk4_step(const SystemParams& params, Complex alpha, double t, double dt) {
    const Complex k1 = mean_field_rhs(params, alpha, t);
    const Complex k2 = mean_field_rhs(params, alpha + 0.5 * dt * k1, t + 0.5 * dt);
    const Complex k3 = mean_field_rhs(params, alpha + 0.5 * dt * k2, t + 0.5 * dt);
    const Complex k4 = mean_field_rhs(params, alpha + dt * k3, t + dt);
    return alpha + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

void check_finite(Complex alpha, double t) {
    if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
        throw NonFiniteState("semiclassical trajectory diverged at t=" + std::to_string(t));
}

} // namespace

std::vector<PhasePoint> integrate_trajectory(const SystemParams& params, Complex alpha0,
                                             double t_end, double dt, double sample_every) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_trajectory: dt must be > 0");
    const long n_steps = std::lround(t_end / dt);
    long stride = std::lround(sample_every / dt);
    if (stride < 1) stride = 1;

    std::vector<PhasePoint> series;
    series.reserve(static_cast<std::size_t>(n_steps / stride) + 2);
    Complex alpha = alpha0;
    series.push_back({alpha.real(), alpha.imag(), 0.0});
    for (long k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        alpha = rk4_step(params, alpha, t, dt);
        if ((k + 1) % stride == 0) {
            check_finite(alpha, t + dt);
            series.push_back({alpha.real(), alpha.imag(), static_cast<double>(k + 1) * dt});
        }
    }
    check_finite(alpha, t_end);
    return series;
}

Complex propagate(const SystemParams& params, Complex alpha0, double t_begin, double t_end,
                  double dt) {
    const long n_steps = std::lround((t_end - t_begin) / dt);
    Complex alpha = alpha0;
    for (long k = 0; k < n_steps; ++k)
        alpha = rk4_step(params, alpha, t_begin + static_cast<double>(k) * dt, dt);
    check_finite(alpha, t_end);
    return alpha;
}

double lyapunov_max(const SystemParams& params, const LyapunovConfig& cfg, Complex alpha0) {
    cfg.validate();
    const double dt = cfg.dt;
    const long n_steps = std::lround(cfg.t_total / dt);
    const long transient_steps = std::lround(cfg.t_transient / dt);

    Complex ref = alpha0;
    Complex perturbed = alpha0 + Complex{cfg.d0, 0.0};
    double log_sum = 0.0;
    long averaged_steps = 0;

    for (long k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        ref = rk4_step(params, ref, t, dt);
        perturbed = rk4_step(params, perturbed, t, dt);

        if ((k + 1) % cfg.renorm_every == 0) {
            const Complex sep = perturbed - ref;
            const double d = std::abs(sep);
            if (!(d > 0.0) || !std::isfinite(d))
                throw NonFiniteState("lyapunov_max: separation collapsed or diverged");
            if (k >= transient_steps) {
                log_sum += std::log(d / cfg.d0);
                averaged_steps += cfg.renorm_every;
            }
            // rescale along the current separation direction
            perturbed = ref + sep * (cfg.d0 / d);
        }
    }
    check_finite(ref, cfg.t_total);
    if (averaged_steps == 0)
        throw std::invalid_argument("lyapunov_max: averaging window shorter than one renormalization");
    return log_sum / (static_cast<double>(averaged_steps) * dt);
}

std::vector<PhasePoint> poincare_section(const SystemParams& params, Complex alpha0,
                                         int n_points, double t_transient, double dt_hint) {
    const auto period = drive_period(params.drive);
    if (!period) throw NoPeriod("poincare_section: drive has no modulation period");
    if (n_points < 1) throw std::invalid_argument("poincare_section: n_points must be >= 1");

    const long steps_per_period = std::max<long>(1, std::lround(*period / dt_hint));
    const double dt = *period / static_cast<double>(steps_per_period);

    // first stroboscopic sample: smallest multiple of the period >= t_transient
    const long skip_periods = static_cast<long>(std::ceil(t_transient / *period - 1e-12));

    Complex alpha = alpha0;
    std::vector<PhasePoint> points;
    points.reserve(static_cast<std::size_t>(n_points));
    for (long p = 0; p < skip_periods + n_points; ++p) {
        const double t_base = static_cast<double>(p) * *period;
        if (p >= skip_periods) {
            check_finite(alpha, t_base);
            points.push_back({alpha.real(), alpha.imag(), t_base});
        }
        for (long k = 0; k < steps_per_period; ++k)
            alpha = rk4_step(params, alpha, t_base + static_cast<double>(k) * dt, dt);
    }
    return points;
}

int distinct_point_count(const std::vector<PhasePoint>& points, double resolution) {
    std::vector<PhasePoint> centers;
    for (const auto& p : points) {
        bool found = false;
        for (const auto& c : centers) {
            const double dx = p.x - c.x;
            const double dy = p.y - c.y;
            if (dx * dx + dy * dy <= resolution * resolution) {
                found = true;
                break;
            }
        }
        if (!found) centers.push_back(p);
    }
    return static_cast<int>(centers.size());
}

} // namespace semiclassical
} // namespace kerrchaos
