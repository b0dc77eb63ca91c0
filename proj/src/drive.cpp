#include "kerrchaos/drive.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kerrchaos {

namespace {

// Pulses further than 6 widths from t contribute below exp(-36) ≈ 2e-16 of a
// full pulse and are dropped, keeping the sum O(1) terms per call.
constexpr double kWindowWidths = 6.0;

double gaussian_train_sum(const GaussianTrainDrive& d, double t) {
    const double u = t - d.offset;
    const double window = kWindowWidths * d.width;
    long n_lo = static_cast<long>(std::ceil((u - window) / d.period));
    long n_hi = static_cast<long>(std::floor((u + window) / d.period));
    if (n_lo < 0) n_lo = 0;
    double sum = 0.0;
    for (long n = n_lo; n <= n_hi; ++n) {
        const double x = (u - static_cast<double>(n) * d.period) / d.width;
        sum += std::exp(-x * x);
    }
    return d.amp * sum;
}

} // namespace

void validate(const DriveSpec& spec) {
    if (const auto* g = std::get_if<GaussianTrainDrive>(&spec)) {
        if (!(g->width > 0.0)) throw std::invalid_argument("GaussianTrainDrive: width must be > 0");
        if (!(g->period > 0.0)) throw std::invalid_argument("GaussianTrainDrive: period must be > 0");
    } else if (const auto* b = std::get_if<BichromaticDrive>(&spec)) {
        if (!(b->delta_mod > 0.0))
            throw std::invalid_argument("BichromaticDrive: delta_mod must be > 0");
    }
}

Complex evaluate(const DriveSpec& spec, double t) {
    return std::visit(
        [t](const auto& d) -> Complex {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, ConstantDrive>) {
                return Complex{d.amp, 0.0};
            } else if constexpr (std::is_same_v<T, BichromaticDrive>) {
                return d.f0 + d.f1 * std::exp(kImag * (d.delta_mod * t));
            } else {
                return Complex{gaussian_train_sum(d, t), 0.0};
            }
        },
        spec);
}

std::optional<double> drive_period(const DriveSpec& spec) {
    if (const auto* b = std::get_if<BichromaticDrive>(&spec)) return 2.0 * kPi / b->delta_mod;
    if (const auto* g = std::get_if<GaussianTrainDrive>(&spec)) return g->period;
    return std::nullopt;
}

std::string describe(const DriveSpec& spec) {
    std::ostringstream out;
    std::visit(
        [&out](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, ConstantDrive>) {
                out << "constant(amp=" << d.amp << ")";
            } else if constexpr (std::is_same_v<T, BichromaticDrive>) {
                out << "bichromatic(f0=" << d.f0 << ", f1=" << d.f1
                    << ", delta_mod=" << d.delta_mod << ")";
            } else {
                out << "gaussian_train(amp=" << d.amp << ", width=" << d.width
                    << ", period=" << d.period << ", offset=" << d.offset << ")";
            }
        },
        spec);
    return out.str();
}

} // namespace kerrchaos
