// drive.hpp — time-dependent drive amplitude f(t) shared by the quantum and
// semiclassical solvers. All rates are ratios to the damping rate, time is γt.

#pragma once

#include <optional>
#include <string>
#include <variant>

#include "kerrchaos/types.hpp"

namespace kerrchaos {

// f(t) = amp
struct ConstantDrive {
    double amp = 0.0;
};

// f(t) = f0 + f1 exp(i delta_mod t); modulation period 2π/delta_mod
struct BichromaticDrive {
    double f0 = 0.0;
    double f1 = 0.0;
    double delta_mod = 1.0;
};

// f(t) = amp Σ_{n≥0} exp(-(t - offset - n·period)² / width²)
struct GaussianTrainDrive {
    double amp = 0.0;
    double width = 1.0;    // pulse duration T
    double period = 1.0;   // pulse spacing τ
    double offset = 0.0;   // first-pulse centre t0
};

using DriveSpec = std::variant<ConstantDrive, BichromaticDrive, GaussianTrainDrive>;

// Throws std::invalid_argument on nonpositive width/period/modulation frequency.
void validate(const DriveSpec& spec);

Complex evaluate(const DriveSpec& spec, double t);

// Modulation period: 2π/delta_mod (bichromatic), τ (pulse train), none (constant).
std::optional<double> drive_period(const DriveSpec& spec);

std::string describe(const DriveSpec& spec);

} // namespace kerrchaos
