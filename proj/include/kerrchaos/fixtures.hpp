// fixtures.hpp — the six named figure parameter sets with their expected
// diagnostics and tolerances; the regression anchors of the toolkit.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kerrchaos/fock.hpp"

namespace kerrchaos {

struct ExpectedValue {
    double value = 0.0;
    double tolerance = 0.0;

    bool contains(double measured) const {
        return measured >= value - tolerance && measured <= value + tolerance;
    }
};

struct Fixture {
    std::string name;
    std::string description;
    SystemParams params;
    int fock_dim = 60;
    double dt = 1e-3;
    double t_end = 60.0;
    double transient = 20.0;

    std::optional<ExpectedValue> mean_excitation;
    std::optional<ExpectedValue> mean_purity;
    std::optional<ExpectedValue> lyapunov;
};

const std::vector<Fixture>& fixtures();

// Throws ConfigError for an unknown name.
const Fixture& fixture_by_name(const std::string& name);

} // namespace kerrchaos
