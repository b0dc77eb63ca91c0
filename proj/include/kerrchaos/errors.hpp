// errors.hpp — error types thrown by the solvers and the run harness

#pragma once

#include <stdexcept>
#include <string>

namespace kerrchaos {

// Fock-space population leaked into the guard band at the top of the basis.
struct TruncationOverflow : std::runtime_error {
    explicit TruncationOverflow(const std::string& what) : std::runtime_error(what) {}
};

// A state or density matrix picked up a NaN/Inf element during evolution.
struct NonFiniteState : std::runtime_error {
    explicit NonFiniteState(const std::string& what) : std::runtime_error(what) {}
};

// Stroboscopic sampling requested for a drive with no modulation period.
struct NoPeriod : std::runtime_error {
    explicit NoPeriod(const std::string& what) : std::runtime_error(what) {}
};

// Constrained-excitation selection matched no grid point.
struct EmptySelection : std::runtime_error {
    explicit EmptySelection(const std::string& what) : std::runtime_error(what) {}
};

// Config file failed to parse or validate (CLI exit code 2).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace kerrchaos
