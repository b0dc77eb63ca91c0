// types.hpp — shared aliases and constants for the kerrchaos library

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace kerrchaos {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;   // dense complex operator on the truncated Fock space
using Vector  = Eigen::VectorXcd;   // pure-state amplitude vector
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr Complex kImag{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

} // namespace kerrchaos
