// fock.hpp — truncated Fock-basis operators for the driven Kerr oscillator.
//
// Everything is dimensionless: rates are ratios to the damping rate γ and
// time is γt, so γ never appears as a free parameter.

#pragma once

#include <utility>

#include "kerrchaos/drive.hpp"
#include "kerrchaos/types.hpp"

namespace kerrchaos {

// Number of retained Fock levels |0⟩..|dim-1⟩.
struct FockBasis {
    int dim;
    explicit FockBasis(int dim_);
};

// Oscillator parameters in units of γ.
struct SystemParams {
    double delta = 0.0;   // detuning Δ/γ
    double chi = 0.0;     // Kerr strength χ/γ
    double nbar = 0.0;    // bath mean quantum number N (≥ 0)
    DriveSpec drive = ConstantDrive{0.0};

    void validate() const;   // throws std::invalid_argument
};

namespace fock {

// ⟨n-1|a|n⟩ = √n
Matrix annihilation(const FockBasis& basis);
Matrix creation(const FockBasis& basis);
Matrix number_operator(const FockBasis& basis);

// H(t) = Δ a†a + χ (a†a)² + f(t) a† + f(t)* a, Hermitian for any drive.
Matrix hamiltonian(const SystemParams& params, const FockBasis& basis, double t);

// (L1, L2) = (√(N+1) a, √N a†)
std::pair<Matrix, Matrix> lindblad_ops(const SystemParams& params, const FockBasis& basis);

// True iff the total population of the top tail_levels Fock states is < tol.
bool truncation_adequate(const Matrix& rho, int tail_levels, double tol);

// Population held by the top tail_levels diagonal entries.
double tail_population(const Matrix& rho, int tail_levels);

// ----------------------------- state builders -----------------------------

Vector vacuum_state(const FockBasis& basis);
Vector fock_state(const FockBasis& basis, int n);
Vector coherent_state(const FockBasis& basis, Complex alpha);

Matrix vacuum_density(const FockBasis& basis);
Matrix fock_projector(const FockBasis& basis, int n);
Matrix thermal_density(const FockBasis& basis, double nbar);
Matrix maximally_mixed(const FockBasis& basis);

// max |ρ - ρ†| element; 0 for exactly Hermitian input
double hermiticity_defect(const Matrix& rho);

} // namespace fock
} // namespace kerrchaos
