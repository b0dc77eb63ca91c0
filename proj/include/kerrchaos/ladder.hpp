// ladder.hpp — structured actions of ladder-built operators.
//
// Every operator in the model (H, a, a†, a†a, (a†a)²) is banded in the Fock
// basis, so matrix-vector actions cost O(dim) and Liouvillian actions cost
// O(dim²) instead of the dense O(dim²)/O(dim³). The dense builders in
// fock.hpp stay the reference the tests check these kernels against.

#pragma once

#include "kerrchaos/fock.hpp"
#include "kerrchaos/types.hpp"

namespace kerrchaos::ladder {

// Per-dimension constants reused across many applies.
struct Workspace {
    explicit Workspace(const FockBasis& basis);

    int dim;
    Vector sqrt_n;    // sqrt_n[k] = √k, k = 0..dim-1 (complex-typed for Eigen products)
    Vector level;     // level[k] = k
    Vector level_sq;  // level[k]²

    // Diagonal of Δ a†a + χ (a†a)² for given params.
    Vector hamiltonian_diagonal(const SystemParams& params) const;
};

// out = a·psi
void apply_lowering(const Workspace& w, const Vector& psi, Vector& out);
// out = a†·psi
void apply_raising(const Workspace& w, const Vector& psi, Vector& out);
// out = H(t)·psi with H = Δ a†a + χ (a†a)² + f a† + f* a
void apply_hamiltonian(const Workspace& w, const SystemParams& params, Complex f,
                       const Vector& psi, Vector& out);

// out = a·rho, out = rho·a†, out = a·rho·a†, out = a†·rho·a
void lower_left(const Workspace& w, const Matrix& rho, Matrix& out);
void raise_right(const Workspace& w, const Matrix& rho, Matrix& out);
void sandwich_lowering(const Workspace& w, const Matrix& rho, Matrix& out);
void sandwich_raising(const Workspace& w, const Matrix& rho, Matrix& out);

// out = H(t)·rho and out = rho·H(t)
void hamiltonian_left(const Workspace& w, const SystemParams& params, Complex f,
                      const Matrix& rho, Matrix& out);
void hamiltonian_right(const Workspace& w, const SystemParams& params, Complex f,
                       const Matrix& rho, Matrix& out);

} // namespace kerrchaos::ladder
