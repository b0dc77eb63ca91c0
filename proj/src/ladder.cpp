#include "kerrchaos/ladder.hpp"

#include <cmath>

namespace kerrchaos::ladder {

Workspace::Workspace(const FockBasis& basis)
    : dim(basis.dim), sqrt_n(basis.dim), level(basis.dim), level_sq(basis.dim) {
    for (int k = 0; k < dim; ++k) {
        const double kk = static_cast<double>(k);
        sqrt_n(k) = std::sqrt(kk);
        level(k) = kk;
        level_sq(k) = kk * kk;
    }
}

Vector Workspace::hamiltonian_diagonal(const SystemParams& params) const {
    return params.delta * level + params.chi * level_sq;
}

void apply_lowering(const Workspace& w, const Vector& psi, Vector& out) {
    const int d = w.dim;
    out.resize(d);
    // (a psi)[n] = √(n+1) psi[n+1]
    out.head(d - 1) = w.sqrt_n.tail(d - 1).cwiseProduct(psi.tail(d - 1));
    out(d - 1) = 0.0;
}

void apply_raising(const Workspace& w, const Vector& psi, Vector& out) {
    const int d = w.dim;
    out.resize(d);
    // (a† psi)[n] = √n psi[n-1]
    out.tail(d - 1) = w.sqrt_n.tail(d - 1).cwiseProduct(psi.head(d - 1));
    out(0) = 0.0;
}

void apply_hamiltonian(const Workspace& w, const SystemParams& params, Complex f,
                       const Vector& psi, Vector& out) {
    const int d = w.dim;
    out.resize(d);
    out = (params.delta * w.level + params.chi * w.level_sq).cwiseProduct(psi);
    const auto s = w.sqrt_n.tail(d - 1);
    out.tail(d - 1) += f * s.cwiseProduct(psi.head(d - 1));
    out.head(d - 1) += std::conj(f) * s.cwiseProduct(psi.tail(d - 1));
}

void lower_left(const Workspace& w, const Matrix& rho, Matrix& out) {
    const int d = w.dim;
    out.resize(d, d);
    // (a ρ)[i][j] = √(i+1) ρ[i+1][j]
    out.topRows(d - 1) = w.sqrt_n.tail(d - 1).asDiagonal() * rho.bottomRows(d - 1);
    out.row(d - 1).setZero();
}

void raise_right(const Workspace& w, const Matrix& rho, Matrix& out) {
    const int d = w.dim;
    out.resize(d, d);
    // (ρ a†)[i][j] = √(j+1) ρ[i][j+1]
    out.leftCols(d - 1) = rho.rightCols(d - 1) * w.sqrt_n.tail(d - 1).asDiagonal();
    out.col(d - 1).setZero();
}

void sandwich_lowering(const Workspace& w, const Matrix& rho, Matrix& out) {
    const int d = w.dim;
    out.resize(d, d);
    // (a ρ a†)[i][j] = √(i+1)√(j+1) ρ[i+1][j+1]
    out.topLeftCorner(d - 1, d - 1) = w.sqrt_n.tail(d - 1).asDiagonal() *
                                      rho.bottomRightCorner(d - 1, d - 1) *
                                      w.sqrt_n.tail(d - 1).asDiagonal();
    out.row(d - 1).setZero();
    out.col(d - 1).setZero();
}

void sandwich_raising(const Workspace& w, const Matrix& rho, Matrix& out) {
    const int d = w.dim;
    out.resize(d, d);
    // (a† ρ a)[i][j] = √i √j ρ[i-1][j-1]
    out.bottomRightCorner(d - 1, d - 1) = w.sqrt_n.tail(d - 1).asDiagonal() *
                                          rho.topLeftCorner(d - 1, d - 1) *
                                          w.sqrt_n.tail(d - 1).asDiagonal();
    out.row(0).setZero();
    out.col(0).setZero();
}

void hamiltonian_left(const Workspace& w, const SystemParams& params, Complex f,
                      const Matrix& rho, Matrix& out) {
    const int d = w.dim;
    out.resize(d, d);
    out = w.hamiltonian_diagonal(params).asDiagonal() * rho;
    // f a† ρ: row i gains f √i ρ[i-1][:]
    out.bottomRows(d - 1) += f * (w.sqrt_n.tail(d - 1).asDiagonal() * rho.topRows(d - 1));
    // f* a ρ: row i gains f* √(i+1) ρ[i+1][:]
    out.topRows(d - 1) += std::conj(f) * (w.sqrt_n.tail(d - 1).asDiagonal() * rho.bottomRows(d - 1));
}

void hamiltonian_right(const Workspace& w, const SystemParams& params, Complex f,
                       const Matrix& rho, Matrix& out) {
    const int d = w.dim;
    out.resize(d, d);
    out = rho * w.hamiltonian_diagonal(params).asDiagonal();
    // ρ f a†: col j gains f √(j+1) ρ[:][j+1]
    out.leftCols(d - 1) += f * (rho.rightCols(d - 1) * w.sqrt_n.tail(d - 1).asDiagonal());
    // ρ f* a: col j gains f* √j ρ[:][j-1]
    out.rightCols(d - 1) += std::conj(f) * (rho.leftCols(d - 1) * w.sqrt_n.tail(d - 1).asDiagonal());
}

} // namespace kerrchaos::ladder
