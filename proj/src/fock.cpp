#include "kerrchaos/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kerrchaos {

FockBasis::FockBasis(int dim_) : dim(dim_) {
    if (dim < 2) throw std::invalid_argument("FockBasis: dim must be >= 2, got " + std::to_string(dim));
}

void SystemParams::validate() const {
    if (!(nbar >= 0.0)) throw std::invalid_argument("SystemParams: nbar must be >= 0");
    kerrchaos::validate(drive);
}

namespace fock {

Matrix annihilation(const FockBasis& basis) {
    Matrix a = Matrix::Zero(basis.dim, basis.dim);
    for (int n = 1; n < basis.dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Matrix creation(const FockBasis& basis) {
    return annihilation(basis).adjoint();
}

Matrix number_operator(const FockBasis& basis) {
    Matrix n = Matrix::Zero(basis.dim, basis.dim);
    for (int k = 0; k < basis.dim; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

Matrix hamiltonian(const SystemParams& params, const FockBasis& basis, double t) {
    const Complex f = evaluate(params.drive, t);
    Matrix h = Matrix::Zero(basis.dim, basis.dim);
    for (int n = 0; n < basis.dim; ++n) {
        const double nn = static_cast<double>(n);
        h(n, n) = params.delta * nn + params.chi * nn * nn;
    }
    for (int n = 1; n < basis.dim; ++n) {
        const double s = std::sqrt(static_cast<double>(n));
        h(n, n - 1) = f * s;              // f a† raises
        h(n - 1, n) = std::conj(f) * s;   // f* a lowers
    }
    return h;
}

std::pair<Matrix, Matrix> lindblad_ops(const SystemParams& params, const FockBasis& basis) {
    if (!(params.nbar >= 0.0)) throw std::invalid_argument("lindblad_ops: nbar must be >= 0");
    const Matrix a = annihilation(basis);
    return {std::sqrt(params.nbar + 1.0) * a, std::sqrt(params.nbar) * a.adjoint()};
}

double tail_population(const Matrix& rho, int tail_levels) {
    const int dim = static_cast<int>(rho.rows());
    double tail = 0.0;
    for (int n = dim - tail_levels; n < dim; ++n) tail += rho(n, n).real();
    return tail;
}

bool truncation_adequate(const Matrix& rho, int tail_levels, double tol) {
    const int dim = static_cast<int>(rho.rows());
    if (tail_levels < 0 || tail_levels >= dim)
        throw std::invalid_argument("truncation_adequate: need 0 <= tail_levels < dim");
    return tail_population(rho, tail_levels) < tol;
}

Vector vacuum_state(const FockBasis& basis) {
    Vector psi = Vector::Zero(basis.dim);
    psi(0) = 1.0;
    return psi;
}

Vector fock_state(const FockBasis& basis, int n) {
    if (n < 0 || n >= basis.dim) throw std::invalid_argument("fock_state: level outside basis");
    Vector psi = Vector::Zero(basis.dim);
    psi(n) = 1.0;
    return psi;
}

Vector coherent_state(const FockBasis& basis, Complex alpha) {
    Vector psi(basis.dim);
    psi(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < basis.dim; ++n)
        psi(n) = psi(n - 1) * alpha / std::sqrt(static_cast<double>(n));
    psi.normalize();   // absorbs the truncated tail
    return psi;
}

Matrix vacuum_density(const FockBasis& basis) {
    return fock_projector(basis, 0);
}

Matrix fock_projector(const FockBasis& basis, int n) {
    Matrix rho = Matrix::Zero(basis.dim, basis.dim);
    if (n < 0 || n >= basis.dim) throw std::invalid_argument("fock_projector: level outside basis");
    rho(n, n) = 1.0;
    return rho;
}

Matrix thermal_density(const FockBasis& basis, double nbar) {
    if (!(nbar >= 0.0)) throw std::invalid_argument("thermal_density: nbar must be >= 0");
    Matrix rho = Matrix::Zero(basis.dim, basis.dim);
    if (nbar == 0.0) {
        rho(0, 0) = 1.0;
        return rho;
    }
    const double ratio = nbar / (nbar + 1.0);
    double p = 1.0 / (nbar + 1.0);
    double total = 0.0;
    for (int n = 0; n < basis.dim; ++n) {
        rho(n, n) = p;
        total += p;
        p *= ratio;
    }
    rho /= total;   // renormalize the truncated geometric series
    return rho;
}

Matrix maximally_mixed(const FockBasis& basis) {
    return Matrix::Identity(basis.dim, basis.dim) / static_cast<double>(basis.dim);
}

double hermiticity_defect(const Matrix& rho) {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

} // namespace fock
} // namespace kerrchaos
