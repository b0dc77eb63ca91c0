#include "kerrchaos/observables.hpp"

#include <cmath>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "kerrchaos/parallel.hpp"

namespace kerrchaos {

double WignerGrid::integral() const {
    return values.sum() * spec.dx() * spec.dy();
}

namespace observables {

double purity(const Matrix& rho) {
    // Tr(ρ²) = Σ_ij ρ_ij ρ_ji; for Hermitian ρ this is Σ |ρ_ij|²
    const Complex tr = (rho * rho).trace();
    return tr.real();
}

double excitation(const Matrix& rho) {
    double n = 0.0;
    for (int k = 0; k < rho.rows(); ++k) n += static_cast<double>(k) * rho(k, k).real();
    return n;
}

std::pair<double, double> entropies(const Matrix& rho) {
    const double p = purity(rho);
    Eigen::SelfAdjointEigenSolver<Matrix> solver((rho + rho.adjoint()) * 0.5);
    double s = 0.0;
    for (int i = 0; i < solver.eigenvalues().size(); ++i) {
        const double lambda = solver.eigenvalues()(i);
        if (lambda > 1e-14) s -= lambda * std::log(lambda);
    }
    return {1.0 - p, s};
}

ObservableRecord observe(double t, const Matrix& rho) {
    const auto [linear, von_neumann] = entropies(rho);
    return {t, excitation(rho), 1.0 - linear, linear, von_neumann};
}

double thermal_purity_oracle(double nbar) {
    if (!(nbar >= 0.0)) throw std::invalid_argument("thermal_purity_oracle: nbar must be >= 0");
    return 1.0 / (2.0 * nbar + 1.0);
}

double thermal_purity_series(double nbar, double tol) {
    if (nbar == 0.0) return 1.0;
    // populations p_n = n̄ⁿ/(n̄+1)^(n+1); sum of p_n² until the geometric tail
    // of the squared series drops below tol
    const double r = nbar / (nbar + 1.0);
    double p = 1.0 / (nbar + 1.0);
    double sum = 0.0;
    while (true) {
        const double term = p * p;
        sum += term;
        // remaining tail: term · r²/(1-r²)
        if (term * r * r / (1.0 - r * r) < tol) break;
        p *= r;
    }
    return sum;
}

WignerGrid wigner(const Matrix& rho, const WignerGridSpec& spec, int n_workers) {
    if (spec.nx < 2 || spec.ny < 2)
        throw std::invalid_argument("wigner: grid must be at least 2x2");
    const int dim = static_cast<int>(rho.rows());
    const FockBasis basis(dim);
    const Matrix a = fock::annihilation(basis);
    const Matrix adag = a.adjoint();

    RealVector parity(dim);
    for (int n = 0; n < dim; ++n) parity(n) = (n % 2 == 0) ? 1.0 : -1.0;

    WignerGrid grid;
    grid.spec = spec;
    grid.values.resize(spec.nx, spec.ny);

    parallel_for(
        static_cast<std::size_t>(spec.nx),
        [&](std::size_t ix) {
            Matrix displacement(dim, dim), rho_d(dim, dim);
            const double x = spec.x_min + static_cast<double>(ix) * spec.dx();
            for (int iy = 0; iy < spec.ny; ++iy) {
                const double y = spec.y_min + static_cast<double>(iy) * spec.dy();
                const Complex beta{x, y};
                displacement = (beta * adag - std::conj(beta) * a).exp();
                rho_d.noalias() = rho * displacement;
                // (2/π) Σ_n (-1)^n ⟨n|D†ρD|n⟩ = (2/π) Σ_n (-1)^n d_n†(ρD)_n
                Complex w{0.0, 0.0};
                for (int n = 0; n < dim; ++n)
                    w += parity(n) * displacement.col(n).dot(rho_d.col(n));
                grid.values(static_cast<Eigen::Index>(ix), iy) = (2.0 / kPi) * w.real();
            }
        },
        n_workers);

    const double total = grid.integral();
    grid.normalization_ok = total > 0.97 && total < 1.03;
    return grid;
}

WignerGridSpec default_grid_for(const Matrix& rho, int nx, int ny) {
    const double n = std::max(0.0, excitation(rho));
    const double bound = 2.0 * std::sqrt(n) + 3.0;
    return {-bound, bound, -bound, bound, nx, ny};
}

} // namespace observables
} // namespace kerrchaos
