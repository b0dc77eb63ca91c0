// observables.hpp — state functionals: excitation number, purity, entropies,
// the closed-form thermal purity, and the Wigner function on a phase-space
// grid via displaced parity.

#pragma once

#include <vector>

#include "kerrchaos/fock.hpp"
#include "kerrchaos/types.hpp"

namespace kerrchaos {

struct ObservableRecord {
    double t = 0.0;
    double excitation = 0.0;      // ⟨a†a⟩
    double purity = 0.0;          // Tr ρ²
    double linear_entropy = 0.0;  // 1 - Tr ρ²
    double von_neumann = 0.0;     // -Σ λ ln λ
};

struct WignerGridSpec {
    double x_min = -5.0, x_max = 5.0;
    double y_min = -5.0, y_max = 5.0;
    int nx = 101, ny = 101;

    double dx() const { return nx > 1 ? (x_max - x_min) / (nx - 1) : 0.0; }
    double dy() const { return ny > 1 ? (y_max - y_min) / (ny - 1) : 0.0; }
};

struct WignerGrid {
    WignerGridSpec spec;
    RealMatrix values;        // nx × ny, row index = x, column index = y
    bool normalization_ok = true;   // grid-too-coarse / too-small warning flag

    double integral() const;  // Σ W dx dy over the grid
};

namespace observables {

double purity(const Matrix& rho);
double excitation(const Matrix& rho);

// (linear entropy, von Neumann entropy); eigenvalues below 1e-14 contribute 0
std::pair<double, double> entropies(const Matrix& rho);

ObservableRecord observe(double t, const Matrix& rho);

// Closed form 1/(2n̄+1) for a thermal state.
double thermal_purity_oracle(double nbar);
// Same quantity summed term by term over the geometric populations, stopping
// when the running tail is below tol; cross-checks the closed form.
double thermal_purity_series(double nbar, double tol = 1e-12);

// W(x+iy) = (2/π) Σ_n (-1)^n ⟨n|D(β)† ρ D(β)|n⟩ with D(β) = exp(βa† - β*a)
// evaluated by matrix exponential once per grid point. Normalized so that
// ∫ W dx dy = 1 when the grid encloses the state's support.
WignerGrid wigner(const Matrix& rho, const WignerGridSpec& spec, int n_workers = 0);

// Square grid bounds ±(2√(excitation)+3), centred on the origin.
WignerGridSpec default_grid_for(const Matrix& rho, int nx = 101, int ny = 101);

} // namespace observables
} // namespace kerrchaos
