// io.hpp — file formats: observable CSV, Wigner grid files, Poincaré CSV,
// and the optional PNG rendering of a grid. All numeric output goes through
// format_double (std::to_chars, 9 significant digits, locale-independent).

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "kerrchaos/observables.hpp"
#include "kerrchaos/semiclassical.hpp"

namespace kerrchaos::io {

std::string format_double(double value);

// timeseries CSV: header "t,excitation,purity,linear_entropy,von_neumann"
void write_timeseries_csv(const std::filesystem::path& path,
                          std::span<const ObservableRecord> series);
std::vector<ObservableRecord> read_timeseries_csv(const std::filesystem::path& path);

// Wigner grid file: text, self-describing
//   line 1: "wigner-grid 1"
//   line 2: x_min x_max nx
//   line 3: y_min y_max ny
//   then nx rows of ny values (row index = x)
void write_wigner_grid(const std::filesystem::path& path, const WignerGrid& grid);
WignerGrid read_wigner_grid(const std::filesystem::path& path);

// Poincaré points as two-column CSV "x,y"
void write_poincare_csv(const std::filesystem::path& path, std::span<const PhasePoint> points);
std::vector<PhasePoint> read_poincare_csv(const std::filesystem::path& path);

// Diverging-colormap raster of the grid values (negative blue, positive red).
void render_grid_png(const std::filesystem::path& path, const WignerGrid& grid);

} // namespace kerrchaos::io
