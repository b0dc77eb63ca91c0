#include "kerrchaos/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <png.h>

namespace kerrchaos::io {

std::string format_double(double value) {
    char buffer[40];
    const auto result =
        std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 9);
    return std::string(buffer, result.ptr);
}

namespace {

double parse_double(std::string_view token, const char* context) {
    double value = 0.0;
    const auto result = std::from_chars(token.data(), token.data() + token.size(), value);
    if (result.ec != std::errc{})
        throw std::runtime_error(std::string(context) + ": bad number '" + std::string(token) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    return in;
}

} // namespace

void write_timeseries_csv(const std::filesystem::path& path,
                          std::span<const ObservableRecord> series) {
    auto out = open_out(path);
    out << "t,excitation,purity,linear_entropy,von_neumann\n";
    for (const auto& r : series) {
        out << format_double(r.t) << ',' << format_double(r.excitation) << ','
            << format_double(r.purity) << ',' << format_double(r.linear_entropy) << ','
            << format_double(r.von_neumann) << '\n';
    }
}

std::vector<ObservableRecord> read_timeseries_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("timeseries CSV: missing header");
    std::vector<ObservableRecord> series;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 5) throw std::runtime_error("timeseries CSV: expected 5 columns");
        series.push_back({parse_double(cols[0], "t"), parse_double(cols[1], "excitation"),
                          parse_double(cols[2], "purity"), parse_double(cols[3], "linear_entropy"),
                          parse_double(cols[4], "von_neumann")});
    }
    return series;
}

void write_wigner_grid(const std::filesystem::path& path, const WignerGrid& grid) {
    auto out = open_out(path);
    out << "wigner-grid 1\n";
    out << format_double(grid.spec.x_min) << ' ' << format_double(grid.spec.x_max) << ' '
        << grid.spec.nx << '\n';
    out << format_double(grid.spec.y_min) << ' ' << format_double(grid.spec.y_max) << ' '
        << grid.spec.ny << '\n';
    for (int ix = 0; ix < grid.spec.nx; ++ix) {
        for (int iy = 0; iy < grid.spec.ny; ++iy) {
            if (iy) out << ' ';
            out << format_double(grid.values(ix, iy));
        }
        out << '\n';
    }
}

WignerGrid read_wigner_grid(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string magic;
    int version = 0;
    in >> magic >> version;
    if (magic != "wigner-grid" || version != 1)
        throw std::runtime_error("wigner grid: bad header in " + path.string());
    WignerGrid grid;
    in >> grid.spec.x_min >> grid.spec.x_max >> grid.spec.nx;
    in >> grid.spec.y_min >> grid.spec.y_max >> grid.spec.ny;
    if (!in || grid.spec.nx < 1 || grid.spec.ny < 1)
        throw std::runtime_error("wigner grid: bad bounds in " + path.string());
    grid.values.resize(grid.spec.nx, grid.spec.ny);
    for (int ix = 0; ix < grid.spec.nx; ++ix)
        for (int iy = 0; iy < grid.spec.ny; ++iy)
            if (!(in >> grid.values(ix, iy)))
                throw std::runtime_error("wigner grid: truncated values in " + path.string());
    return grid;
}

void write_poincare_csv(const std::filesystem::path& path, std::span<const PhasePoint> points) {
    auto out = open_out(path);
    out << "x,y\n";
    for (const auto& p : points)
        out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

std::vector<PhasePoint> read_poincare_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("poincare CSV: missing header");
    std::vector<PhasePoint> points;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cols = split(line, ',');
        if (cols.size() != 2) throw std::runtime_error("poincare CSV: expected 2 columns");
        points.push_back({parse_double(cols[0], "x"), parse_double(cols[1], "y"), 0.0});
    }
    return points;
}

void render_grid_png(const std::filesystem::path& path, const WignerGrid& grid) {
    const int nx = grid.spec.nx;
    const int ny = grid.spec.ny;
    const double peak = std::max(1e-300, grid.values.cwiseAbs().maxCoeff());

    // rows top-to-bottom = y descending; columns = x ascending
    std::vector<png_byte> image(static_cast<std::size_t>(nx) * ny * 3);
    for (int row = 0; row < ny; ++row) {
        const int iy = ny - 1 - row;
        for (int ix = 0; ix < nx; ++ix) {
            const double v = grid.values(ix, iy) / peak;   // [-1, 1]
            png_byte* px = &image[(static_cast<std::size_t>(row) * nx + ix) * 3];
            if (v >= 0.0) {
                px[0] = 255;
                px[1] = px[2] = static_cast<png_byte>(std::lround(255.0 * (1.0 - v)));
            } else {
                px[2] = 255;
                px[0] = px[1] = static_cast<png_byte>(std::lround(255.0 * (1.0 + v)));
            }
        }
    }

    FILE* file = std::fopen(path.string().c_str(), "wb");
    if (!file) throw std::runtime_error("cannot open for writing: " + path.string());
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info || setjmp(png_jmpbuf(png))) {
        if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
        std::fclose(file);
        throw std::runtime_error("png write failed: " + path.string());
    }
    png_init_io(png, file);
    png_set_IHDR(png, info, static_cast<png_uint_32>(nx), static_cast<png_uint_32>(ny), 8,
                 PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (int row = 0; row < ny; ++row)
        png_write_row(png, &image[static_cast<std::size_t>(row) * nx * 3]);
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    std::fclose(file);
}

} // namespace kerrchaos::io
