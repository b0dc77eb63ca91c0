#include "kerrchaos/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "kerrchaos/errors.hpp"
#include "kerrchaos/io.hpp"
#include "kerrchaos/parallel.hpp"

namespace kerrchaos {

SweepParam sweep_param_from_name(const std::string& name) {
    if (name == "omega") return SweepParam::DriveAmp;
    if (name == "chi") return SweepParam::Chi;
    if (name == "delta") return SweepParam::Delta;
    if (name == "nbar") return SweepParam::Nbar;
    if (name == "f0") return SweepParam::F0;
    if (name == "f1") return SweepParam::F1;
    if (name == "delta_mod") return SweepParam::DeltaMod;
    if (name == "pulse_width") return SweepParam::PulseWidth;
    throw std::invalid_argument("unknown sweep parameter '" + name + "'");
}

std::string sweep_param_name(SweepParam p) {
    switch (p) {
        case SweepParam::DriveAmp: return "omega";
        case SweepParam::Chi: return "chi";
        case SweepParam::Delta: return "delta";
        case SweepParam::Nbar: return "nbar";
        case SweepParam::F0: return "f0";
        case SweepParam::F1: return "f1";
        case SweepParam::DeltaMod: return "delta_mod";
        case SweepParam::PulseWidth: return "pulse_width";
    }
    return "?";
}

SystemParams with_param(const SystemParams& base, SweepParam param, double value) {
    SystemParams out = base;
    switch (param) {
        case SweepParam::Chi: out.chi = value; return out;
        case SweepParam::Delta: out.delta = value; return out;
        case SweepParam::Nbar: out.nbar = value; return out;
        case SweepParam::DriveAmp:
            if (auto* c = std::get_if<ConstantDrive>(&out.drive)) { c->amp = value; return out; }
            if (auto* g = std::get_if<GaussianTrainDrive>(&out.drive)) { g->amp = value; return out; }
            throw std::invalid_argument("omega axis needs a constant or pulse-train drive");
        case SweepParam::PulseWidth:
            if (auto* g = std::get_if<GaussianTrainDrive>(&out.drive)) { g->width = value; return out; }
            throw std::invalid_argument("pulse_width axis needs a pulse-train drive");
        case SweepParam::F0:
            if (auto* b = std::get_if<BichromaticDrive>(&out.drive)) { b->f0 = value; return out; }
            throw std::invalid_argument("f0 axis needs a bichromatic drive");
        case SweepParam::F1:
            if (auto* b = std::get_if<BichromaticDrive>(&out.drive)) { b->f1 = value; return out; }
            throw std::invalid_argument("f1 axis needs a bichromatic drive");
        case SweepParam::DeltaMod:
            if (auto* b = std::get_if<BichromaticDrive>(&out.drive)) { b->delta_mod = value; return out; }
            throw std::invalid_argument("delta_mod axis needs a bichromatic drive");
    }
    throw std::invalid_argument("unhandled sweep parameter");
}

namespace {

void validate_axis(const SweepAxis& axis) {
    if (axis.values.empty()) throw std::invalid_argument("sweep axis: empty value list");
    for (std::size_t i = 1; i < axis.values.size(); ++i)
        if (!(axis.values[i] > axis.values[i - 1]))
            throw std::invalid_argument("sweep axis: values must be strictly increasing");
}

} // namespace

void SweepSpec::validate() const {
    validate_axis(axis1);
    if (axis2) validate_axis(*axis2);
    base.validate();
    evolution.validate();
    if (run_lyapunov) lyapunov.validate();
    if (fock_dim < 2) throw std::invalid_argument("SweepSpec: fock_dim must be >= 2");
    if (!run_quantum && !run_lyapunov)
        throw std::invalid_argument("SweepSpec: nothing to compute per point");
}

std::string sweep_row_header() {
    return "i,j,v1,v2,ok,error,mean_excitation,mean_purity,max_excitation,max_purity,lyapunov,"
           "has_quantum,has_lyapunov,seed";
}

std::string format_sweep_row(const SweepRow& r) {
    std::ostringstream out;
    out << r.i << ',' << r.j << ',' << io::format_double(r.v1) << ',' << io::format_double(r.v2)
        << ',' << (r.ok ? 1 : 0) << ',' << r.error << ',' << io::format_double(r.mean_excitation)
        << ',' << io::format_double(r.mean_purity) << ',' << io::format_double(r.max_excitation)
        << ',' << io::format_double(r.max_purity) << ',' << io::format_double(r.lyapunov) << ','
        << (r.has_quantum ? 1 : 0) << ',' << (r.has_lyapunov ? 1 : 0) << ',' << r.seed;
    return out.str();
}

void append_rows(const std::string& path, const std::vector<SweepRow>& rows, bool write_header) {
    std::ofstream out(path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open checkpoint file: " + path);
    if (write_header) out << sweep_row_header() << '\n';
    for (const auto& r : rows) out << format_sweep_row(r) << '\n';
}

std::vector<SweepRow> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {};
    std::string line;
    if (!std::getline(in, line)) return {};
    if (line != sweep_row_header())
        throw std::runtime_error("checkpoint file has unexpected header: " + path);
    std::vector<SweepRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        while (true) {
            const std::size_t pos = line.find(',', start);
            if (pos == std::string::npos) { cols.push_back(line.substr(start)); break; }
            cols.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        if (cols.size() != 14)
            throw std::runtime_error("checkpoint row has " + std::to_string(cols.size()) +
                                     " columns: " + path);
        SweepRow r;
        r.i = std::stoull(cols[0]);
        r.j = std::stoull(cols[1]);
        r.v1 = std::stod(cols[2]);
        r.v2 = std::stod(cols[3]);
        r.ok = cols[4] == "1";
        r.error = cols[5];
        r.mean_excitation = std::stod(cols[6]);
        r.mean_purity = std::stod(cols[7]);
        r.max_excitation = std::stod(cols[8]);
        r.max_purity = std::stod(cols[9]);
        r.lyapunov = std::stod(cols[10]);
        r.has_quantum = cols[11] == "1";
        r.has_lyapunov = cols[12] == "1";
        r.seed = std::stoull(cols[13]);
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

SweepRow compute_row(const SweepSpec& spec, std::size_t i, std::size_t j) {
    SweepRow row;
    row.i = i;
    row.j = j;
    row.v1 = spec.axis1.values[i];
    row.v2 = spec.axis2 ? spec.axis2->values[j] : 0.0;
    row.seed = spec.seed;

    SystemParams params = with_param(spec.base, spec.axis1.param, row.v1);
    if (spec.axis2) params = with_param(params, spec.axis2->param, row.v2);

    try {
        if (spec.run_quantum) {
            const FockBasis basis(spec.fock_dim);
            const auto result =
                lindblad::evolve(params, fock::vacuum_density(basis), spec.evolution);
            const auto summary = summarize(result.series, spec.evolution.transient);
            row.mean_excitation = summary.mean_excitation;
            row.mean_purity = summary.mean_purity;
            row.max_excitation = summary.max_excitation;
            row.max_purity = summary.max_purity;
            row.has_quantum = true;
        }
        if (spec.run_lyapunov) {
            row.lyapunov = semiclassical::lyapunov_max(params, spec.lyapunov);
            row.has_lyapunov = true;
        }
    } catch (const std::exception& e) {
        row.ok = false;
        std::string what = e.what();
        for (char& c : what)
            if (c == ',' || c == '\n') c = ';';
        row.error = what;
    }
    return row;
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    spec.validate();
    const std::size_t n1 = spec.axis1.values.size();
    const std::size_t n2 = spec.axis2 ? spec.axis2->values.size() : 1;

    std::map<std::pair<std::size_t, std::size_t>, SweepRow> done;
    bool checkpoint_exists = false;
    if (!spec.checkpoint_path.empty()) {
        for (auto& r : read_rows(spec.checkpoint_path)) {
            checkpoint_exists = true;
            done.emplace(std::make_pair(r.i, r.j), std::move(r));
        }
        checkpoint_exists = checkpoint_exists || std::ifstream(spec.checkpoint_path).good();
    }

    std::vector<std::pair<std::size_t, std::size_t>> todo;
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j)
            if (!done.count({i, j})) todo.emplace_back(i, j);

    std::mutex io_mutex;
    bool header_needed = !spec.checkpoint_path.empty() && !checkpoint_exists;

    std::vector<SweepRow> fresh(todo.size());
    parallel_for(
        todo.size(),
        [&](std::size_t idx) {
            const auto [i, j] = todo[idx];
            SweepRow row = compute_row(spec, i, j);
            if (!spec.checkpoint_path.empty()) {
                std::lock_guard<std::mutex> lock(io_mutex);
                append_rows(spec.checkpoint_path, {row}, header_needed);
                header_needed = false;
            }
            fresh[idx] = std::move(row);
        },
        spec.n_workers);

    std::vector<SweepRow> rows;
    rows.reserve(n1 * n2);
    for (auto& [key, row] : done) rows.push_back(std::move(row));
    for (auto& row : fresh) rows.push_back(std::move(row));
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        return a.i != b.i ? a.i < b.i : a.j < b.j;
    });
    return rows;
}

ConstraintSelection select_constant_excitation(const std::vector<SweepRow>& rows, double band_min,
                                               double band_max) {
    ConstraintSelection sel;
    sel.band_min = band_min;
    sel.band_max = band_max;
    const double centre = 0.5 * (band_min + band_max);

    std::map<std::size_t, SelectedPoint> best;
    std::map<std::size_t, double> best_distance;
    for (const auto& r : rows) {
        if (!r.ok || !r.has_quantum) continue;
        if (!(r.max_excitation > band_min && r.max_excitation < band_max)) continue;
        const double distance = std::abs(r.max_excitation - centre);
        auto it = best_distance.find(r.i);
        if (it == best_distance.end() || distance < it->second) {
            best_distance[r.i] = distance;
            best[r.i] = {r.i, r.j, r.v1, r.v2, r.max_excitation};
        }
    }
    for (auto& [i, p] : best) sel.selected.push_back(p);
    if (sel.selected.empty())
        throw EmptySelection("no grid point has max excitation inside (" +
                             io::format_double(band_min) + ", " + io::format_double(band_max) +
                             ")");
    return sel;
}

std::optional<std::size_t> detect_sign_change(const std::vector<double>& lyapunov) {
    for (std::size_t i = 1; i < lyapunov.size(); ++i)
        if ((lyapunov[i] >= 0.0) != (lyapunov[i - 1] >= 0.0)) return i;
    return std::nullopt;
}

std::optional<std::size_t> detect_steepest_drop(const std::vector<double>& purity) {
    std::optional<std::size_t> where;
    double biggest = 0.0;
    for (std::size_t i = 1; i < purity.size(); ++i) {
        const double drop = purity[i - 1] - purity[i];
        if (drop > biggest) {
            biggest = drop;
            where = i;
        }
    }
    return where;
}

TransitionCurve transition_curve(const ConstraintSelection& selection, const SweepSpec& spec,
                                 const std::vector<SweepRow>& rows) {
    if (selection.selected.empty()) throw EmptySelection("transition_curve: empty selection");

    std::map<std::pair<std::size_t, std::size_t>, const SweepRow*> by_key;
    for (const auto& r : rows) by_key[{r.i, r.j}] = &r;

    TransitionCurve curve;
    curve.points.resize(selection.selected.size());
    parallel_for(
        selection.selected.size(),
        [&](std::size_t idx) {
            const auto& p = selection.selected[idx];
            TransitionPoint tp;
            tp.v1 = p.v1;
            tp.v2 = p.v2;
            SystemParams params = with_param(spec.base, spec.axis1.param, p.v1);
            if (spec.axis2) params = with_param(params, spec.axis2->param, p.v2);

            const auto it = by_key.find({p.i, p.j});
            if (it != by_key.end() && it->second->ok && it->second->has_quantum) {
                tp.max_purity = it->second->max_purity;
            } else {
                const FockBasis basis(spec.fock_dim);
                const auto result =
                    lindblad::evolve(params, fock::vacuum_density(basis), spec.evolution);
                tp.max_purity = summarize(result.series, spec.evolution.transient).max_purity;
            }
            if (it != by_key.end() && it->second->ok && it->second->has_lyapunov)
                tp.lyapunov = it->second->lyapunov;
            else
                tp.lyapunov = semiclassical::lyapunov_max(params, spec.lyapunov);
            curve.points[idx] = tp;
        },
        spec.n_workers);

    std::vector<double> lyap, purity;
    for (const auto& p : curve.points) {
        lyap.push_back(p.lyapunov);
        purity.push_back(p.max_purity);
    }
    curve.lyapunov_sign_change = detect_sign_change(lyap);
    curve.steepest_purity_drop = detect_steepest_drop(purity);
    return curve;
}

} // namespace kerrchaos
