#include "kerrchaos/harness.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "kerrchaos/errors.hpp"
#include "kerrchaos/io.hpp"
#include "kerrchaos/version.hpp"

namespace kerrchaos {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& message) { throw ConfigError(message); }

const json& require(const json& j, const std::string& key, const char* context) {
    const auto it = j.find(key);
    if (it == j.end()) fail(std::string(context) + ": missing key '" + key + "'");
    return *it;
}

double as_number(const json& j, const std::string& what) {
    if (!j.is_number()) fail(what + " must be a number");
    return j.get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
    const auto it = j.find(key);
    return it == j.end() ? fallback : as_number(*it, key);
}

int int_or(const json& j, const std::string& key, int fallback) {
    const auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number_integer()) fail(key + " must be an integer");
    return it->get<int>();
}

DriveSpec parse_drive(const json& j) {
    const std::string type = require(j, "type", "drive").get<std::string>();
    if (type == "constant") return ConstantDrive{as_number(require(j, "amp", "drive"), "amp")};
    if (type == "bichromatic")
        return BichromaticDrive{as_number(require(j, "f0", "drive"), "f0"),
                                as_number(require(j, "f1", "drive"), "f1"),
                                as_number(require(j, "delta_mod", "drive"), "delta_mod")};
    if (type == "gaussian_train")
        return GaussianTrainDrive{as_number(require(j, "amp", "drive"), "amp"),
                                  as_number(require(j, "width", "drive"), "width"),
                                  as_number(require(j, "period", "drive"), "period"),
                                  number_or(j, "offset", 0.0)};
    fail("drive.type must be constant | bichromatic | gaussian_train, got '" + type + "'");
}

json drive_to_json(const DriveSpec& d) {
    json j;
    std::visit(
        [&j](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, ConstantDrive>) {
                j = {{"type", "constant"}, {"amp", v.amp}};
            } else if constexpr (std::is_same_v<T, BichromaticDrive>) {
                j = {{"type", "bichromatic"}, {"f0", v.f0}, {"f1", v.f1},
                     {"delta_mod", v.delta_mod}};
            } else {
                j = {{"type", "gaussian_train"}, {"amp", v.amp}, {"width", v.width},
                     {"period", v.period}, {"offset", v.offset}};
            }
        },
        d);
    return j;
}

SystemParams parse_system(const json& j) {
    SystemParams p;
    p.delta = number_or(j, "delta", 0.0);
    p.chi = number_or(j, "chi", 0.0);
    p.nbar = number_or(j, "nbar", 0.0);
    p.drive = parse_drive(require(j, "drive", "system"));
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        fail(std::string("system: ") + e.what());
    }
    return p;
}

json system_to_json(const SystemParams& p) {
    return {{"delta", p.delta}, {"chi", p.chi}, {"nbar", p.nbar},
            {"drive", drive_to_json(p.drive)}};
}

void parse_evolution_into(const json& j, EvolutionConfig& cfg) {
    cfg.t_end = number_or(j, "t_end", cfg.t_end);
    cfg.dt = number_or(j, "dt", cfg.dt);
    cfg.record_every = int_or(j, "record_every", cfg.record_every);
    cfg.transient = number_or(j, "transient", cfg.transient);
    if (j.contains("allow_large_dt")) cfg.allow_large_dt = j.at("allow_large_dt").get<bool>();
    cfg.truncation_tail = int_or(j, "truncation_tail", cfg.truncation_tail);
    cfg.truncation_tol = number_or(j, "truncation_tol", cfg.truncation_tol);
    if (j.contains("check_truncation")) cfg.check_truncation = j.at("check_truncation").get<bool>();
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        fail(std::string("evolution: ") + e.what());
    }
}

LyapunovConfig parse_lyapunov(const json& j) {
    LyapunovConfig cfg;
    cfg.d0 = number_or(j, "d0", cfg.d0);
    cfg.renorm_every = int_or(j, "renorm_every", cfg.renorm_every);
    cfg.t_transient = number_or(j, "t_transient", cfg.t_transient);
    cfg.t_total = number_or(j, "t_total", cfg.t_total);
    cfg.dt = number_or(j, "dt", cfg.dt);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        fail(std::string("lyapunov: ") + e.what());
    }
    return cfg;
}

bool nearly_same(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }

void check_fixture_drift(const SystemParams& given, const SystemParams& table,
                         const std::string& name) {
    const json a = system_to_json(given);
    const json b = system_to_json(table);
    if (a != b)
        fail("config system block disagrees with fixture '" + name + "' table entry: given " +
             a.dump() + ", expected " + b.dump());
}

} // namespace

RunConfig parse_run_config(const json& j) {
    if (!j.is_object()) fail("run config must be a JSON object");
    RunConfig cfg;

    const Fixture* fx = nullptr;
    if (j.contains("fixture")) {
        cfg.fixture = j.at("fixture").get<std::string>();
        fx = &fixture_by_name(*cfg.fixture);
        cfg.system = fx->params;
        cfg.fock_dim = fx->fock_dim;
        cfg.evolution.dt = fx->dt;
        cfg.evolution.t_end = fx->t_end;
        cfg.evolution.transient = fx->transient;
    }

    if (j.contains("system")) {
        const SystemParams given = parse_system(j.at("system"));
        if (fx) check_fixture_drift(given, fx->params, fx->name);
        cfg.system = given;
    } else if (!fx) {
        fail("run config needs either 'system' or 'fixture'");
    }

    cfg.fock_dim = int_or(j, "fock_dim", cfg.fock_dim);
    if (cfg.fock_dim < 2) fail("fock_dim must be >= 2");

    if (j.contains("solver")) {
        const json& s = j.at("solver");
        const std::string type = require(s, "type", "solver").get<std::string>();
        if (type == "lindblad") {
            cfg.solver = SolverKind::Lindblad;
        } else if (type == "qsd") {
            cfg.solver = SolverKind::Qsd;
            cfg.n_traj = int_or(s, "n_traj", cfg.n_traj);
            if (cfg.n_traj < 1) fail("solver.n_traj must be >= 1");
        } else {
            fail("solver.type must be lindblad | qsd, got '" + type + "'");
        }
    }

    if (j.contains("evolution")) parse_evolution_into(j.at("evolution"), cfg.evolution);
    try {
        cfg.evolution.validate();
    } catch (const std::invalid_argument& e) {
        fail(std::string("evolution: ") + e.what());
    }

    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    cfg.workers = int_or(j, "workers", 0);

    if (j.contains("outputs")) {
        const json& out = j.at("outputs");
        if (out.contains("timeseries")) cfg.outputs.timeseries = out.at("timeseries").get<bool>();
        if (out.contains("wigner")) {
            const json& w = out.at("wigner");
            WignerOutputSpec spec;
            for (const auto& t : require(w, "at_times", "outputs.wigner"))
                spec.at_times.push_back(as_number(t, "outputs.wigner.at_times"));
            spec.nx = int_or(w, "nx", spec.nx);
            spec.ny = int_or(w, "ny", spec.ny);
            if (spec.nx < 2 || spec.ny < 2) fail("outputs.wigner: nx and ny must be >= 2");
            if (w.contains("bounds")) {
                const json& b = w.at("bounds");
                spec.bounds = WignerGridSpec{as_number(require(b, "x_min", "bounds"), "x_min"),
                                             as_number(require(b, "x_max", "bounds"), "x_max"),
                                             as_number(require(b, "y_min", "bounds"), "y_min"),
                                             as_number(require(b, "y_max", "bounds"), "y_max"),
                                             spec.nx, spec.ny};
            }
            cfg.outputs.wigner = spec;
        }
        if (out.contains("poincare")) {
            const json& p = out.at("poincare");
            PoincareOutputSpec spec;
            spec.n_points = int_or(p, "n_points", spec.n_points);
            spec.transient = number_or(p, "transient", spec.transient);
            if (spec.n_points < 1) fail("outputs.poincare.n_points must be >= 1");
            cfg.outputs.poincare = spec;
        }
        if (out.contains("lyapunov")) cfg.outputs.lyapunov = parse_lyapunov(out.at("lyapunov"));
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail("config parse error in " + path.string() + ": " + e.what());
    }
    return parse_run_config(j);
}

SweepRunConfig parse_sweep_config(const json& j) {
    if (!j.is_object()) fail("sweep config must be a JSON object");
    SweepRunConfig cfg;
    cfg.spec.base = parse_system(require(j, "base", "sweep"));
    cfg.spec.fock_dim = int_or(j, "fock_dim", cfg.spec.fock_dim);

    auto parse_axis = [](const json& a, const char* which) {
        SweepAxis axis;
        axis.param = sweep_param_from_name(require(a, "param", which).get<std::string>());
        if (a.contains("values")) {
            for (const auto& v : a.at("values")) axis.values.push_back(as_number(v, "axis value"));
        } else {
            const double from = as_number(require(a, "from", which), "from");
            const double to = as_number(require(a, "to", which), "to");
            const double step = as_number(require(a, "step", which), "step");
            if (!(step > 0.0)) fail(std::string(which) + ": step must be > 0");
            for (double v = from; v <= to + 1e-12 * step; v += step) axis.values.push_back(v);
        }
        return axis;
    };
    cfg.spec.axis1 = parse_axis(require(j, "axis1", "sweep"), "axis1");
    if (j.contains("axis2")) cfg.spec.axis2 = parse_axis(j.at("axis2"), "axis2");

    if (j.contains("evolution")) parse_evolution_into(j.at("evolution"), cfg.spec.evolution);
    if (j.contains("lyapunov")) cfg.spec.lyapunov = parse_lyapunov(j.at("lyapunov"));

    if (j.contains("diagnostics")) {
        cfg.spec.run_quantum = false;
        cfg.spec.run_lyapunov = false;
        for (const auto& d : j.at("diagnostics")) {
            const std::string name = d.get<std::string>();
            if (name == "quantum") cfg.spec.run_quantum = true;
            else if (name == "lyapunov") cfg.spec.run_lyapunov = true;
            else fail("diagnostics entries must be quantum | lyapunov, got '" + name + "'");
        }
    }
    if (j.contains("selection_band")) {
        const json& b = j.at("selection_band");
        if (!b.is_array() || b.size() != 2) fail("selection_band must be [min, max]");
        cfg.selection_band = {as_number(b[0], "band min"), as_number(b[1], "band max")};
        if (!(cfg.selection_band->first < cfg.selection_band->second))
            fail("selection_band: min must be < max");
        cfg.spec.run_lyapunov = true;   // the transition curve needs exponents
    }
    if (j.contains("seed")) cfg.spec.seed = j.at("seed").get<std::uint64_t>();
    cfg.spec.n_workers = int_or(j, "workers", 0);
    if (j.contains("name")) cfg.name = j.at("name").get<std::string>();
    try {
        cfg.spec.validate();
    } catch (const std::invalid_argument& e) {
        fail(std::string("sweep: ") + e.what());
    }
    return cfg;
}

SweepRunConfig load_sweep_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        fail("config parse error in " + path.string() + ": " + e.what());
    }
    return parse_sweep_config(j);
}

std::string config_hash(const json& j) {
    const std::string dump = j.dump();
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (const unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
    return buffer;
}

namespace {

std::string time_tag(double t) {
    std::string s = io::format_double(t);
    for (char& c : s)
        if (c == '.') c = 'p';
    return s;
}

void write_json(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

} // namespace

ResultBundle run(const RunConfig& cfg, const json& raw_config,
                 const std::filesystem::path& out_root, bool force) {
    const std::string stem = cfg.fixture.value_or("run");
    const std::filesystem::path dir = out_root / (stem + "-" + config_hash(raw_config));

    ResultBundle bundle;
    bundle.dir = dir;
    if (!force && std::filesystem::exists(dir / "manifest.json")) {
        bundle.reused = true;
        if (std::filesystem::exists(dir / "timeseries.csv"))
            bundle.series = io::read_timeseries_csv(dir / "timeseries.csv");
        bundle.summary = summarize(bundle.series, cfg.evolution.transient);
        return bundle;
    }
    std::filesystem::create_directories(dir);

    const auto t_begin = std::chrono::steady_clock::now();
    const FockBasis basis(cfg.fock_dim);

    std::vector<double> snapshot_times;
    if (cfg.outputs.wigner) snapshot_times = cfg.outputs.wigner->at_times;

    std::vector<std::pair<double, Matrix>> snapshots;
    if (cfg.solver == SolverKind::Lindblad) {
        auto result = lindblad::evolve(cfg.system, fock::vacuum_density(basis), cfg.evolution,
                                       snapshot_times);
        bundle.series = std::move(result.series);
        snapshots = std::move(result.snapshots);
    } else {
        EnsembleConfig ens;
        ens.n_traj = cfg.n_traj;
        ens.seed = cfg.seed;
        ens.dt = cfg.evolution.dt;
        ens.t_end = cfg.evolution.t_end;
        ens.record_every = cfg.evolution.record_every;
        ens.transient = cfg.evolution.transient;
        ens.n_workers = cfg.workers;
        ens.truncation_tail = cfg.evolution.truncation_tail;
        ens.truncation_tol = cfg.evolution.truncation_tol;
        ens.check_truncation = cfg.evolution.check_truncation;
        auto result = qsd::run_ensemble(cfg.system, basis, ens, snapshot_times);
        bundle.series = std::move(result.series);
        snapshots = std::move(result.snapshots);
    }
    bundle.summary = summarize(bundle.series, cfg.evolution.transient);

    json diagnostics;
    if (cfg.outputs.timeseries) {
        io::write_timeseries_csv(dir / "timeseries.csv", bundle.series);
        diagnostics["summary"] = {{"mean_excitation", bundle.summary.mean_excitation},
                                  {"mean_purity", bundle.summary.mean_purity},
                                  {"max_excitation", bundle.summary.max_excitation},
                                  {"max_purity", bundle.summary.max_purity},
                                  {"transient_cut", cfg.evolution.transient},
                                  {"n_samples", bundle.summary.n_samples}};
    }

    if (cfg.outputs.wigner) {
        json normalization = json::array();
        for (const auto& [t, rho] : snapshots) {
            WignerGridSpec spec = cfg.outputs.wigner->bounds.value_or(
                observables::default_grid_for(rho, cfg.outputs.wigner->nx, cfg.outputs.wigner->ny));
            spec.nx = cfg.outputs.wigner->nx;
            spec.ny = cfg.outputs.wigner->ny;
            const WignerGrid grid = observables::wigner(rho, spec, cfg.workers);
            const auto path = dir / ("wigner_t" + time_tag(t) + ".grid");
            io::write_wigner_grid(path, grid);
            bundle.wigner_files.push_back(path);
            normalization.push_back({{"t", t},
                                     {"integral", grid.integral()},
                                     {"normalization_ok", grid.normalization_ok}});
            if (!grid.normalization_ok)
                std::fprintf(stderr,
                             "warning: wigner grid at t=%g integrates to %g (grid too coarse or "
                             "too small)\n",
                             t, grid.integral());
        }
        diagnostics["wigner"] = normalization;
    }

    if (cfg.outputs.poincare) {
        const auto points = semiclassical::poincare_section(
            cfg.system, Complex{0.0, 0.0}, cfg.outputs.poincare->n_points,
            cfg.outputs.poincare->transient);
        io::write_poincare_csv(dir / "poincare.csv", points);
        bundle.poincare_file = dir / "poincare.csv";
        diagnostics["poincare"] = {
            {"n_points", static_cast<int>(points.size())},
            {"distinct_1e-3", semiclassical::distinct_point_count(points, 1e-3)}};
    }

    if (cfg.outputs.lyapunov) {
        bundle.lyapunov = semiclassical::lyapunov_max(cfg.system, *cfg.outputs.lyapunov);
        diagnostics["lyapunov"] = *bundle.lyapunov;
    }

    const double wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();

    write_json(dir / "diagnostics.json", diagnostics);
    write_json(dir / "manifest.json", json{{"tool", "kerrchaos"},
                                           {"version", kVersion},
                                           {"config", raw_config},
                                           {"config_hash", config_hash(raw_config)},
                                           {"seed", cfg.seed},
                                           {"wall_seconds", wall_seconds}});
    return bundle;
}

std::filesystem::path run_sweep_bundle(const SweepRunConfig& cfg, const json& raw_config,
                                       const std::filesystem::path& out_root, bool force) {
    const std::filesystem::path dir = out_root / (cfg.name + "-" + config_hash(raw_config));
    if (!force && std::filesystem::exists(dir / "manifest.json")) return dir;
    std::filesystem::create_directories(dir);

    const auto t_begin = std::chrono::steady_clock::now();

    SweepSpec spec = cfg.spec;
    spec.checkpoint_path = (dir / "checkpoint.csv").string();
    const auto rows = run_sweep(spec);

    {
        std::ofstream out(dir / "rows.csv");
        out << sweep_row_header() << '\n';
        for (const auto& r : rows) out << format_sweep_row(r) << '\n';
    }

    json diagnostics;
    diagnostics["n_rows"] = rows.size();
    std::size_t failures = 0;
    for (const auto& r : rows)
        if (!r.ok) ++failures;
    diagnostics["n_failed"] = failures;

    if (cfg.selection_band) {
        const auto selection =
            select_constant_excitation(rows, cfg.selection_band->first, cfg.selection_band->second);
        {
            std::ofstream out(dir / "selection.csv");
            out << "omega,chi,max_excitation\n";
            for (const auto& p : selection.selected)
                out << io::format_double(p.v1) << ',' << io::format_double(p.v2) << ','
                    << io::format_double(p.max_excitation) << '\n';
        }
        const auto curve = transition_curve(selection, spec, rows);
        {
            std::ofstream out(dir / "transition.csv");
            out << "omega,chi,max_purity,lyapunov\n";
            for (const auto& p : curve.points)
                out << io::format_double(p.v1) << ',' << io::format_double(p.v2) << ','
                    << io::format_double(p.max_purity) << ',' << io::format_double(p.lyapunov)
                    << '\n';
        }
        diagnostics["selection"] = {{"band_min", cfg.selection_band->first},
                                    {"band_max", cfg.selection_band->second},
                                    {"n_selected", selection.selected.size()}};
        if (curve.lyapunov_sign_change)
            diagnostics["lyapunov_sign_change_index"] = *curve.lyapunov_sign_change;
        if (curve.steepest_purity_drop)
            diagnostics["steepest_purity_drop_index"] = *curve.steepest_purity_drop;
    }

    const double wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
    write_json(dir / "diagnostics.json", diagnostics);
    write_json(dir / "manifest.json", json{{"tool", "kerrchaos"},
                                           {"version", kVersion},
                                           {"config", raw_config},
                                           {"config_hash", config_hash(raw_config)},
                                           {"seed", cfg.spec.seed},
                                           {"wall_seconds", wall_seconds}});
    return dir;
}

void export_bundle(const std::filesystem::path& bundle_dir, const std::string& format) {
    if (!std::filesystem::exists(bundle_dir / "manifest.json"))
        fail("not a result bundle (no manifest.json): " + bundle_dir.string());
    const auto out_dir = bundle_dir / "export";
    std::filesystem::create_directories(out_dir);

    if (format == "csv" || format == "grid") {
        const char* extension = format == "csv" ? ".csv" : ".grid";
        for (const auto& entry : std::filesystem::directory_iterator(bundle_dir))
            if (entry.is_regular_file() && entry.path().extension() == extension)
                std::filesystem::copy_file(entry.path(), out_dir / entry.path().filename(),
                                           std::filesystem::copy_options::overwrite_existing);
        return;
    }
    if (format == "png") {
        for (const auto& entry : std::filesystem::directory_iterator(bundle_dir)) {
            if (!entry.is_regular_file() || entry.path().extension() != ".grid") continue;
            const WignerGrid grid = io::read_wigner_grid(entry.path());
            auto out = out_dir / entry.path().filename();
            out.replace_extension(".png");
            io::render_grid_png(out, grid);
        }
        return;
    }
    fail("export format must be csv | grid | png, got '" + format + "'");
}

std::string format_fixture_table() {
    std::ostringstream out;
    for (const auto& fx : fixtures()) {
        out << fx.name << "  " << describe(fx.params.drive) << "  delta=" << fx.params.delta
            << " chi=" << fx.params.chi << " nbar=" << fx.params.nbar
            << "  fock_dim=" << fx.fock_dim << " dt=" << fx.dt << "\n      ";
        if (fx.mean_excitation)
            out << "excitation " << fx.mean_excitation->value << "±" << fx.mean_excitation->tolerance
                << "  ";
        if (fx.mean_purity)
            out << "purity " << fx.mean_purity->value << "±" << fx.mean_purity->tolerance << "  ";
        if (fx.lyapunov)
            out << "lyapunov " << fx.lyapunov->value << "±" << fx.lyapunov->tolerance;
        out << "\n      " << fx.description << "\n";
    }
    return out.str();
}

json fixture_config(const std::string& name) {
    const Fixture& fx = fixture_by_name(name);
    json j;
    j["fixture"] = fx.name;
    j["system"] = system_to_json(fx.params);
    j["fock_dim"] = fx.fock_dim;
    j["solver"] = {{"type", "qsd"}, {"n_traj", 1000}};
    j["evolution"] = {{"t_end", fx.t_end}, {"dt", fx.dt}, {"record_every", 50},
                      {"transient", fx.transient}};
    j["seed"] = 20824;
    j["outputs"] = {{"timeseries", true},
                    {"wigner", {{"at_times", {fx.t_end}}, {"nx", 101}, {"ny", 101}}}};
    if (drive_period(fx.params.drive))
        j["outputs"]["poincare"] = {{"n_points", 1000}, {"transient", 100.0}};
    j["outputs"]["lyapunov"] = {{"d0", 1e-8}, {"renorm_every", 10}, {"t_transient", 100.0},
                                {"t_total", 2000.0}};
    return j;
}

} // namespace kerrchaos
