// kerrchaos_cli.cpp — command-line front end: run single experiments or
// sweeps from JSON configs, list fixtures, export bundle artifacts.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "kerrchaos/errors.hpp"
#include "kerrchaos/harness.hpp"
#include "kerrchaos/io.hpp"
#include "kerrchaos/version.hpp"

using namespace kerrchaos;

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return j;
}

int do_run(const std::string& config_path, const std::string& out_root, bool force) {
    const nlohmann::json raw = load_json(config_path);
    const RunConfig cfg = parse_run_config(raw);
    const ResultBundle bundle = run(cfg, raw, out_root, force);
    if (bundle.reused) {
        std::printf("bundle already exists (use --force to rerun): %s\n",
                    bundle.dir.string().c_str());
        return 0;
    }
    std::printf("bundle: %s\n", bundle.dir.string().c_str());
    std::printf("post-transient mean excitation %s, mean purity %s\n",
                io::format_double(bundle.summary.mean_excitation).c_str(),
                io::format_double(bundle.summary.mean_purity).c_str());
    if (bundle.lyapunov)
        std::printf("lyapunov %s\n", io::format_double(*bundle.lyapunov).c_str());
    return 0;
}

int do_sweep(const std::string& config_path, const std::string& out_root, bool force) {
    const nlohmann::json raw = load_json(config_path);
    const SweepRunConfig cfg = parse_sweep_config(raw);
    const auto dir = run_sweep_bundle(cfg, raw, out_root, force);
    std::printf("sweep bundle: %s\n", dir.string().c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kerrchaos — driven Kerr oscillator: quantum purity vs semiclassical chaos"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path, out_root = "results", bundle_dir, format = "csv", emit_name;
    bool force = false;

    auto* cmd_run = app.add_subcommand("run", "run one experiment from a JSON config");
    cmd_run->add_option("config", config_path, "config file")->required();
    cmd_run->add_option("--out", out_root, "output root directory");
    cmd_run->add_flag("--force", force, "rerun even if the bundle exists");

    auto* cmd_fixtures = app.add_subcommand("fixtures", "list the figure parameter sets");
    cmd_fixtures->add_option("--emit-config", emit_name,
                             "print a complete run config for the named fixture");

    auto* cmd_sweep = app.add_subcommand("sweep", "run a parameter sweep from a JSON config");
    cmd_sweep->add_option("config", config_path, "config file")->required();
    cmd_sweep->add_option("--out", out_root, "output root directory");
    cmd_sweep->add_flag("--force", force, "rerun even if the bundle exists");

    auto* cmd_export = app.add_subcommand("export", "re-emit bundle artifacts in a given format");
    cmd_export->add_option("bundle", bundle_dir, "bundle directory")->required();
    cmd_export->add_option("--format", format, "csv | grid | png");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_run->parsed()) return do_run(config_path, out_root, force);
        if (cmd_sweep->parsed()) return do_sweep(config_path, out_root, force);
        if (cmd_export->parsed()) {
            export_bundle(bundle_dir, format);
            return 0;
        }
        if (cmd_fixtures->parsed()) {
            if (!emit_name.empty())
                std::cout << fixture_config(emit_name).dump(2) << '\n';
            else
                std::cout << format_fixture_table();
            return 0;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
