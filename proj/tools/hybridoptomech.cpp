// Command-line front end: hybridoptomech <command> [--preset NAME | --config FILE] ...

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hom/commands.hpp"
#include "hom/config.hpp"
#include "hom/error.hpp"

namespace {

struct Options {
    std::string preset;
    std::string config;
    std::string out{"-"};
    std::string format;
    unsigned workers{1};
    std::optional<double> omega_min;
    std::optional<double> omega_max;
    std::optional<std::size_t> omega_points;
    std::vector<std::string> grids;
    std::vector<std::string> strategies;
    std::vector<std::string> settings;
    std::optional<int> branch;
    std::string rerun_file;
};

unsigned default_workers() {
    if (const char* env = std::getenv("HYBRIDOPTOMECH_WORKERS")) {
        try {
            const int n = std::stoi(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring invalid HYBRIDOPTOMECH_WORKERS='" << env << "'\n";
    }
    return 1;
}

hom::RunConfig build_config(const Options& o) {
    if (!o.preset.empty() && !o.config.empty()) {
        throw hom::Error(hom::ErrorKind::BadRange, "use either --preset or --config");
    }
    if (o.preset.empty() && o.config.empty()) {
        throw hom::Error(hom::ErrorKind::MissingField, "one of --preset or --config is required");
    }
    hom::RunConfig c = hom::load_config(o.preset.empty() ? o.config : o.preset);
    for (const auto& s : o.settings) hom::apply_setting(c, s);
    for (const auto& g : o.grids) hom::apply_grid(c, g);
    if (!o.strategies.empty()) {
        c.strategies.clear();
        for (const auto& name : o.strategies) {
            if (name == "all") {
                c.strategies.assign(hom::kAllStrategies.begin(), hom::kAllStrategies.end());
                break;
            }
            const auto s = hom::parse_strategy(name);
            if (!s) throw hom::Error(hom::ErrorKind::BadRange, "unknown strategy '" + name + "'");
            c.strategies.push_back(*s);
        }
    }
    if (o.omega_min) c.spectrum.omega_min = *o.omega_min;
    if (o.omega_max) c.spectrum.omega_max = *o.omega_max;
    if (o.omega_points) c.spectrum.points = *o.omega_points;
    if (c.spectrum.points < 2 || !(c.spectrum.omega_min < c.spectrum.omega_max)) {
        throw hom::Error(hom::ErrorKind::BadRange, "need omega-min < omega-max and omega-points >= 2");
    }
    if (o.branch) c.branch = *o.branch;
    if (!o.format.empty()) c.format = hom::parse_format(o.format);
    return c;
}

int emit(const hom::CommandOutput& result, const std::string& path) {
    if (path == "-") {
        std::cout << result.text;
    } else {
        std::ofstream file(path, std::ios::binary);
        if (!file) {
            std::cerr << "error: cannot write '" << path << "'\n";
            return hom::kExitFatal;
        }
        file << result.text;
    }
    if (result.exit_code == hom::kExitCellFailures) {
        std::cerr << "warning: some cells failed numerically (status 'failed')\n";
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Linearized hybrid optomechanics: spectra, cooling and covariance steady states"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(hom::kToolVersion));

    Options o;
    o.workers = default_workers();

    const auto add_common = [&o](CLI::App* sub) {
        sub->add_option("--preset", o.preset, "Named parameter set (fig3, fig4a-d, fig5a-b)");
        sub->add_option("--config", o.config, "JSON config file or a previous output file");
        sub->add_option("--out", o.out, "Output path, '-' for stdout");
        sub->add_option("--format", o.format, "csv | json | plotdata");
        sub->add_option("--set", o.settings, "Parameter override key=value (repeatable)");
    };
    const auto add_sweep = [&o](CLI::App* sub) {
        sub->add_option("--workers", o.workers, "Worker threads (default $HYBRIDOPTOMECH_WORKERS or 1)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--grid", o.grids, "<axis>=<min>:<max>:<points>[:log] (repeatable)");
    };

    auto* spectrum = app.add_subcommand("spectrum", "Force noise spectra S_kappa, S_gamma, S_F");
    add_common(spectrum);
    spectrum->add_option("--omega-min", o.omega_min);
    spectrum->add_option("--omega-max", o.omega_max);
    spectrum->add_option("--omega-points", o.omega_points);

    auto* occupation = app.add_subcommand("occupation", "Steady-state phonon number at one point");
    add_common(occupation);
    occupation->add_option("--branch", o.branch, "Steady-state branch index (physical mode)");

    auto* map2d = app.add_subcommand("map2d", "n_f over cavity and dopant detunings");
    add_common(map2d);
    add_sweep(map2d);

    auto* compare = app.add_subcommand("compare", "Cooling strategies along the polariton sideband");
    add_common(compare);
    add_sweep(compare);
    compare->add_option("--strategy", o.strategies, "Strategy name or 'all' (repeatable)");

    auto* resonant = app.add_subcommand("resonant-map", "n_f over (lambda, g) at resonant drive");
    add_common(resonant);
    add_sweep(resonant);

    auto* steady = app.add_subcommand("steady-state", "Classical steady-state branches");
    add_common(steady);
    steady->add_option("--branch", o.branch, "Branch index to report as the linearization point");

    auto* rerun = app.add_subcommand("rerun", "Re-run the command recorded in an output file header");
    rerun->add_option("file", o.rerun_file, "Output file written by this tool")->required();
    rerun->add_option("--out", o.out, "Output path, '-' for stdout");
    rerun->add_option("--workers", o.workers)->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try {
        if (rerun->parsed()) {
            const hom::Provenance p = hom::load_provenance(o.rerun_file);
            return emit(hom::run_command(p.command, p.config, o.workers), o.out);
        }
        CLI::App* chosen = app.get_subcommands().front();
        const hom::RunConfig config = build_config(o);
        return emit(hom::run_command(chosen->get_name(), config, o.workers), o.out);
    } catch (const hom::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return hom::kExitFatal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return hom::kExitFatal;
    }
}
