#include "hom/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "hom/covariance.hpp"
#include "hom/error.hpp"
#include "hom/spectra.hpp"
#include "hom/steadystate.hpp"

namespace hom {

using nlohmann::json;

namespace {

std::string header(std::string_view command, const RunConfig& config) {
    std::ostringstream out;
    out << "# " << kToolName << ' ' << kToolVersion << '\n';
    out << "# command: " << command << '\n';
    out << "# config: " << to_json(config).dump() << '\n';
    return out.str();
}

json provenance(std::string_view command, const RunConfig& config) {
    return {{"tool", std::string(kToolName)},
            {"version", std::string(kToolVersion)},
            {"command", std::string(command)},
            {"config", to_json(config)}};
}

std::string optional_number(const std::optional<double>& x) {
    return x ? format_number(*x) : std::string{};
}

std::string plot_number(const std::optional<double>& x) {
    return x ? format_number(*x) : std::string("nan");
}

// Per-cell numerical failures are encoded in the status column.
std::string_view status_text(const SweepCell& c) {
    return c.failed ? "failed" : to_string(c.status);
}

json optional_json(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

bool any_failed(const SweepResult& r) {
    return std::any_of(r.cells.begin(), r.cells.end(), [](const SweepCell& c) { return c.failed; });
}

std::string summary_line(std::string_view label, const SweepResult& r) {
    std::ostringstream out;
    out << "# summary: " << label << " min_n_f=" << optional_number(r.summary.min_n_f);
    if (r.summary.min_n_f) {
        for (std::size_t k = 0; k < r.axes.size(); ++k) {
            out << ' ' << r.axes[k].name << '=' << format_number(r.summary.coords[k]);
        }
    }
    out << '\n';
    return out.str();
}

json summary_json(const SweepResult& r) {
    json coords = json::object();
    if (r.summary.min_n_f) {
        for (std::size_t k = 0; k < r.axes.size(); ++k) coords[r.axes[k].name] = r.summary.coords[k];
    }
    return {{"min_n_f", optional_json(r.summary.min_n_f)}, {"coords", coords}};
}

Axis grid_or(const RunConfig& config, std::string_view name, const GridSpec& fallback) {
    const GridSpec* g = config.grid(name);
    return (g ? *g : fallback).axis();
}

// Two-branch line grid skipping the guard band around delta_c = omega_m.
Axis line_grid(const RunConfig& config) {
    const GridSpec* g = config.grid("delta_c");
    const GridSpec spec = g ? *g : GridSpec{"delta_c", -120.0, 120.0, 400, false};
    const double lo = 1.0 - kLineScanGuard;
    const double hi = 1.0 + kLineScanGuard;
    if (spec.log || !(spec.min < lo && spec.max > hi)) return spec.axis();
    Axis axis = linear_axis("delta_c", spec.min, lo, spec.points);
    const Axis upper = linear_axis("delta_c", hi, spec.max, spec.points);
    axis.values.insert(axis.values.end(), upper.values.begin(), upper.values.end());
    return axis;
}

}  // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, end);
}

LinearParams resolve_linear(const RunConfig& config) {
    if (config.mode == InputMode::Linear) return validate(config.linear);

    const auto branches = solve_steady_state(config.physical);
    if (config.branch) {
        if (*config.branch >= static_cast<int>(branches.size())) {
            throw Error(ErrorKind::BadRange, "branch index " + std::to_string(*config.branch)
                                                 + " out of range (" + std::to_string(branches.size())
                                                 + " branches)");
        }
        return linearize(config.physical, branches[*config.branch]);
    }
    if (branches.size() == 1) return linearize(config.physical, branches.front());
    std::vector<std::size_t> stable;
    for (std::size_t i = 0; i < branches.size(); ++i) {
        if (count_stable_branches(config.physical, {branches[i]}) == 1) stable.push_back(i);
    }
    if (stable.size() == 1) return linearize(config.physical, branches[stable.front()]);
    throw Error(ErrorKind::BadRange, std::to_string(branches.size()) + " steady-state branches ("
                                         + std::to_string(stable.size())
                                         + " stable); choose one with --branch");
}

CommandOutput cmd_spectrum(const RunConfig& config) {
    const LinearParams lin = resolve_linear(config);
    const Axis omega = linear_axis("omega", config.spectrum.omega_min, config.spectrum.omega_max,
                                   config.spectrum.points);
    std::vector<SpectrumSample> samples;
    samples.reserve(omega.values.size());
    for (const double w : omega.values) samples.push_back(force_spectrum(lin, w));
    const double rate = cooling_rate(lin);

    CommandOutput out;
    if (config.format == OutputFormat::Json) {
        json rows = json::array();
        for (const auto& s : samples) {
            rows.push_back({{"omega", s.omega}, {"s_kappa", s.s_kappa}, {"s_gamma", s.s_gamma},
                            {"s_f", s.s_f}});
        }
        json doc = {{"provenance", provenance("spectrum", config)},
                    {"markers", {{"anti_stokes", lin.omega_m}, {"stokes", -lin.omega_m}}},
                    {"gamma_cool", rate},
                    {"samples", rows}};
        out.text = doc.dump(2) + "\n";
        return out;
    }
    std::ostringstream s;
    s << header("spectrum", config);
    s << "# marker: omega=" << format_number(lin.omega_m) << " anti-stokes (cooling)\n";
    s << "# marker: omega=" << format_number(-lin.omega_m) << " stokes (heating)\n";
    s << "# gamma_cool: " << format_number(rate) << '\n';
    const char sep = config.format == OutputFormat::Csv ? ',' : ' ';
    if (config.format == OutputFormat::Csv) {
        s << "omega,s_kappa,s_gamma,s_f\n";
    } else {
        s << "# block: spectrum\n# omega s_kappa s_gamma s_f\n";
    }
    for (const auto& x : samples) {
        s << format_number(x.omega) << sep << format_number(x.s_kappa) << sep
          << format_number(x.s_gamma) << sep << format_number(x.s_f) << '\n';
    }
    if (config.format == OutputFormat::PlotData) {
        s << "\n\n# block: markers\n";
        s << format_number(-lin.omega_m) << " 0\n" << format_number(-lin.omega_m) << " 1\n\n";
        s << format_number(lin.omega_m) << " 0\n" << format_number(lin.omega_m) << " 1\n";
    }
    out.text = s.str();
    return out;
}

CommandOutput cmd_occupation(const RunConfig& config) {
    const LinearParams lin = resolve_linear(config);
    const DriftMatrix a = drift_matrix(lin);
    const StabilityReport report = dynamical_stability(a);
    json doc;
    doc["provenance"] = provenance("occupation", config);
    doc["stable"] = report.stable;
    doc["eigen_real_parts"] = report.eigen_real_parts;
    doc["gamma_cool"] = cooling_rate(lin);
    doc["cooperativity"] = cooperativity(lin);
    doc["n_f"] = nullptr;
    CommandOutput out;
    if (report.stable) {
        const CovarianceState state = solve_lyapunov(a, diffusion_matrix(lin));
        doc["n_f"] = final_occupation(state);
        doc["lyapunov_residual"] = state.residual;
        doc["symplectic_eigenvalues"] = physicality(state.v);
    }
    out.text = doc.dump(2) + "\n";
    return out;
}

CommandOutput cmd_map2d(const RunConfig& config, unsigned workers) {
    const LinearParams base = resolve_linear(config);
    const Axis dc = grid_or(config, "delta_c", {"delta_c", -40.0, 40.0, 201, false});
    const Axis da = grid_or(config, "delta_a", {"delta_a", -6.0, 6.0, 201, false});
    const SweepResult map = detuning_map(base, dc, da, workers);
    const auto branches = polariton_branches(base, da);
    const auto contour = occupation_contour(map, 1.0);

    CommandOutput out;
    out.exit_code = any_failed(map) ? kExitCellFailures : kExitOk;
    if (config.format == OutputFormat::Json) {
        json cells = json::array();
        for (const auto& c : map.cells) {
            cells.push_back({{"delta_c", c.coords[0]}, {"delta_a", c.coords[1]},
                             {"n_f", optional_json(c.n_f)},
                             {"status", std::string(status_text(c))}, {"failed", c.failed}});
        }
        json curves = json::object();
        for (const auto& b : branches) curves[b.name] = b.points;
        json doc = {{"provenance", provenance("map2d", config)},
                    {"summary", summary_json(map)},
                    {"cells", cells},
                    {"overlays", {{"polariton_branches", curves}, {"n_f_below_1_contour", contour}}}};
        out.text = doc.dump(2) + "\n";
        return out;
    }

    std::ostringstream s;
    s << header("map2d", config);
    s << summary_line("detuning_map", map);
    s << "# cells_below_1: " << count_below(map, 1.0) << '\n';
    if (config.format == OutputFormat::Csv) {
        s << "delta_c,delta_a,n_f,status\n";
        for (const auto& c : map.cells) {
            s << format_number(c.coords[0]) << ',' << format_number(c.coords[1]) << ','
              << optional_number(c.n_f) << ',' << status_text(c)
              << '\n';
        }
        out.text = s.str();
        return out;
    }
    s << "# block: n_f\n# delta_c delta_a n_f\n";
    const std::size_t ny = da.values.size();
    for (std::size_t i = 0; i < map.cells.size(); ++i) {
        const auto& c = map.cells[i];
        s << format_number(c.coords[0]) << ' ' << format_number(c.coords[1]) << ' '
          << plot_number(c.n_f) << '\n';
        if ((i + 1) % ny == 0) s << '\n';
    }
    for (const auto& b : branches) {
        s << "\n# block: " << b.name << "_polariton_branch\n";
        for (const auto& p : b.points) s << format_number(p[0]) << ' ' << format_number(p[1]) << '\n';
        s << '\n';
    }
    s << "\n# block: n_f_below_1_contour\n";
    for (const auto& seg : contour) {
        s << format_number(seg[0][0]) << ' ' << format_number(seg[0][1]) << '\n'
          << format_number(seg[1][0]) << ' ' << format_number(seg[1][1]) << "\n\n";
    }
    out.text = s.str();
    return out;
}

CommandOutput cmd_compare(const RunConfig& config, unsigned workers) {
    const LinearParams base = resolve_linear(config);
    const Axis grid = line_grid(config);
    std::vector<std::pair<Strategy, SweepResult>> curves;
    for (const Strategy st : config.strategies) {
        curves.emplace_back(st, polariton_line_scan(st, base, grid, workers));
    }

    CommandOutput out;
    for (const auto& [_, r] : curves) {
        if (any_failed(r)) out.exit_code = kExitCellFailures;
    }
    if (config.format == OutputFormat::Json) {
        json doc = {{"provenance", provenance("compare", config)}};
        json list = json::array();
        for (const auto& [st, r] : curves) {
            json cells = json::array();
            for (const auto& c : r.cells) {
                cells.push_back({{"delta_c", c.point.delta_c}, {"delta_a", c.point.delta_a},
                                 {"n_f", optional_json(c.n_f)},
                                 {"status", std::string(status_text(c))},
                                 {"failed", c.failed}});
            }
            list.push_back({{"strategy", std::string(to_string(st))},
                            {"summary", summary_json(r)}, {"cells", cells}});
        }
        doc["curves"] = list;
        out.text = doc.dump(2) + "\n";
        return out;
    }

    std::ostringstream s;
    s << header("compare", config);
    s << "# relation: delta_a = omega_m + lambda^2/(delta_c - omega_m) (radiation_pressure keeps delta_a)\n";
    for (const auto& [st, r] : curves) s << summary_line(to_string(st), r);
    if (config.format == OutputFormat::Csv) {
        s << "strategy,delta_c,delta_a,n_f,status\n";
        for (const auto& [st, r] : curves) {
            for (const auto& c : r.cells) {
                s << to_string(st) << ',' << format_number(c.point.delta_c) << ','
                  << format_number(c.point.delta_a) << ',' << optional_number(c.n_f) << ','
                  << status_text(c) << '\n';
            }
        }
    } else {
        bool first = true;
        for (const auto& [st, r] : curves) {
            s << (first ? "" : "\n\n") << "# block: " << to_string(st) << "\n# delta_c n_f\n";
            first = false;
            for (const auto& c : r.cells) {
                s << format_number(c.point.delta_c) << ' ' << plot_number(c.n_f) << '\n';
            }
        }
    }
    out.text = s.str();
    return out;
}

CommandOutput cmd_resonant_map(const RunConfig& config, unsigned workers) {
    const LinearParams base = resolve_linear(config);
    double ratio = 0.0;
    if (config.mu_over_lambda) {
        ratio = *config.mu_over_lambda;
    } else if (base.lambda != 0.0) {
        ratio = base.mu / base.lambda;
    } else {
        throw Error(ErrorKind::MissingField, "resonant-map needs mu_over_lambda");
    }
    const Axis lambda = grid_or(config, "lambda", {"lambda", 0.1, 20.0, 150, false});
    const Axis g = grid_or(config, "g", {"g", 0.01, 2.0, 150, true});
    const SweepResult map = resonant_map(base, ratio, lambda, g, workers);
    const SweepResult reference = sideband_reference(base, g, workers);
    const auto contour = occupation_contour(map, 1.0);

    CommandOutput out;
    out.exit_code = any_failed(map) || any_failed(reference) ? kExitCellFailures : kExitOk;
    if (config.format == OutputFormat::Json) {
        json cells = json::array();
        for (const auto& c : map.cells) {
            cells.push_back({{"lambda", c.coords[0]}, {"g", c.coords[1]}, {"mu", c.point.mu},
                             {"n_f", optional_json(c.n_f)},
                             {"status", std::string(status_text(c))}, {"failed", c.failed}});
        }
        json doc = {{"provenance", provenance("resonant-map", config)},
                    {"summary", summary_json(map)},
                    {"radiation_pressure_reference", summary_json(reference)},
                    {"cells_below_1", count_below(map, 1.0)},
                    {"cells", cells},
                    {"n_f_below_1_contour", contour}};
        out.text = doc.dump(2) + "\n";
        return out;
    }

    std::ostringstream s;
    s << header("resonant-map", config);
    s << summary_line("resonant_interference", map);
    s << summary_line("radiation_pressure_red_sideband", reference);
    s << "# cells_below_1: " << count_below(map, 1.0) << '\n';
    if (config.format == OutputFormat::Csv) {
        s << "lambda,g,mu,n_f,status\n";
        for (const auto& c : map.cells) {
            s << format_number(c.coords[0]) << ',' << format_number(c.coords[1]) << ','
              << format_number(c.point.mu) << ',' << optional_number(c.n_f) << ','
              << status_text(c) << '\n';
        }
    } else {
        s << "# block: n_f\n# lambda g n_f\n";
        const std::size_t ng = g.values.size();
        for (std::size_t i = 0; i < map.cells.size(); ++i) {
            const auto& c = map.cells[i];
            s << format_number(c.coords[0]) << ' ' << format_number(c.coords[1]) << ' '
              << plot_number(c.n_f) << '\n';
            if ((i + 1) % ng == 0) s << '\n';
        }
        s << "\n# block: n_f_below_1_contour\n";
        for (const auto& seg : contour) {
            s << format_number(seg[0][0]) << ' ' << format_number(seg[0][1]) << '\n'
              << format_number(seg[1][0]) << ' ' << format_number(seg[1][1]) << "\n\n";
        }
    }
    out.text = s.str();
    return out;
}

CommandOutput cmd_steady_state(const RunConfig& config) {
    if (config.mode != InputMode::Physical) {
        throw Error(ErrorKind::BadRange, "steady-state needs mode = physical (bare couplings and drive)");
    }
    const auto branches = solve_steady_state(config.physical);
    std::vector<bool> stable;
    for (const auto& b : branches) stable.push_back(count_stable_branches(config.physical, {b}) == 1);
    const auto n_stable = std::count(stable.begin(), stable.end(), true);

    CommandOutput out;
    if (config.format == OutputFormat::Json) {
        json list = json::array();
        for (std::size_t i = 0; i < branches.size(); ++i) {
            const auto& b = branches[i];
            list.push_back({{"index", i}, {"abs_cbar", std::abs(b.cbar)},
                            {"cbar", {b.cbar.real(), b.cbar.imag()}},
                            {"abar", {b.abar.real(), b.abar.imag()}}, {"qbar", b.qbar},
                            {"residual", b.residual}, {"stable", static_cast<bool>(stable[i])}});
        }
        json doc = {{"provenance", provenance("steady-state", config)},
                    {"branches", list},
                    {"stable_branches", n_stable},
                    {"bistable", n_stable > 1}};
        out.text = doc.dump(2) + "\n";
        return out;
    }
    std::ostringstream s;
    s << header("steady-state", config);
    s << "# branches: " << branches.size() << " stable: " << n_stable
      << " bistable: " << (n_stable > 1 ? "true" : "false") << '\n';
    const char sep = config.format == OutputFormat::Csv ? ',' : ' ';
    if (config.format == OutputFormat::Csv) {
        s << "index,abs_cbar,cbar_re,cbar_im,abar_re,abar_im,qbar,residual,stable\n";
    } else {
        s << "# block: branches\n# index abs_cbar cbar_re cbar_im abar_re abar_im qbar residual stable\n";
    }
    for (std::size_t i = 0; i < branches.size(); ++i) {
        const auto& b = branches[i];
        s << i << sep << format_number(std::abs(b.cbar)) << sep << format_number(b.cbar.real())
          << sep << format_number(b.cbar.imag()) << sep << format_number(b.abar.real()) << sep
          << format_number(b.abar.imag()) << sep << format_number(b.qbar) << sep
          << format_number(b.residual) << sep << (stable[i] ? 1 : 0) << '\n';
    }
    out.text = s.str();
    return out;
}

std::vector<std::string> command_names() {
    return {"spectrum", "occupation", "map2d", "compare", "resonant-map", "steady-state"};
}

CommandOutput run_command(std::string_view name, const RunConfig& config, unsigned workers) {
    if (name == "spectrum") return cmd_spectrum(config);
    if (name == "occupation") return cmd_occupation(config);
    if (name == "map2d") return cmd_map2d(config, workers);
    if (name == "compare") return cmd_compare(config, workers);
    if (name == "resonant-map") return cmd_resonant_map(config, workers);
    if (name == "steady-state") return cmd_steady_state(config);
    throw Error(ErrorKind::UnknownKey, "unknown command '" + std::string(name) + "'");
}

}  // namespace hom
