// config.hpp: run configuration, named presets and JSON (de)serialization.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hom/experiments.hpp"
#include "hom/model.hpp"

namespace hom {

enum class InputMode { Linear, Physical };
enum class OutputFormat { Csv, Json, PlotData };

std::string_view to_string(InputMode m);
std::string_view to_string(OutputFormat f);
OutputFormat parse_format(std::string_view name);

struct GridSpec {
    std::string name;
    double min{0.0};
    double max{0.0};
    std::size_t points{0};
    bool log{false};

    Axis axis() const;
};

struct SpectrumRange {
    double omega_min{-2.0};
    double omega_max{2.0};
    std::size_t points{401};
};

struct RunConfig {
    InputMode mode{InputMode::Linear};
    LinearParams linear{};      // used when mode == Linear
    PhysicalParams physical{};  // used when mode == Physical
    std::optional<double> mu_over_lambda;
    std::vector<GridSpec> grids;
    std::vector<Strategy> strategies;
    SpectrumRange spectrum{};
    std::optional<int> branch;
    OutputFormat format{OutputFormat::Csv};
    std::string path{"-"};

    const GridSpec* grid(std::string_view name) const;
};

/// Names of the shipped presets.
std::vector<std::string> preset_names();

/// Throws UnknownKey for an unknown preset name.
RunConfig preset(std::string_view name);

/// Strict parse: unknown keys -> UnknownKey, absent required fields ->
/// MissingField, invalid values -> BadRange, malformed JSON -> ParseError.
RunConfig parse_config(const nlohmann::json& doc);

/// Full parameter record; parse_config(to_json(c)) reproduces c.
nlohmann::json to_json(const RunConfig& c);

/// Loads a preset name, a JSON config file, or the provenance header of a file
/// previously written by the tool.
RunConfig load_config(std::string_view path_or_preset);

struct Provenance {
    std::string command;
    RunConfig config;
};

/// Reads the command and configuration embedded in an output file.
Provenance load_provenance(const std::string& path);

/// Applies "key=value" parameter overrides (params keys or mu_over_lambda).
void apply_setting(RunConfig& c, std::string_view assignment);

/// Parses "<axis>=<min>:<max>:<points>[:log]" and replaces or adds that grid.
void apply_grid(RunConfig& c, std::string_view spec);

}  // namespace hom
