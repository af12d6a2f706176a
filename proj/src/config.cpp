#include "hom/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hom/error.hpp"

namespace hom {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys{"mode", "params", "mu_over_lambda", "grids", "strategies",
                                     "spectrum", "branch", "output"};
const std::set<std::string> kLinearKeys{"omega_m", "gamma_m", "q_m", "nbar", "kappa", "gamma",
                                        "delta_c", "delta_a", "g", "lambda", "mu"};
const std::set<std::string> kPhysicalKeys{"omega_m", "gamma_m", "q_m", "nbar", "kappa",
                                          "gamma", "delta_c", "delta_a", "g0", "lambda",
                                          "mu0", "eta", "phi"};
const std::set<std::string> kGridKeys{"name", "min", "max", "points", "spacing"};
const std::set<std::string> kGridNames{"delta_c", "delta_a", "g", "lambda"};
const std::set<std::string> kSpectrumKeys{"omega_min", "omega_max", "points"};
const std::set<std::string> kOutputKeys{"format"};

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) {
        throw Error(ErrorKind::ParseError, where + " must be a JSON object");
    }
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.contains(key)) {
            throw Error(ErrorKind::UnknownKey, "unknown key '" + key + "' in " + where);
        }
    }
}

double number(const json& obj, const std::string& key, const std::string& where) {
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw Error(ErrorKind::ParseError, where + "." + key + " must be a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw Error(ErrorKind::BadRange, where + "." + key + " must be finite");
    }
    return x;
}

double number_or(const json& obj, const std::string& key, double fallback, const std::string& where) {
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

double required(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key)) {
        throw Error(ErrorKind::MissingField, "missing field '" + key + "' in " + where);
    }
    return number(obj, key, where);
}

double mechanical_linewidth(const json& params, double omega_m) {
    if (params.contains("gamma_m") && params.contains("q_m")) {
        throw Error(ErrorKind::BadRange, "give either params.gamma_m or params.q_m, not both");
    }
    if (params.contains("q_m")) {
        const double q = number(params, "q_m", "params");
        if (!(q > 0.0)) throw Error(ErrorKind::BadRange, "params.q_m must be > 0");
        return omega_m / q;
    }
    return number_or(params, "gamma_m", 0.0, "params");
}

template <typename F>
void as_bad_range(F&& check) {
    try {
        check();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NonPositiveRate || e.kind() == ErrorKind::NonFiniteInput) {
            throw Error(ErrorKind::BadRange, e.what());
        }
        throw;
    }
}

GridSpec parse_grid(const json& g) {
    reject_unknown(g, kGridKeys, "grid");
    GridSpec spec;
    if (!g.contains("name") || !g.at("name").is_string()) {
        throw Error(ErrorKind::MissingField, "grid needs a string 'name'");
    }
    spec.name = g.at("name").get<std::string>();
    if (!kGridNames.contains(spec.name)) {
        throw Error(ErrorKind::BadRange, "grid axis '" + spec.name + "' is not a sweepable parameter");
    }
    spec.min = required(g, "min", "grid");
    spec.max = required(g, "max", "grid");
    const double points = required(g, "points", "grid");
    if (!(points >= 1.0) || points != std::floor(points)) {
        throw Error(ErrorKind::BadRange, "grid points must be a positive integer");
    }
    spec.points = static_cast<std::size_t>(points);
    if (g.contains("spacing")) {
        const auto spacing = g.at("spacing").get<std::string>();
        if (spacing != "linear" && spacing != "log") {
            throw Error(ErrorKind::BadRange, "grid spacing must be 'linear' or 'log'");
        }
        spec.log = spacing == "log";
    }
    if (spec.min > spec.max) {
        throw Error(ErrorKind::BadRange, "grid '" + spec.name + "' has min > max");
    }
    if (spec.log && !(spec.min > 0.0)) {
        throw Error(ErrorKind::BadRange, "log grid '" + spec.name + "' needs min > 0");
    }
    return spec;
}

RunConfig fig3_like(double kappa, double gamma, double g, double lambda, double mu) {
    RunConfig c;
    c.mode = InputMode::Linear;
    c.linear.omega_m = 1.0;
    c.linear.gamma_m = 1.0 / 1e6;
    c.linear.nbar = 1e3;
    c.linear.kappa = kappa;
    c.linear.gamma = gamma;
    c.linear.g = g;
    c.linear.lambda = lambda;
    c.linear.mu = mu;
    c.strategies.assign(kAllStrategies.begin(), kAllStrategies.end());
    return c;
}

}  // namespace

std::string_view to_string(InputMode m) { return m == InputMode::Linear ? "linear" : "physical"; }

std::string_view to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
        case OutputFormat::PlotData: return "plotdata";
    }
    return "csv";
}

OutputFormat parse_format(std::string_view name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    if (name == "plotdata") return OutputFormat::PlotData;
    throw Error(ErrorKind::BadRange, "unknown output format '" + std::string(name) + "'");
}

Axis GridSpec::axis() const {
    return log ? log_axis(name, min, max, points) : linear_axis(name, min, max, points);
}

const GridSpec* RunConfig::grid(std::string_view name) const {
    for (const auto& g : grids) {
        if (g.name == name) return &g;
    }
    return nullptr;
}

std::vector<std::string> preset_names() {
    return {"fig3", "fig4a", "fig4b", "fig4c", "fig4d", "fig5a", "fig5b"};
}

RunConfig preset(std::string_view name) {
    RunConfig c;
    if (name == "fig3" || name == "fig4a") {
        c = fig3_like(20.0, 0.8, 0.25, 8.0, 0.01);
        // lower sideband of the upper polariton, close to the branch optimum
        c.linear.delta_a = -0.6;
        c.linear.delta_c = -39.0;
    } else if (name == "fig4b") {
        c = fig3_like(80.0, 2.0, 0.06, 15.0, 0.006);
    } else if (name == "fig4c") {
        c = fig3_like(80.0, 0.1, 0.3, 8.0, 0.005);
    } else if (name == "fig4d") {
        c = fig3_like(0.8, 10.0, 0.1, 12.0, 0.025);
    } else if (name == "fig5a" || name == "fig5b") {
        const bool bad_cavity = name == "fig5a";
        c = fig3_like(bad_cavity ? 2.7 : 0.7, bad_cavity ? 0.8 : 0.5, 0.1, 1.0, 0.05);
        c.mu_over_lambda = 0.05;
        c.strategies = {Strategy::Interference};
        c.grids = {{"lambda", 0.1, 20.0, 150, false}, {"g", 0.01, 2.0, 150, true}};
        return c;
    } else {
        throw Error(ErrorKind::UnknownKey, "unknown preset '" + std::string(name) + "'");
    }
    if (name == "fig3") {
        c.grids = {{"delta_c", -40.0, 40.0, 201, false}, {"delta_a", -6.0, 6.0, 201, false}};
    } else {
        // per-branch line-scan grid, see cmd_compare
        c.grids = {{"delta_c", -120.0, 120.0, 400, false}};
    }
    return c;
}

RunConfig parse_config(const json& doc) {
    reject_unknown(doc, kTopKeys, "config");
    RunConfig c;
    const std::string mode = doc.value("mode", std::string("linear"));
    if (mode == "linear") {
        c.mode = InputMode::Linear;
    } else if (mode == "physical") {
        c.mode = InputMode::Physical;
    } else {
        throw Error(ErrorKind::BadRange, "mode must be 'linear' or 'physical'");
    }

    if (!doc.contains("params")) throw Error(ErrorKind::MissingField, "missing field 'params'");
    const json& params = doc.at("params");
    const std::string where = "params";
    if (c.mode == InputMode::Linear) {
        reject_unknown(params, kLinearKeys, where);
        auto& p = c.linear;
        p.omega_m = number_or(params, "omega_m", 1.0, where);
        p.gamma_m = mechanical_linewidth(params, p.omega_m);
        p.nbar = number_or(params, "nbar", 0.0, where);
        p.kappa = required(params, "kappa", where);
        p.gamma = required(params, "gamma", where);
        p.delta_c = number_or(params, "delta_c", 0.0, where);
        p.delta_a = number_or(params, "delta_a", 0.0, where);
        p.g = number_or(params, "g", 0.0, where);
        p.lambda = number_or(params, "lambda", 0.0, where);
        p.mu = number_or(params, "mu", 0.0, where);
        if (doc.contains("mu_over_lambda") && !params.contains("mu")) {
            p.mu = number(doc, "mu_over_lambda", "config") * p.lambda;
        }
        p = with_effective_coupling(p);
        as_bad_range([&] { validate(p); });
    } else {
        reject_unknown(params, kPhysicalKeys, where);
        auto& p = c.physical;
        p.omega_m = number_or(params, "omega_m", 1.0, where);
        p.gamma_m = mechanical_linewidth(params, p.omega_m);
        p.nbar = number_or(params, "nbar", 0.0, where);
        p.kappa = required(params, "kappa", where);
        p.gamma = required(params, "gamma", where);
        p.delta_c = number_or(params, "delta_c", 0.0, where);
        p.delta_a = number_or(params, "delta_a", 0.0, where);
        p.g0 = number_or(params, "g0", 0.0, where);
        p.lambda = number_or(params, "lambda", 0.0, where);
        p.mu0 = number_or(params, "mu0", 0.0, where);
        p.eta = required(params, "eta", where);
        p.phi = number_or(params, "phi", 0.0, where);
        as_bad_range([&] { validate(p); });
    }

    if (doc.contains("mu_over_lambda")) {
        c.mu_over_lambda = number(doc, "mu_over_lambda", "config");
    }
    if (doc.contains("grids")) {
        if (!doc.at("grids").is_array()) throw Error(ErrorKind::ParseError, "grids must be an array");
        for (const auto& g : doc.at("grids")) c.grids.push_back(parse_grid(g));
    }
    if (doc.contains("strategies")) {
        if (!doc.at("strategies").is_array()) {
            throw Error(ErrorKind::ParseError, "strategies must be an array");
        }
        for (const auto& s : doc.at("strategies")) {
            const auto parsed = parse_strategy(s.get<std::string>());
            if (!parsed) throw Error(ErrorKind::BadRange, "unknown strategy " + s.dump());
            c.strategies.push_back(*parsed);
        }
    } else {
        c.strategies.assign(kAllStrategies.begin(), kAllStrategies.end());
    }
    if (doc.contains("spectrum")) {
        const json& s = doc.at("spectrum");
        reject_unknown(s, kSpectrumKeys, "spectrum");
        c.spectrum.omega_min = number_or(s, "omega_min", c.spectrum.omega_min, "spectrum");
        c.spectrum.omega_max = number_or(s, "omega_max", c.spectrum.omega_max, "spectrum");
        const double points = number_or(s, "points", static_cast<double>(c.spectrum.points), "spectrum");
        if (!(points >= 2.0) || points != std::floor(points)) {
            throw Error(ErrorKind::BadRange, "spectrum.points must be an integer >= 2");
        }
        c.spectrum.points = static_cast<std::size_t>(points);
        if (!(c.spectrum.omega_min < c.spectrum.omega_max)) {
            throw Error(ErrorKind::BadRange, "spectrum.omega_min must be < omega_max");
        }
    }
    if (doc.contains("branch")) {
        const double b = number(doc, "branch", "config");
        if (b < 0.0 || b != std::floor(b)) throw Error(ErrorKind::BadRange, "branch must be >= 0");
        c.branch = static_cast<int>(b);
    }
    if (doc.contains("output")) {
        const json& o = doc.at("output");
        reject_unknown(o, kOutputKeys, "output");
        if (o.contains("format")) c.format = parse_format(o.at("format").get<std::string>());
    }
    return c;
}

json to_json(const RunConfig& c) {
    json doc;
    doc["mode"] = std::string(to_string(c.mode));
    json params;
    if (c.mode == InputMode::Linear) {
        const auto& p = c.linear;
        params = {{"omega_m", p.omega_m}, {"gamma_m", p.gamma_m}, {"nbar", p.nbar},
                  {"kappa", p.kappa},     {"gamma", p.gamma},     {"delta_c", p.delta_c},
                  {"delta_a", p.delta_a}, {"g", p.g},             {"lambda", p.lambda},
                  {"mu", p.mu}};
    } else {
        const auto& p = c.physical;
        params = {{"omega_m", p.omega_m}, {"gamma_m", p.gamma_m}, {"nbar", p.nbar},
                  {"kappa", p.kappa},     {"gamma", p.gamma},     {"delta_c", p.delta_c},
                  {"delta_a", p.delta_a}, {"g0", p.g0},           {"lambda", p.lambda},
                  {"mu0", p.mu0},         {"eta", p.eta},         {"phi", p.phi}};
    }
    doc["params"] = params;
    if (c.mu_over_lambda) doc["mu_over_lambda"] = *c.mu_over_lambda;
    json grids = json::array();
    for (const auto& g : c.grids) {
        grids.push_back({{"name", g.name}, {"min", g.min}, {"max", g.max}, {"points", g.points},
                         {"spacing", g.log ? "log" : "linear"}});
    }
    doc["grids"] = grids;
    json strategies = json::array();
    for (const auto s : c.strategies) strategies.push_back(std::string(to_string(s)));
    doc["strategies"] = strategies;
    doc["spectrum"] = {{"omega_min", c.spectrum.omega_min},
                       {"omega_max", c.spectrum.omega_max},
                       {"points", c.spectrum.points}};
    if (c.branch) doc["branch"] = *c.branch;
    doc["output"] = {{"format", std::string(to_string(c.format))}};
    return doc;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ParseError, origin + ": " + e.what());
    }
}

// Output files carry "# command: <name>" and "# config: <json>" comment lines,
// or a top-level "provenance" object for JSON output.
std::optional<Provenance> embedded_provenance(const std::string& text, const std::string& origin) {
    if (text.starts_with("#")) {
        std::istringstream lines(text);
        std::string line;
        std::optional<std::string> command;
        std::optional<json> config;
        while (std::getline(lines, line) && line.starts_with("#")) {
            if (line.starts_with("# command: ")) command = line.substr(11);
            if (line.starts_with("# config: ")) config = parse_json(line.substr(10), origin);
        }
        if (!config) throw Error(ErrorKind::MissingField, origin + ": no '# config:' header line");
        return Provenance{command.value_or(""), parse_config(*config)};
    }
    const json doc = parse_json(text, origin);
    if (doc.is_object() && doc.contains("provenance")) {
        const json& p = doc.at("provenance");
        return Provenance{p.value("command", std::string{}), parse_config(p.at("config"))};
    }
    return std::nullopt;
}

}  // namespace

RunConfig load_config(std::string_view path_or_preset) {
    for (const auto& name : preset_names()) {
        if (name == path_or_preset) return preset(name);
    }
    const std::string path(path_or_preset);
    const std::string text = read_file(path);
    if (auto p = embedded_provenance(text, path)) return p->config;
    return parse_config(parse_json(text, path));
}

Provenance load_provenance(const std::string& path) {
    const std::string text = read_file(path);
    auto p = embedded_provenance(text, path);
    if (!p || p->command.empty()) {
        throw Error(ErrorKind::MissingField, path + ": no provenance header");
    }
    return *p;
}

void apply_setting(RunConfig& c, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw Error(ErrorKind::ParseError, "expected key=value, got '" + std::string(assignment) + "'");
    }
    const std::string key(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw Error(ErrorKind::ParseError, "not a number: '" + text + "'");
    }
    json doc = to_json(c);
    if (key == "mu_over_lambda") {
        doc["mu_over_lambda"] = value;
        if (c.mode == InputMode::Linear) doc["params"]["mu"] = value * c.linear.lambda;
    } else {
        if (key == "q_m") doc["params"].erase("gamma_m");
        doc["params"][key] = value;
    }
    c = parse_config(doc);
}

void apply_grid(RunConfig& c, std::string_view spec) {
    const auto eq = spec.find('=');
    if (eq == std::string_view::npos) {
        throw Error(ErrorKind::ParseError, "expected <axis>=<min>:<max>:<points>[:log]");
    }
    std::vector<std::string> parts;
    std::string rest(spec.substr(eq + 1));
    std::istringstream ss(rest);
    for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
    if (parts.size() < 3 || parts.size() > 4 || (parts.size() == 4 && parts[3] != "log")) {
        throw Error(ErrorKind::ParseError, "expected <axis>=<min>:<max>:<points>[:log]");
    }
    json g;
    try {
        g = {{"name", std::string(spec.substr(0, eq))}, {"min", std::stod(parts[0])},
             {"max", std::stod(parts[1])}, {"points", std::stod(parts[2])},
             {"spacing", parts.size() == 4 ? "log" : "linear"}};
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::ParseError, "bad number in grid spec '" + std::string(spec) + "'");
    }
    const GridSpec parsed = parse_grid(g);
    for (auto& existing : c.grids) {
        if (existing.name == parsed.name) {
            existing = parsed;
            return;
        }
    }
    c.grids.push_back(parsed);
}

}  // namespace hom
