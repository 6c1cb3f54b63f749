#include "cli/config.hpp"

#include <charconv>
#include <fstream>
#include <utility>

namespace qwalk::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

int parse_int(const std::string& key, const std::string& value) {
    int out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError(key, "expected an integer, got '" + value + "'");
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last)
        throw ConfigError(key, "expected a number, got '" + value + "'");
    return out;
}

}  // namespace

void apply_override(ParsedConfig& c, const std::string& key, const std::string& value) {
    if (key == "model") c.model = value;
    else if (key == "steps") c.steps = parse_int(key, value);
    else if (key == "time") c.time = parse_double(key, value);
    else if (key == "half_width") c.half_width = parse_int(key, value);
    else if (key == "boundary") c.boundary = value;
    else if (key == "xi") c.xi = parse_double(key, value);
    else if (key == "theta") c.theta = parse_double(key, value);
    else if (key == "zeta") c.zeta = parse_double(key, value);
    else if (key == "delta") c.delta = parse_double(key, value);
    else if (key == "eta") c.eta = parse_double(key, value);
    else if (key == "theta_u") c.theta_u = parse_double(key, value);
    else if (key == "gamma_u") c.gamma_u = parse_double(key, value);
    else if (key == "gamma") c.gamma = parse_double(key, value);
    else if (key == "policy") c.policy = value;
    else if (key == "backend") c.backend = value;
    else if (key == "format") c.format = value;
    else if (key == "output") c.output = value;
    else throw ConfigError(key, "unknown configuration key");
}

ParsedConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open file '" + path.string() + "'");
    ParsedConfig parsed;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config", "line " + std::to_string(line_number) +
                                            ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config", "line " + std::to_string(line_number) +
                                            ": missing key before '='");
        apply_override(parsed, key, value);
    }
    return parsed;
}

void merge_missing(ParsedConfig& target, const ParsedConfig& fallback) {
    const auto fill = [](auto& dst, const auto& src) {
        if (!dst.has_value()) dst = src;
    };
    fill(target.model, fallback.model);
    fill(target.steps, fallback.steps);
    fill(target.time, fallback.time);
    fill(target.half_width, fallback.half_width);
    fill(target.boundary, fallback.boundary);
    fill(target.xi, fallback.xi);
    fill(target.theta, fallback.theta);
    fill(target.zeta, fallback.zeta);
    fill(target.delta, fallback.delta);
    fill(target.eta, fallback.eta);
    fill(target.theta_u, fallback.theta_u);
    fill(target.gamma_u, fallback.gamma_u);
    fill(target.gamma, fallback.gamma);
    fill(target.policy, fallback.policy);
    fill(target.backend, fallback.backend);
    fill(target.format, fallback.format);
    fill(target.output, fallback.output);
}

namespace {

Model resolve_model(const ParsedConfig& c) {
    if (!c.model) throw ConfigError("model", "is required (dtqw, ctqw, or generic)");
    if (*c.model == "dtqw") return Model::Dtqw;
    if (*c.model == "ctqw") return Model::Ctqw;
    if (*c.model == "generic") return Model::Generic;
    throw ConfigError("model", "must be dtqw, ctqw, or generic, got '" + *c.model + "'");
}

void reject_unused(const ParsedConfig& c, Model model) {
    const std::string name = model_name(model);
    const auto reject = [&](const auto& field, const char* key) {
        if (field.has_value())
            throw ConfigError(key, "not used by model '" + name + "'");
    };
    if (model != Model::Ctqw) {
        reject(c.time, "time");
        reject(c.gamma, "gamma");
    }
    if (model != Model::Dtqw) {
        reject(c.xi, "xi");
        reject(c.theta, "theta");
        reject(c.zeta, "zeta");
        reject(c.backend, "backend");
    }
    if (model != Model::Generic) {
        reject(c.theta_u, "theta_u");
        reject(c.gamma_u, "gamma_u");
        reject(c.policy, "policy");
    }
    if (model == Model::Ctqw) {
        reject(c.steps, "steps");
        reject(c.delta, "delta");
        reject(c.eta, "eta");
    }
}

Boundary resolve_boundary(const std::optional<std::string>& value) {
    if (!value) return Boundary::Guarded;
    if (*value == "guarded") return Boundary::Guarded;
    if (*value == "periodic") return Boundary::Periodic;
    throw ConfigError("boundary", "must be guarded or periodic, got '" + *value + "'");
}

DisposalPolicy resolve_policy(const std::string& value) {
    if (value == "keep_coherent") return DisposalPolicy::KeepCoherent;
    if (value == "trace_out") return DisposalPolicy::TraceOut;
    if (value == "post_select") return DisposalPolicy::PostSelect;
    throw ConfigError("policy",
                      "must be keep_coherent, trace_out, or post_select, got '" + value + "'");
}

ShiftBackend resolve_backend(const std::optional<std::string>& value) {
    if (!value) return ShiftBackend::Permutation;
    if (*value == "permutation") return ShiftBackend::Permutation;
    if (*value == "momentum") return ShiftBackend::MomentumPhase;
    throw ConfigError("backend", "must be permutation or momentum, got '" + *value + "'");
}

OutputFormat resolve_format(const std::optional<std::string>& value) {
    if (!value) return OutputFormat::Csv;
    if (*value == "csv") return OutputFormat::Csv;
    if (*value == "json") return OutputFormat::Json;
    throw ConfigError("format", "must be csv or json, got '" + *value + "'");
}

int resolve_steps(const ParsedConfig& c) {
    if (!c.steps) throw ConfigError("steps", "is required for this model");
    if (*c.steps < 0) throw ConfigError("steps", "must be >= 0");
    return *c.steps;
}

int resolve_half_width(const ParsedConfig& c, std::optional<int> fallback) {
    int value = 0;
    if (c.half_width) value = *c.half_width;
    else if (fallback) value = *fallback;
    else throw ConfigError("half_width", "is required for this model");
    if (value < 1) throw ConfigError("half_width", "must be >= 1");
    return value;
}

void check_window(int steps, int half_width, Boundary boundary) {
    if (boundary == Boundary::Guarded && steps > half_width - 1)
        throw ConfigError("steps",
                          "guarded boundary requires steps <= half_width - 1 so the walk "
                          "cannot reach the window edge");
}

}  // namespace

ResolvedConfig resolve(const ParsedConfig& c) {
    ResolvedConfig out;
    out.model = resolve_model(c);
    reject_unused(c, out.model);
    out.boundary = resolve_boundary(c.boundary);
    out.format = resolve_format(c.format);

    switch (out.model) {
        case Model::Dtqw:
            out.steps = resolve_steps(c);
            out.half_width = resolve_half_width(c, out.steps + 1);
            check_window(out.steps, out.half_width, out.boundary);
            out.coin = CoinParams{c.xi.value_or(0.0), c.theta.value_or(0.0),
                                  c.zeta.value_or(0.0)};
            out.delta = c.delta.value_or(0.0);
            out.eta = c.eta.value_or(0.0);
            out.backend = resolve_backend(c.backend);
            break;
        case Model::Ctqw:
            if (!c.time) throw ConfigError("time", "is required for model 'ctqw'");
            out.time = *c.time;
            if (out.time < 0.0) throw ConfigError("time", "must be >= 0");
            out.gamma = c.gamma.value_or(1.0);
            if (!(out.gamma > 0.0)) throw ConfigError("gamma", "must be > 0");
            out.half_width = resolve_half_width(c, std::nullopt);
            break;
        case Model::Generic:
            out.steps = resolve_steps(c);
            out.half_width = resolve_half_width(c, out.steps + 1);
            check_window(out.steps, out.half_width, out.boundary);
            if (!c.theta_u)
                throw ConfigError("theta_u", "is required for model 'generic'");
            out.resource = ResourceParams{*c.theta_u, c.gamma_u.value_or(0.0)};
            if (!c.policy) throw ConfigError("policy", "is required for model 'generic'");
            out.policy = resolve_policy(*c.policy);
            out.delta = c.delta.value_or(0.0);
            out.eta = c.eta.value_or(0.0);
            break;
    }

    out.output = c.output.value_or(
        model_name(out.model) + (out.format == OutputFormat::Csv ? ".csv" : ".json"));
    if (out.output.empty()) throw ConfigError("output", "must not be empty");
    return out;
}

nlohmann::json to_json(const ResolvedConfig& c) {
    nlohmann::json j{
        {"model", model_name(c.model)},
        {"half_width", c.half_width},
        {"boundary", boundary_name(c.boundary)},
        {"format", format_name(c.format)},
        {"output", c.output},
    };
    switch (c.model) {
        case Model::Dtqw:
            j["steps"] = c.steps;
            j["xi"] = c.coin.xi;
            j["theta"] = c.coin.theta;
            j["zeta"] = c.coin.zeta;
            j["delta"] = c.delta;
            j["eta"] = c.eta;
            j["backend"] = backend_name(c.backend);
            break;
        case Model::Ctqw:
            j["time"] = c.time;
            j["gamma"] = c.gamma;
            break;
        case Model::Generic:
            j["steps"] = c.steps;
            j["delta"] = c.delta;
            j["eta"] = c.eta;
            j["theta_u"] = c.resource.theta_u;
            j["gamma_u"] = c.resource.gamma_u;
            j["policy"] = policy_name(c.policy);
            break;
    }
    return j;
}

ParsedConfig parsed_from_json(const nlohmann::json& j) {
    ParsedConfig parsed;
    const auto read_string = [&](const std::string& key, std::optional<std::string>& dst,
                                 const nlohmann::json& value) {
        if (!value.is_string()) throw ConfigError(key, "expected a string");
        dst = value.get<std::string>();
    };
    const auto read_int = [&](const std::string& key, std::optional<int>& dst,
                              const nlohmann::json& value) {
        if (!value.is_number_integer()) throw ConfigError(key, "expected an integer");
        dst = value.get<int>();
    };
    const auto read_double = [&](const std::string& key, std::optional<double>& dst,
                                 const nlohmann::json& value) {
        if (!value.is_number()) throw ConfigError(key, "expected a number");
        dst = value.get<double>();
    };
    for (const auto& [key, value] : j.items()) {
        if (key == "model") read_string(key, parsed.model, value);
        else if (key == "steps") read_int(key, parsed.steps, value);
        else if (key == "time") read_double(key, parsed.time, value);
        else if (key == "half_width") read_int(key, parsed.half_width, value);
        else if (key == "boundary") read_string(key, parsed.boundary, value);
        else if (key == "xi") read_double(key, parsed.xi, value);
        else if (key == "theta") read_double(key, parsed.theta, value);
        else if (key == "zeta") read_double(key, parsed.zeta, value);
        else if (key == "delta") read_double(key, parsed.delta, value);
        else if (key == "eta") read_double(key, parsed.eta, value);
        else if (key == "theta_u") read_double(key, parsed.theta_u, value);
        else if (key == "gamma_u") read_double(key, parsed.gamma_u, value);
        else if (key == "gamma") read_double(key, parsed.gamma, value);
        else if (key == "policy") read_string(key, parsed.policy, value);
        else if (key == "backend") read_string(key, parsed.backend, value);
        else if (key == "format") read_string(key, parsed.format, value);
        else if (key == "output") read_string(key, parsed.output, value);
        else throw ConfigError(key, "unknown configuration key");
    }
    return parsed;
}

std::string model_name(Model model) {
    switch (model) {
        case Model::Dtqw: return "dtqw";
        case Model::Ctqw: return "ctqw";
        case Model::Generic: return "generic";
    }
    return "?";
}

std::string boundary_name(Boundary boundary) {
    return boundary == Boundary::Guarded ? "guarded" : "periodic";
}

std::string policy_name(DisposalPolicy policy) {
    switch (policy) {
        case DisposalPolicy::KeepCoherent: return "keep_coherent";
        case DisposalPolicy::TraceOut: return "trace_out";
        case DisposalPolicy::PostSelect: return "post_select";
    }
    return "?";
}

std::string backend_name(ShiftBackend backend) {
    return backend == ShiftBackend::Permutation ? "permutation" : "momentum";
}

std::string format_name(OutputFormat format) {
    return format == OutputFormat::Csv ? "csv" : "json";
}

}  // namespace qwalk::cli
