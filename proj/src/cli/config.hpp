#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qwalk/dtqw.hpp"
#include "qwalk/generic.hpp"
#include "qwalk/lattice.hpp"

namespace qwalk::cli {

enum class Model { Dtqw, Ctqw, Generic };
enum class OutputFormat { Csv, Json };

/// Validation failure that names the offending field.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error("config error: field '" + field + "': " + message),
          field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Raw key/value view of an experiment; an empty optional means "not given".
/// Values are validated only when the config is resolved.
struct ParsedConfig {
    std::optional<std::string> model;
    std::optional<int> steps;
    std::optional<double> time;
    std::optional<int> half_width;
    std::optional<std::string> boundary;
    std::optional<double> xi;
    std::optional<double> theta;
    std::optional<double> zeta;
    std::optional<double> delta;
    std::optional<double> eta;
    std::optional<double> theta_u;
    std::optional<double> gamma_u;
    std::optional<double> gamma;
    std::optional<std::string> policy;
    std::optional<std::string> backend;
    std::optional<std::string> format;
    std::optional<std::string> output;
};

/// Fully validated, concrete experiment description.
struct ResolvedConfig {
    Model model = Model::Dtqw;
    int steps = 0;        // dtqw, generic
    double time = 0.0;    // ctqw
    int half_width = 1;
    Boundary boundary = Boundary::Guarded;
    CoinParams coin;      // dtqw
    double delta = 0.0;   // dtqw, generic
    double eta = 0.0;
    ResourceParams resource;  // generic
    double gamma = 1.0;       // ctqw
    DisposalPolicy policy = DisposalPolicy::KeepCoherent;  // generic
    ShiftBackend backend = ShiftBackend::Permutation;      // dtqw
    OutputFormat format = OutputFormat::Csv;
    std::string output;
};

/// Sets one field from its canonical key (the config-file spelling). Throws
/// ConfigError for unknown keys or unparseable values.
void apply_override(ParsedConfig& config, const std::string& key, const std::string& value);

/// Reads a key = value file ('#' starts a comment). Throws ConfigError.
ParsedConfig parse_config_file(const std::filesystem::path& path);

/// Copies fields of `fallback` that are absent in `target`.
void merge_missing(ParsedConfig& target, const ParsedConfig& fallback);

/// Applies per-model defaults, rejects fields the model does not use, and
/// checks every precondition. Throws ConfigError naming the field.
ResolvedConfig resolve(const ParsedConfig& config);

/// Model-relevant fields only, under their canonical keys, so the result can
/// be fed back through parsed_from_json and resolve.
nlohmann::json to_json(const ResolvedConfig& config);

/// Inverse of to_json for sidecar round-trips. Unknown keys are an error.
ParsedConfig parsed_from_json(const nlohmann::json& j);

std::string model_name(Model model);
std::string boundary_name(Boundary boundary);
std::string policy_name(DisposalPolicy policy);
std::string backend_name(ShiftBackend backend);
std::string format_name(OutputFormat format);

}  // namespace qwalk::cli
