#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cli/config.hpp"
#include "qwalk/state.hpp"

namespace qwalk::cli {

struct RunOutput {
    Distribution distribution;
    double norm_residual;   ///< |sum of probabilities - 1|
    double wall_seconds;
};

/// Runs the configured experiment. Pure computation, no file I/O.
RunOutput execute(const ResolvedConfig& config);

/// Relative paths are resolved against `output_dir` when given, else against
/// the QWALK_OUTPUT_DIR environment variable, else left as they are.
std::filesystem::path resolve_output_path(const std::string& output,
                                          const std::optional<std::string>& output_dir);

/// "x,probability" rows, 17 significant digits, byte-deterministic.
void write_distribution_csv(const std::filesystem::path& path, const Distribution& dist);

/// config / results / runtime sections of the sidecar.
nlohmann::json metadata_json(const ResolvedConfig& config, const RunOutput& run);

/// Writes the data file and, for CSV output, the .meta.json sidecar next to
/// it. Returns the data file path.
std::filesystem::path write_run_files(const ResolvedConfig& config, const RunOutput& run,
                                      const std::optional<std::string>& output_dir);

/// Runs both experiments and reports total-variation distance, mean
/// difference, and variance ratio. Throws ConfigError when the lattices
/// differ.
nlohmann::json compare_report(const ResolvedConfig& a, const ResolvedConfig& b);

/// Entire command-line interface; returns the process exit code
/// (0 success, 2 invalid configuration, 3 boundary violation,
/// 4 failed post-selection, 1 anything else).
int run_main(int argc, const char* const* argv);

}  // namespace qwalk::cli
