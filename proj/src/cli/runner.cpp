#include "cli/runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qwalk/ctqw.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/generic.hpp"

namespace qwalk::cli {

RunOutput execute(const ResolvedConfig& c) {
    const auto start = std::chrono::steady_clock::now();
    const Lattice lattice(c.half_width, c.boundary);
    std::optional<Distribution> dist;
    switch (c.model) {
        case Model::Dtqw: {
            const WalkState init = initial_particle_state(c.delta, c.eta, lattice);
            dist = measure_position(dtqw_evolve(init, c.coin, c.steps, c.backend));
            break;
        }
        case Model::Ctqw:
            dist = ctqw_distribution(HamiltonianSpec{c.gamma, lattice}, c.time,
                                     delta_peak(lattice));
            break;
        case Model::Generic: {
            const WalkState init = initial_particle_state(c.delta, c.eta, lattice);
            dist = generic_evolve(init, c.resource, c.policy, c.steps);
            break;
        }
    }
    double sum = 0.0;
    for (double p : dist->probabilities()) sum += p;
    const auto stop = std::chrono::steady_clock::now();
    return RunOutput{std::move(*dist), std::abs(sum - 1.0),
                     std::chrono::duration<double>(stop - start).count()};
}

std::filesystem::path resolve_output_path(const std::string& output,
                                          const std::optional<std::string>& output_dir) {
    std::filesystem::path path(output);
    if (path.is_absolute()) return path;
    if (output_dir) return std::filesystem::path(*output_dir) / path;
    if (const char* env = std::getenv("QWALK_OUTPUT_DIR"); env != nullptr && *env != '\0')
        return std::filesystem::path(env) / path;
    return path;
}

void write_distribution_csv(const std::filesystem::path& path, const Distribution& dist) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path.string() + "'");
    out << "x,probability\n";
    char buffer[64];
    for (int i = 0; i < dist.lattice().size(); ++i) {
        std::snprintf(buffer, sizeof buffer, "%.17g", dist.probabilities()[i]);
        out << dist.lattice().site_at(i) << ',' << buffer << '\n';
    }
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

nlohmann::json metadata_json(const ResolvedConfig& config, const RunOutput& run) {
    return nlohmann::json{
        {"config", to_json(config)},
        {"results",
         {{"norm_residual", run.norm_residual},
          {"mean", run.distribution.mean()},
          {"variance", run.distribution.variance()}}},
        {"runtime", {{"wall_clock_seconds", run.wall_seconds}}},
    };
}

namespace {

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + path.string() + "'");
    out << text;
    if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

std::filesystem::path write_run_files(const ResolvedConfig& config, const RunOutput& run,
                                      const std::optional<std::string>& output_dir) {
    const std::filesystem::path data_path = resolve_output_path(config.output, output_dir);
    if (data_path.has_parent_path())
        std::filesystem::create_directories(data_path.parent_path());
    nlohmann::json meta = metadata_json(config, run);
    if (config.format == OutputFormat::Csv) {
        write_distribution_csv(data_path, run.distribution);
        std::filesystem::path sidecar = data_path;
        sidecar.replace_extension();
        sidecar += ".meta.json";
        write_text_file(sidecar, meta.dump(2) + "\n");
    } else {
        nlohmann::json rows = nlohmann::json::array();
        for (int i = 0; i < run.distribution.lattice().size(); ++i)
            rows.push_back({{"x", run.distribution.lattice().site_at(i)},
                            {"probability", run.distribution.probabilities()[i]}});
        meta["distribution"] = std::move(rows);
        write_text_file(data_path, meta.dump(2) + "\n");
    }
    return data_path;
}

nlohmann::json compare_report(const ResolvedConfig& a, const ResolvedConfig& b) {
    if (a.half_width != b.half_width)
        throw ConfigError("half_width", "compare requires both runs on one lattice");
    if (a.boundary != b.boundary)
        throw ConfigError("boundary", "compare requires both runs on one lattice");
    const RunOutput ra = execute(a);
    const RunOutput rb = execute(b);
    nlohmann::json metrics{
        {"total_variation_distance",
         total_variation_distance(ra.distribution, rb.distribution)},
        {"mean_difference", ra.distribution.mean() - rb.distribution.mean()},
    };
    const double vb = rb.distribution.variance();
    if (vb > 0.0)
        metrics["variance_ratio"] = ra.distribution.variance() / vb;
    else
        metrics["variance_ratio"] = nullptr;  // undefined against a point mass
    const auto side = [](const ResolvedConfig& config, const RunOutput& run) {
        return nlohmann::json{{"config", to_json(config)},
                              {"mean", run.distribution.mean()},
                              {"variance", run.distribution.variance()}};
    };
    return nlohmann::json{
        {"a", side(a, ra)}, {"b", side(b, rb)}, {"metrics", std::move(metrics)}};
}

namespace {

void add_run_options(CLI::App* cmd, ParsedConfig& p, std::string& config_file) {
    cmd->add_option("--config", config_file, "key = value configuration file");
    cmd->add_option("--steps", p.steps, "number of walk steps");
    cmd->add_option("--time", p.time, "continuous evolution time");
    cmd->add_option("--half-width", p.half_width, "lattice half width");
    cmd->add_option("--boundary", p.boundary, "guarded or periodic");
    cmd->add_option("--xi", p.xi, "coin angle xi (radians)");
    cmd->add_option("--theta", p.theta, "coin angle theta (radians)");
    cmd->add_option("--zeta", p.zeta, "coin angle zeta (radians)");
    cmd->add_option("--delta", p.delta, "initial coin angle delta (radians)");
    cmd->add_option("--eta", p.eta, "initial coin phase eta (radians)");
    cmd->add_option("--theta-u", p.theta_u, "resource angle theta_u (radians)");
    cmd->add_option("--gamma-u", p.gamma_u, "resource phase gamma_u (radians)");
    cmd->add_option("--gamma", p.gamma, "hopping rate gamma");
    cmd->add_option("--policy", p.policy, "keep_coherent, trace_out, or post_select");
    cmd->add_option("--backend", p.backend, "permutation or momentum");
    cmd->add_option("--format", p.format, "csv or json");
    cmd->add_option("--output,-o", p.output, "data file path");
}

int do_run(const std::string& model, ParsedConfig flags, const std::string& config_file) {
    if (!config_file.empty()) merge_missing(flags, parse_config_file(config_file));
    flags.model = model;  // the subcommand decides the model, file values notwithstanding
    const ResolvedConfig resolved = resolve(flags);
    const RunOutput run = execute(resolved);
    const auto path = write_run_files(resolved, run, std::nullopt);
    std::cout << "wrote " << path.string() << " (mean " << run.distribution.mean()
              << ", variance " << run.distribution.variance() << ")\n";
    return 0;
}

int do_compare(const std::string& a_path, const std::string& b_path,
               const std::string& report_path) {
    const ResolvedConfig a = resolve(parse_config_file(a_path));
    const ResolvedConfig b = resolve(parse_config_file(b_path));
    const nlohmann::json report = compare_report(a, b);
    const auto path = resolve_output_path(report_path, std::nullopt);
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    write_text_file(path, report.dump(2) + "\n");
    std::cout << "wrote " << path.string() << " (total variation "
              << report["metrics"]["total_variation_distance"].get<double>() << ")\n";
    return 0;
}

int exit_code_for(const std::exception_ptr& error) {
    if (!error) return 0;
    try {
        std::rethrow_exception(error);
    } catch (const BoundaryViolation&) {
        return 3;
    } catch (const PostSelectZeroProbability&) {
        return 4;
    } catch (const std::exception&) {
        return 1;
    }
}

int do_sweep(const std::string& config_path, const std::string& param,
             const std::vector<std::string>& values, const std::string& output_dir,
             unsigned jobs) {
    if (values.empty()) throw ConfigError(param, "sweep needs at least one value");
    const ParsedConfig base = parse_config_file(config_path);

    // Every grid point is named and validated before any point is computed.
    std::vector<ResolvedConfig> grid;
    grid.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        ParsedConfig point = base;
        apply_override(point, param, values[i]);
        ResolvedConfig resolved = resolve(point);
        std::filesystem::path name(resolved.output);
        const std::string extension = name.extension().string();
        name.replace_extension();
        char suffix[16];
        std::snprintf(suffix, sizeof suffix, "_%03zu", i);
        resolved.output = name.string() + suffix + extension;
        grid.push_back(std::move(resolved));
    }

    const std::optional<std::string> dir =
        output_dir.empty() ? std::nullopt : std::optional<std::string>(output_dir);
    std::vector<std::filesystem::path> data_paths(grid.size());
    std::vector<std::exception_ptr> failures(grid.size());
    std::atomic<std::size_t> cursor{0};
    unsigned workers = jobs != 0 ? jobs : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, grid.size()));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= grid.size()) return;
                try {
                    const RunOutput run = execute(grid[i]);
                    data_paths[i] = write_run_files(grid[i], run, dir);
                } catch (...) {
                    failures[i] = std::current_exception();
                }
            }
        });
    for (std::thread& t : pool) t.join();

    nlohmann::json manifest = nlohmann::json::array();
    for (std::size_t i = 0; i < grid.size(); ++i)
        manifest.push_back({{"index", i},
                            {"param", param},
                            {"value", values[i]},
                            {"output", data_paths[i].string()},
                            {"config", to_json(grid[i])}});
    const auto manifest_path = resolve_output_path("sweep_manifest.json", dir);
    if (manifest_path.has_parent_path())
        std::filesystem::create_directories(manifest_path.parent_path());
    write_text_file(manifest_path, manifest.dump(2) + "\n");

    for (std::size_t i = 0; i < grid.size(); ++i)
        if (failures[i]) {
            try {
                std::rethrow_exception(failures[i]);
            } catch (const std::exception& e) {
                std::cerr << "sweep point " << i << " failed: " << e.what() << "\n";
            }
            return exit_code_for(failures[i]);
        }
    std::cout << "wrote " << grid.size() << " sweep points and "
              << manifest_path.string() << "\n";
    return 0;
}

int do_fig1(const std::string& output_dir) {
    constexpr double pi = std::numbers::pi;
    struct Preset {
        const char* letter;
        CoinParams coin;
    };
    const Preset presets[] = {
        {"a", {0.0, pi / 12.0, 0.0}},
        {"b", {0.0, pi / 4.0, 0.0}},
        {"c", {0.0, pi / 3.0, 5.0 * pi / 12.0}},
        {"d", {5.0 * pi / 12.0, pi / 3.0, 0.0}},
    };
    const std::optional<std::string> dir =
        output_dir.empty() ? std::nullopt : std::optional<std::string>(output_dir);
    for (const Preset& preset : presets) {
        ResolvedConfig config;
        config.model = Model::Dtqw;
        config.steps = 100;
        config.half_width = 101;
        config.boundary = Boundary::Guarded;
        config.coin = preset.coin;
        config.delta = pi / 4.0;
        config.eta = pi / 2.0;
        config.backend = ShiftBackend::Permutation;
        config.format = OutputFormat::Csv;
        config.output = std::string("fig1_") + preset.letter + ".csv";
        const RunOutput run = execute(config);
        const auto path = write_run_files(config, run, dir);
        std::cout << "wrote " << path.string() << " (variance "
                  << run.distribution.variance() << ")\n";
    }
    return 0;
}

}  // namespace

int run_main(int argc, const char* const* argv) {
    CLI::App app{"one-dimensional quantum walk simulator"};
    app.require_subcommand(1);

    ParsedConfig dtqw_flags, ctqw_flags, generic_flags;
    std::string dtqw_config, ctqw_config, generic_config;
    CLI::App* dtqw_cmd = app.add_subcommand("dtqw", "coined discrete-time walk");
    add_run_options(dtqw_cmd, dtqw_flags, dtqw_config);
    CLI::App* ctqw_cmd = app.add_subcommand("ctqw", "continuous-time hopping walk");
    add_run_options(ctqw_cmd, ctqw_flags, ctqw_config);
    CLI::App* generic_cmd =
        app.add_subcommand("generic", "resource-driven walk with a disposal policy");
    add_run_options(generic_cmd, generic_flags, generic_config);

    CLI::App* compare_cmd =
        app.add_subcommand("compare", "run two configs and report distribution metrics");
    std::string compare_a, compare_b, compare_out = "compare.json";
    compare_cmd->add_option("--a", compare_a, "first config file")->required();
    compare_cmd->add_option("--b", compare_b, "second config file")->required();
    compare_cmd->add_option("--output,-o", compare_out, "report path");

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "fan one config out over a parameter grid");
    std::string sweep_config, sweep_param, sweep_dir;
    std::vector<std::string> sweep_values;
    unsigned sweep_jobs = 0;
    sweep_cmd->add_option("--config", sweep_config, "base config file")->required();
    sweep_cmd->add_option("--param", sweep_param, "configuration key to vary")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--output-dir", sweep_dir, "directory for the outputs");
    sweep_cmd->add_option("--jobs", sweep_jobs, "worker threads (default: hardware)");

    CLI::App* fig1_cmd =
        app.add_subcommand("fig1", "four preset 100-step walks, symmetric start");
    std::string fig1_dir;
    fig1_cmd->add_option("--output-dir", fig1_dir, "directory for the outputs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (dtqw_cmd->parsed()) return do_run("dtqw", dtqw_flags, dtqw_config);
        if (ctqw_cmd->parsed()) return do_run("ctqw", ctqw_flags, ctqw_config);
        if (generic_cmd->parsed()) return do_run("generic", generic_flags, generic_config);
        if (compare_cmd->parsed()) return do_compare(compare_a, compare_b, compare_out);
        if (sweep_cmd->parsed())
            return do_sweep(sweep_config, sweep_param, sweep_values, sweep_dir, sweep_jobs);
        if (fig1_cmd->parsed()) return do_fig1(fig1_dir);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const BoundaryViolation& e) {
        std::cerr << "boundary violation: " << e.what() << "\n";
        return 3;
    } catch (const PostSelectZeroProbability& e) {
        std::cerr << "post-selection failed: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace qwalk::cli
