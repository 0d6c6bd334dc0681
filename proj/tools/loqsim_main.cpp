#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "experiments.hpp"
#include "loqs/types.hpp"

namespace {

int run_command(const std::string& config_path, std::optional<std::uint64_t> seed_override,
                std::optional<std::string> out_override,
                std::optional<std::string> format_override,
                std::optional<double> budget_override, int threads) {
    using namespace loqs::cli;
    ExperimentConfig cfg;
    try {
        cfg = resolve_config(parse_config_file(config_path));
        if (seed_override) cfg.seed = *seed_override;
        if (out_override) cfg.output_path = *out_override;
        if (format_override) {
            if (*format_override == "csv")
                cfg.format = OutputFormat::Csv;
            else if (*format_override == "json-lines")
                cfg.format = OutputFormat::JsonLines;
            else
                throw ConfigError("--format must be 'csv' or 'json-lines'");
        }
        if (budget_override) cfg.budget_seconds = *budget_override;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        RunOutcome outcome;
        if (cfg.output_path.empty() || cfg.output_path == "-") {
            outcome = run_experiment(cfg, std::cout, threads);
        } else {
            std::ofstream out(cfg.output_path, std::ios::binary);
            if (!out) {
                std::cerr << "config error: cannot open output file '" << cfg.output_path
                          << "'\n";
                return 2;
            }
            outcome = run_experiment(cfg, out, threads);
        }
        std::cerr << "loqsim: " << cfg.experiment << " finished in " << outcome.wall_seconds
                  << " s\n";
        if (outcome.exit_code == 3)
            std::cerr << "loqsim: runtime budget exceeded; output is partial\n";
        return outcome.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const loqs::Error& e) {
        // Parameter values outside a module's domain are config mistakes too.
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"loqsim: linear-optics simulation experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_path;
    std::optional<std::string> format;
    std::optional<double> budget;
    int threads = 1;

    CLI::App* run = app.add_subcommand("run", "run an experiment from a config file");
    run->add_option("config", config_path, "config file path")->required();
    run->add_option("--seed", seed, "override the config seed");
    run->add_option("--out", out_path, "override the output path ('-' for stdout)");
    run->add_option("--format", format, "override the output format (csv | json-lines)");
    run->add_option("--budget", budget, "runtime budget in seconds");
    run->add_option("--threads", threads, "worker threads for parallel experiments");

    bool list_json = false;
    CLI::App* list = app.add_subcommand("list", "list experiments and their parameters");
    list->add_flag("--json", list_json, "emit the machine-readable catalog");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed())
        return run_command(config_path, seed, out_path, format, budget, threads);

    if (list->parsed()) {
        if (list_json) {
            std::cout << loqs::cli::catalog_json() << "\n";
        } else {
            for (const auto& e : loqs::cli::experiment_catalog()) {
                std::cout << e.name << "\n    " << e.summary << "\n";
                for (const auto& p : e.params)
                    std::cout << "    " << p.name << " (" << loqs::cli::value_type_name(p.type)
                              << ", default " << loqs::cli::format_value(p.default_value) << ") "
                              << p.description << "\n";
            }
        }
        return 0;
    }
    return 0;
}
