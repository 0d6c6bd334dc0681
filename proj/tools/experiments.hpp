#ifndef LOQS_CLI_EXPERIMENTS_HPP
#define LOQS_CLI_EXPERIMENTS_HPP

#include <chrono>
#include <functional>
#include <optional>

#include "config.hpp"
#include "output.hpp"

namespace loqs::cli {

/// Version string embedded in every output footer.
extern const char* kVersion;

struct ParamSpec {
    std::string name;
    ValueType type;
    Value default_value;
    std::string unit;
    std::string description;
};

struct RunContext;

struct ExperimentSpec {
    std::string name;
    std::string summary;
    std::vector<ParamSpec> params;
    std::function<void(RunContext&)> run;

    const ParamSpec* find_param(const std::string& key) const;
};

/// Resolved run environment handed to an experiment body.
struct RunContext {
    const ExperimentConfig& config;
    TableWriter& table;
    int threads = 1;
    std::chrono::steady_clock::time_point deadline{};
    bool has_deadline = false;
    bool budget_hit = false;

    std::int64_t get_int(const std::string& key) const;
    double get_real(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::vector<std::int64_t> get_int_list(const std::string& key) const;
    std::vector<double> get_real_list(const std::string& key) const;

    /// True once the runtime budget is exhausted; the experiment should stop
    /// emitting rows and return.
    bool out_of_budget();
};

/// Catalog of every runnable experiment.
const std::vector<ExperimentSpec>& experiment_catalog();
const ExperimentSpec* find_experiment(const std::string& name);

/// Machine-readable schema catalog (JSON text).
std::string catalog_json();

/// Validates raw key-value pairs against the schema and fills defaults.
ExperimentConfig resolve_config(const RawConfig& raw);

struct RunOutcome {
    int exit_code = 0;  ///< 0 ok, 3 budget exceeded
    double wall_seconds = 0.0;
};

/// Executes the configured experiment, writing the table to `out`.
RunOutcome run_experiment(const ExperimentConfig& config, std::ostream& out, int threads);

}  // namespace loqs::cli

#endif
