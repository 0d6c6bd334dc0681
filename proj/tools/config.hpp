#ifndef LOQS_CLI_CONFIG_HPP
#define LOQS_CLI_CONFIG_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace loqs::cli {

/// Raised on malformed or unknown configuration input; carries line/field
/// context for diagnostics. Maps to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class ValueType { Int, Real, Bool, String, IntList, RealList };

using Value = std::variant<std::int64_t, double, bool, std::string, std::vector<std::int64_t>,
                           std::vector<double>>;

std::string value_type_name(ValueType t);
std::string format_value(const Value& v);

/// Parses `text` as the given type; `context` names the key/line for errors.
Value parse_value(const std::string& text, ValueType type, const std::string& context);

enum class OutputFormat { Csv, JsonLines };

/// Flat key-value experiment configuration.
struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 0;
    std::string output_path;  ///< empty = stdout
    OutputFormat format = OutputFormat::Csv;
    double budget_seconds = 0.0;  ///< 0 = unlimited
    std::map<std::string, Value> params;

    /// Canonical serialization of experiment + params (sorted keys), used for
    /// the embedded config hash.
    std::string canonical() const;
    std::uint64_t hash() const;
};

/// Parses the flat `key = value` format. Typed parsing of parameter values
/// happens later against the experiment schema; here values stay as raw
/// strings with their line numbers.
struct RawConfig {
    std::map<std::string, std::pair<std::string, int>> entries;  ///< key -> (text, line)
};
RawConfig parse_config_file(const std::string& path);
RawConfig parse_config_text(const std::string& text, const std::string& origin);

}  // namespace loqs::cli

#endif
