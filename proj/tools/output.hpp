#ifndef LOQS_CLI_OUTPUT_HPP
#define LOQS_CLI_OUTPUT_HPP

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "config.hpp"

namespace loqs::cli {

using Cell = std::variant<std::int64_t, double, std::string>;

struct Column {
    std::string name;
    std::string unit;
};

/// Serialized table sink. Output bytes depend only on the written content,
/// never on wall time, so identical runs produce identical files.
class TableWriter {
  public:
    TableWriter(std::ostream& out, OutputFormat format, std::string experiment);

    void header(const std::vector<Column>& columns);
    void row(const std::vector<Cell>& cells);
    /// Provenance footer; `partial_reason` marks truncated output.
    void footer(std::uint64_t seed, std::uint64_t config_hash, const std::string& version,
                const std::string& partial_reason = "");

    static std::string format_double(double v);

  private:
    std::ostream& out_;
    OutputFormat format_;
    std::string experiment_;
    std::vector<Column> columns_;
    bool wrote_header_ = false;
};

}  // namespace loqs::cli

#endif
