#include "output.hpp"

#include <cstdio>
#include <nlohmann/json.hpp>

namespace loqs::cli {

using nlohmann::json;

TableWriter::TableWriter(std::ostream& out, OutputFormat format, std::string experiment)
    : out_(out), format_(format), experiment_(std::move(experiment)) {}

std::string TableWriter::format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string cell_to_string(const Cell& c) {
    if (std::holds_alternative<std::int64_t>(c))
        return std::to_string(std::get<std::int64_t>(c));
    if (std::holds_alternative<double>(c))
        return TableWriter::format_double(std::get<double>(c));
    return std::get<std::string>(c);
}

json cell_to_json(const Cell& c) {
    if (std::holds_alternative<std::int64_t>(c)) return std::get<std::int64_t>(c);
    if (std::holds_alternative<double>(c)) {
        const double v = std::get<double>(c);
        if (std::isnan(v)) return "nan";  // JSON has no NaN literal
        return v;
    }
    return std::get<std::string>(c);
}

}  // namespace

void TableWriter::header(const std::vector<Column>& columns) {
    columns_ = columns;
    wrote_header_ = true;
    if (format_ == OutputFormat::Csv) {
        out_ << "# loqsim experiment: " << experiment_ << "\n";
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out_ << ",";
            out_ << columns[i].name << "(" << columns[i].unit << ")";
        }
        out_ << "\n";
    } else {
        json j;
        j["type"] = "header";
        j["experiment"] = experiment_;
        j["columns"] = json::array();
        for (const auto& c : columns) j["columns"].push_back({{"name", c.name}, {"unit", c.unit}});
        out_ << j.dump() << "\n";
    }
}

void TableWriter::row(const std::vector<Cell>& cells) {
    if (!wrote_header_) throw std::logic_error("TableWriter: row before header");
    if (cells.size() != columns_.size())
        throw std::logic_error("TableWriter: cell count does not match header");
    if (format_ == OutputFormat::Csv) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ",";
            out_ << cell_to_string(cells[i]);
        }
        out_ << "\n";
    } else {
        json j;
        j["type"] = "row";
        j["values"] = json::array();
        for (const auto& c : cells) j["values"].push_back(cell_to_json(c));
        out_ << j.dump() << "\n";
    }
}

void TableWriter::footer(std::uint64_t seed, std::uint64_t config_hash,
                         const std::string& version, const std::string& partial_reason) {
    char hashbuf[20];
    std::snprintf(hashbuf, sizeof(hashbuf), "%016llx",
                  static_cast<unsigned long long>(config_hash));
    if (format_ == OutputFormat::Csv) {
        out_ << "# seed=" << seed << "\n";
        out_ << "# config=" << hashbuf << "\n";
        out_ << "# version=" << version << "\n";
        if (!partial_reason.empty()) out_ << "# partial=" << partial_reason << "\n";
    } else {
        json j;
        j["type"] = "footer";
        j["seed"] = seed;
        j["config"] = hashbuf;
        j["version"] = version;
        if (!partial_reason.empty()) j["partial"] = partial_reason;
        out_ << j.dump() << "\n";
    }
}

}  // namespace loqs::cli
