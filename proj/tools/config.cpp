#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace loqs::cli {

std::string value_type_name(ValueType t) {
    switch (t) {
        case ValueType::Int: return "int";
        case ValueType::Real: return "real";
        case ValueType::Bool: return "bool";
        case ValueType::String: return "string";
        case ValueType::IntList: return "int-list";
        case ValueType::RealList: return "real-list";
    }
    return "?";
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::int64_t parse_int(const std::string& t, const std::string& ctx) {
    std::size_t pos = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(t, &pos);
    } catch (...) {
        throw ConfigError(ctx + ": expected an integer, got '" + t + "'");
    }
    if (pos != t.size()) throw ConfigError(ctx + ": trailing characters in integer '" + t + "'");
    return v;
}

double parse_real(const std::string& t, const std::string& ctx) {
    std::size_t pos = 0;
    double v = 0;
    try {
        v = std::stod(t, &pos);
    } catch (...) {
        throw ConfigError(ctx + ": expected a number, got '" + t + "'");
    }
    if (pos != t.size()) throw ConfigError(ctx + ": trailing characters in number '" + t + "'");
    return v;
}

std::vector<std::string> split_list(const std::string& t) {
    std::vector<std::string> parts;
    std::string cur;
    std::stringstream ss(t);
    while (std::getline(ss, cur, ',')) parts.push_back(trim(cur));
    if (!parts.empty() && parts.back().empty()) parts.pop_back();
    return parts;
}

}  // namespace

Value parse_value(const std::string& text, ValueType type, const std::string& ctx) {
    const std::string t = trim(text);
    switch (type) {
        case ValueType::Int:
            return parse_int(t, ctx);
        case ValueType::Real:
            return parse_real(t, ctx);
        case ValueType::Bool: {
            if (t == "true" || t == "1") return true;
            if (t == "false" || t == "0") return false;
            throw ConfigError(ctx + ": expected true/false, got '" + t + "'");
        }
        case ValueType::String:
            return t;
        case ValueType::IntList: {
            std::vector<std::int64_t> v;
            for (const auto& p : split_list(t)) v.push_back(parse_int(p, ctx));
            return v;
        }
        case ValueType::RealList: {
            std::vector<double> v;
            for (const auto& p : split_list(t)) v.push_back(parse_real(p, ctx));
            return v;
        }
    }
    throw ConfigError(ctx + ": unhandled type");
}

std::string format_value(const Value& v) {
    struct Visitor {
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(double x) const { return fmt_double(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& x) const { return x; }
        std::string operator()(const std::vector<std::int64_t>& x) const {
            std::string s;
            for (std::size_t i = 0; i < x.size(); ++i)
                s += (i ? "," : "") + std::to_string(x[i]);
            return s;
        }
        std::string operator()(const std::vector<double>& x) const {
            std::string s;
            for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + fmt_double(x[i]);
            return s;
        }
    };
    return std::visit(Visitor{}, v);
}

std::string ExperimentConfig::canonical() const {
    std::string s = "experiment=" + experiment + "\n";
    for (const auto& [k, v] : params) s += k + "=" + format_value(v) + "\n";
    return s;
}

std::uint64_t ExperimentConfig::hash() const {
    // FNV-1a over the canonical serialization.
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

RawConfig parse_config_text(const std::string& text, const std::string& origin) {
    RawConfig raw;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (raw.entries.count(key))
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": duplicate key '" + key +
                              "' (first set on line " +
                              std::to_string(raw.entries.at(key).second) + ")");
        raw.entries[key] = {value, lineno};
    }
    return raw;
}

RawConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

}  // namespace loqs::cli
