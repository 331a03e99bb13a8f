#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace bayesmv::cli {

enum class OutputFormat { Json, Csv };

using Cell = std::variant<double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
};

/// One analysis result in both renderings. `json` keeps insertion order,
/// which is the documented key order.
struct Report {
    nlohmann::ordered_json json;
    Table table;
};

/// Locale-independent "%.17g" rendering. Non-finite values become "null"
/// in JSON and an empty cell in CSV.
std::string format_double(double value);

std::string render_json(const nlohmann::ordered_json& value);
std::string render_csv(const Table& table);
std::string render(const Report& report, OutputFormat format);

/// Writes the rendered report to `path`, or standard output when `path` is
/// empty or "-". Throws IoError on failure.
void emit_report(const Report& report, OutputFormat format, const std::filesystem::path& path);

}  // namespace bayesmv::cli
