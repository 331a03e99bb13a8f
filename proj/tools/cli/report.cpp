#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "bayesmv/error.hpp"

namespace bayesmv::cli {

namespace {

void append_string(std::string& out, const std::string& s) {
    out.push_back('"');
    for (const char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(ch));
                    out += buf;
                } else {
                    out.push_back(ch);
                }
        }
    }
    out.push_back('"');
}

void append_json(std::string& out, const nlohmann::ordered_json& value, int depth) {
    const std::string indent(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string closing(static_cast<std::size_t>(2 * depth), ' ');
    switch (value.type()) {
        case nlohmann::json::value_t::null:
        case nlohmann::json::value_t::discarded:
            out += "null";
            break;
        case nlohmann::json::value_t::boolean:
            out += value.get<bool>() ? "true" : "false";
            break;
        case nlohmann::json::value_t::number_integer:
            out += std::to_string(value.get<std::int64_t>());
            break;
        case nlohmann::json::value_t::number_unsigned:
            out += std::to_string(value.get<std::uint64_t>());
            break;
        case nlohmann::json::value_t::number_float: {
            const double x = value.get<double>();
            out += std::isfinite(x) ? format_double(x) : "null";
            break;
        }
        case nlohmann::json::value_t::string:
            append_string(out, value.get_ref<const std::string&>());
            break;
        case nlohmann::json::value_t::array: {
            if (value.empty()) {
                out += "[]";
                break;
            }
            // Arrays of scalars stay on one line.
            const bool flat = std::all_of(value.begin(), value.end(),
                                          [](const auto& v) { return v.is_primitive(); });
            out.push_back('[');
            bool first = true;
            for (const auto& element : value) {
                if (!first) out.push_back(',');
                if (flat) {
                    if (!first) out.push_back(' ');
                } else {
                    out += "\n" + indent;
                }
                append_json(out, element, depth + 1);
                first = false;
            }
            if (!flat) out += "\n" + closing;
            out.push_back(']');
            break;
        }
        case nlohmann::json::value_t::object: {
            if (value.empty()) {
                out += "{}";
                break;
            }
            out.push_back('{');
            bool first = true;
            for (const auto& [key, element] : value.items()) {
                if (!first) out.push_back(',');
                out += "\n" + indent;
                append_string(out, key);
                out += ": ";
                append_json(out, element, depth + 1);
                first = false;
            }
            out += "\n" + closing + "}";
            break;
        }
        case nlohmann::json::value_t::binary:
            throw Error(ErrorCode::InvalidArgument, "binary values are not serializable");
    }
}

void append_csv_field(std::string& out, const std::string& field) {
    const bool quote = field.find_first_of(",\"\r\n") != std::string::npos;
    if (!quote) {
        out += field;
        return;
    }
    out.push_back('"');
    for (const char ch : field) {
        if (ch == '"') out.push_back('"');
        out.push_back(ch);
    }
    out.push_back('"');
}

std::string cell_text(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return std::isfinite(v) ? format_double(v) : std::string();
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else {
                return v;
            }
        },
        cell);
}

}  // namespace

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string render_json(const nlohmann::ordered_json& value) {
    std::string out;
    append_json(out, value, 0);
    out.push_back('\n');
    return out;
}

std::string render_csv(const Table& table) {
    std::string out;
    auto line = [&out](const auto& fields, auto&& to_text) {
        bool first = true;
        for (const auto& f : fields) {
            if (!first) out.push_back(',');
            append_csv_field(out, to_text(f));
            first = false;
        }
        out += "\r\n";
    };
    line(table.header, [](const std::string& s) { return s; });
    for (const auto& row : table.rows) {
        line(row, cell_text);
    }
    return out;
}

std::string render(const Report& report, OutputFormat format) {
    return format == OutputFormat::Json ? render_json(report.json) : render_csv(report.table);
}

void emit_report(const Report& report, OutputFormat format, const std::filesystem::path& path) {
    const std::string text = render(report, format);
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) {
            throw Error(ErrorCode::IoError, "failed writing to standard output");
        }
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot open output file '" + path.string() + "'");
    }
    out << text;
    out.close();
    if (!out) {
        throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
    }
}

}  // namespace bayesmv::cli
