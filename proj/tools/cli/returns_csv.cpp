#include "returns_csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "bayesmv/error.hpp"

namespace bayesmv::cli {

namespace {

using Record = std::vector<std::string>;

[[noreturn]] void malformed(std::string_view source, const std::string& what) {
    throw Error(ErrorCode::MalformedCsv, std::string(source) + ": " + what);
}

// RFC 4180 records; tolerates LF or CRLF line endings and skips blank lines.
std::vector<Record> split_records(std::string_view text, std::string_view source) {
    std::vector<Record> records;
    Record record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    auto end_record = [&] {
        if (field_started || !record.empty() || !field.empty()) {
            record.push_back(field);
            records.push_back(std::move(record));
        }
        record.clear();
        field.clear();
        field_started = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(ch);
            }
            continue;
        }
        switch (ch) {
            case '"':
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                record.push_back(field);
                field.clear();
                field_started = true;
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                break;
            default:
                field.push_back(ch);
                field_started = true;
        }
    }
    if (in_quotes) {
        malformed(source, "unterminated quoted field");
    }
    end_record();
    return records;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_date_header(std::string_view cell) {
    std::string lower(trim(cell));
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return lower.empty() || lower == "date" || lower == "time" || lower == "timestamp" ||
           lower == "period" || lower == "week";
}

bool parse_number(std::string_view cell, double& value) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') {
        cell.remove_prefix(1);
    }
    if (cell.empty()) {
        return false;
    }
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    return ec == std::errc() && ptr == cell.data() + cell.size() && std::isfinite(value);
}

}  // namespace

ReturnsWindow parse_returns_csv_text(std::string_view text, bool prices, std::string_view source) {
    const std::vector<Record> records = split_records(text, source);
    if (records.empty()) {
        throw Error(ErrorCode::EmptyInput, std::string(source) + ": no header row");
    }
    const Record& header = records.front();
    const bool has_dates = header.size() > 1 && is_date_header(header.front());
    const std::size_t offset = has_dates ? 1 : 0;

    std::vector<std::string> labels;
    for (std::size_t j = offset; j < header.size(); ++j) {
        labels.emplace_back(trim(header[j]));
    }
    if (labels.empty()) {
        throw Error(ErrorCode::EmptyInput, std::string(source) + ": header names no assets");
    }
    if (records.size() < 2) {
        throw Error(ErrorCode::EmptyInput, std::string(source) + ": no data rows");
    }

    const auto rows = static_cast<Index>(records.size() - 1);
    const auto k = static_cast<Index>(labels.size());
    MatrixXd table(rows, k);
    std::vector<std::string> periods;
    for (Index i = 0; i < rows; ++i) {
        const Record& record = records[static_cast<std::size_t>(i) + 1];
        const std::size_t line = static_cast<std::size_t>(i) + 2;
        if (record.size() != header.size()) {
            malformed(source, "row " + std::to_string(line) + " has " + std::to_string(record.size()) +
                                  " fields, header has " + std::to_string(header.size()));
        }
        if (has_dates) {
            periods.emplace_back(trim(record.front()));
        }
        for (Index j = 0; j < k; ++j) {
            const std::size_t column = static_cast<std::size_t>(j) + offset;
            double value = 0.0;
            if (!parse_number(record[column], value)) {
                malformed(source, "row " + std::to_string(line) + ", column " +
                                      std::to_string(column + 1) + " ('" +
                                      labels[static_cast<std::size_t>(j)] +
                                      "'): not a finite number: '" + record[column] + "'");
            }
            table(i, j) = value;
        }
    }

    if (prices) {
        if (rows < 3) {
            throw Error(ErrorCode::EmptyInput, std::string(source) + ": need at least 3 price rows");
        }
        if ((table.array() <= 0.0).any()) {
            malformed(source, "prices must be strictly positive");
        }
        MatrixXd returns = (table.bottomRows(rows - 1).array() / table.topRows(rows - 1).array()) - 1.0;
        std::optional<std::vector<std::string>> stamps;
        if (has_dates) {
            stamps = std::vector<std::string>(periods.begin() + 1, periods.end());
        }
        return ReturnsWindow(std::move(returns), std::move(labels), std::move(stamps));
    }

    std::optional<std::vector<std::string>> stamps;
    if (has_dates) {
        stamps = std::move(periods);
    }
    return ReturnsWindow(std::move(table), std::move(labels), std::move(stamps));
}

ReturnsWindow parse_returns_csv(const std::filesystem::path& path, bool prices) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open input file '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorCode::IoError, "failed reading '" + path.string() + "'");
    }
    return parse_returns_csv_text(buffer.str(), prices, path.string());
}

}  // namespace bayesmv::cli
