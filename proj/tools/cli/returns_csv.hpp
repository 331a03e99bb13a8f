#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "bayesmv/moments.hpp"

namespace bayesmv::cli {

/// Reads a returns table: a header row of asset labels, then one row per
/// period, oldest first. A leading date column is recognized when the first
/// header cell is empty or one of date/time/timestamp/period/week (any case);
/// its values are kept as opaque labels. Numbers use '.' as the decimal
/// separator regardless of locale.
///
/// With `prices` set, the table holds prices and is converted to simple
/// returns p_t / p_{t−1} − 1 (one fewer row).
ReturnsWindow parse_returns_csv(const std::filesystem::path& path, bool prices = false);

/// Same as above for in-memory text; `source` is only used in diagnostics.
ReturnsWindow parse_returns_csv_text(std::string_view text, bool prices = false,
                                     std::string_view source = "<input>");

}  // namespace bayesmv::cli
