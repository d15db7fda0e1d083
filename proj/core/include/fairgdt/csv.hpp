#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fairgdt/table.hpp"

namespace fairgdt {

struct CsvOptions {
    /// Drop rows containing empty cells instead of failing. The number of
    /// dropped rows is reported in LoadedCsv.
    bool drop_na = false;
};

struct LoadedCsv {
    Table table;
    std::size_t rows_dropped = 0;
};

/// RFC-4180 reader. A header row is required; columns may appear in any
/// order and are reordered to schema order. Unquoted fields are
/// whitespace-trimmed; empty cells count as missing values. The sensitive
/// and target columns must have exactly two observed categories.
Table load_csv(const std::filesystem::path& path, const Schema& schema);
LoadedCsv load_csv(const std::filesystem::path& path, const Schema& schema, const CsvOptions& opts);

/// Writes schema-ordered columns; numerical cells use a 17-significant-digit
/// representation so a reload reproduces them bit-exactly.
void write_csv(const Table& table, const std::filesystem::path& path);

/// RFC-4180 quoting for a single field (quotes only when needed).
std::string csv_quote(std::string_view field);

/// Raw record reader (header row first) for auxiliary files that do not go
/// through a Schema.
std::vector<std::vector<std::string>> read_csv_records(const std::filesystem::path& path);

}  // namespace fairgdt
