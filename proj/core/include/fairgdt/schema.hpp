#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fairgdt {

enum class ColumnKind { Numerical, Categorical };

std::string_view to_string(ColumnKind kind);
ColumnKind column_kind_from_string(std::string_view text);

struct ColumnSpec {
    std::string name;
    ColumnKind kind = ColumnKind::Numerical;

    friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

/// Ordered column layout plus the sensitive-attribute and target
/// designations. Both designated columns must be categorical; whether they
/// are binary is checked against observed data at ingestion.
struct Schema {
    std::vector<ColumnSpec> columns;
    std::string sensitive;
    std::string target;

    std::size_t size() const { return columns.size(); }
    int index_of(std::string_view name) const;
    int sensitive_index() const { return index_of(sensitive); }
    int target_index() const { return index_of(target); }

    /// Throws SchemaError on duplicate names, unknown/identical
    /// sensitive/target columns, or non-categorical designations.
    void validate() const;

    static Schema from_json(const std::string& text);
    static Schema from_json_file(const std::filesystem::path& path);
    std::string to_json() const;

    friend bool operator==(const Schema&, const Schema&) = default;
};

}  // namespace fairgdt
