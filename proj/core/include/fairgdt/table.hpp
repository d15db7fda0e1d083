#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fairgdt/schema.hpp"

namespace fairgdt {

/// One column of data. Numerical columns use `num`; categorical columns use
/// `cat` (ids into `dict`, assigned in first-observation order).
struct Column {
    ColumnKind kind = ColumnKind::Numerical;
    std::vector<double> num;
    std::vector<std::uint32_t> cat;
    std::vector<std::string> dict;

    std::size_t size() const { return kind == ColumnKind::Numerical ? num.size() : cat.size(); }
};

/// Immutable columnar dataset conforming to a Schema. Safe to share across
/// threads once constructed.
class Table {
public:
    Table(Schema schema, std::vector<Column> columns);

    const Schema& schema() const { return schema_; }
    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return cols_.size(); }

    const Column& column(std::size_t i) const { return cols_[i]; }
    const Column& column(std::string_view name) const;
    int column_index(std::string_view name) const { return schema_.index_of(name); }
    int sensitive_index() const { return schema_.sensitive_index(); }
    int target_index() const { return schema_.target_index(); }

    double num_at(std::size_t col, std::size_t row) const { return cols_[col].num[row]; }
    std::uint32_t cat_at(std::size_t col, std::size_t row) const { return cols_[col].cat[row]; }
    const std::string& label_at(std::size_t col, std::size_t row) const {
        return cols_[col].dict[cols_[col].cat[row]];
    }
    std::string cell_text(std::size_t col, std::size_t row) const;

    Table select_rows(std::span<const std::size_t> rows) const;

    /// Cell-level equality: numerical cells bitwise, categorical cells by
    /// label string (dictionary order is allowed to differ).
    bool same_cells(const Table& other) const;

    /// Values of a binary categorical column as 0/1 ids.
    std::vector<std::uint8_t> binary_column(std::size_t col) const;

    /// Throws SchemaError unless the column is categorical with a two-entry
    /// dictionary.
    void require_binary(std::size_t col) const;

private:
    Schema schema_;
    std::vector<Column> cols_;
    std::size_t n_rows_ = 0;
};

}  // namespace fairgdt
