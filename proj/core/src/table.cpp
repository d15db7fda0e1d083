#include "fairgdt/table.hpp"

#include <cmath>

#include "fairgdt/errors.hpp"
#include "fairgdt/text.hpp"

namespace fairgdt {

Table::Table(Schema schema, std::vector<Column> columns)
    : schema_(std::move(schema)), cols_(std::move(columns)) {
    schema_.validate();
    if (cols_.size() != schema_.size())
        throw InternalError("column count does not match schema");
    n_rows_ = cols_.empty() ? 0 : cols_[0].size();
    for (std::size_t i = 0; i < cols_.size(); ++i) {
        const Column& c = cols_[i];
        if (c.kind != schema_.columns[i].kind)
            throw InternalError("column kind mismatch for '" + schema_.columns[i].name + "'");
        if (c.size() != n_rows_)
            throw InternalError("ragged columns: '" + schema_.columns[i].name + "'");
        if (c.kind == ColumnKind::Numerical) {
            for (double v : c.num) {
                if (!std::isfinite(v))
                    throw InternalError("non-finite value in column '" + schema_.columns[i].name + "'");
            }
        } else {
            for (std::uint32_t id : c.cat) {
                if (id >= c.dict.size())
                    throw InternalError("category id out of dictionary range in column '" +
                                        schema_.columns[i].name + "'");
            }
        }
    }
}

const Column& Table::column(std::string_view name) const {
    int i = schema_.index_of(name);
    if (i < 0) throw SchemaError("no such column: '" + std::string(name) + "'");
    return cols_[static_cast<std::size_t>(i)];
}

std::string Table::cell_text(std::size_t col, std::size_t row) const {
    const Column& c = cols_[col];
    if (c.kind == ColumnKind::Numerical) return dtos(c.num[row]);
    return c.dict[c.cat[row]];
}

Table Table::select_rows(std::span<const std::size_t> rows) const {
    std::vector<Column> out;
    out.reserve(cols_.size());
    for (const Column& c : cols_) {
        Column sub;
        sub.kind = c.kind;
        sub.dict = c.dict;
        if (c.kind == ColumnKind::Numerical) {
            sub.num.reserve(rows.size());
            for (std::size_t r : rows) sub.num.push_back(c.num[r]);
        } else {
            sub.cat.reserve(rows.size());
            for (std::size_t r : rows) sub.cat.push_back(c.cat[r]);
        }
        out.push_back(std::move(sub));
    }
    return Table(schema_, std::move(out));
}

bool Table::same_cells(const Table& other) const {
    if (schema_ != other.schema_ || n_rows_ != other.n_rows_) return false;
    for (std::size_t i = 0; i < cols_.size(); ++i) {
        const Column& a = cols_[i];
        const Column& b = other.cols_[i];
        if (a.kind == ColumnKind::Numerical) {
            if (a.num != b.num) return false;
        } else {
            for (std::size_t r = 0; r < n_rows_; ++r) {
                if (a.dict[a.cat[r]] != b.dict[b.cat[r]]) return false;
            }
        }
    }
    return true;
}

std::vector<std::uint8_t> Table::binary_column(std::size_t col) const {
    require_binary(col);
    const Column& c = cols_[col];
    std::vector<std::uint8_t> out(n_rows_);
    for (std::size_t r = 0; r < n_rows_; ++r) out[r] = static_cast<std::uint8_t>(c.cat[r]);
    return out;
}

void Table::require_binary(std::size_t col) const {
    const Column& c = cols_[col];
    if (c.kind != ColumnKind::Categorical || c.dict.size() != 2)
        throw SchemaError("column '" + schema_.columns[col].name +
                          "' is not binary categorical (needs exactly two categories)");
}

}  // namespace fairgdt
