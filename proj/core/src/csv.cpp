#include "fairgdt/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "fairgdt/errors.hpp"
#include "fairgdt/text.hpp"

namespace fairgdt {

namespace {

struct RawField {
    std::string text;
    bool quoted = false;
};

struct RawCsv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // trimmed-if-unquoted field texts
    std::vector<std::size_t> file_rows;          // 1-based file row per data row
};

// RFC-4180 state machine. Quotes must immediately follow the separator;
// unquoted fields are whitespace-trimmed afterwards.
RawCsv parse_csv_text(const std::string& text) {
    std::vector<std::vector<RawField>> records;
    std::vector<RawField> record;
    RawField field;
    bool in_quotes = false;
    bool at_field_start = true;

    auto end_field = [&]() {
        record.push_back(std::move(field));
        field = RawField{};
        at_field_start = true;
    };
    auto end_record = [&]() {
        end_field();
        records.push_back(std::move(record));
        record.clear();
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        char ch = text[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.text.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.text.push_back(ch);
            }
            continue;
        }
        if (ch == '"' && at_field_start) {
            in_quotes = true;
            field.quoted = true;
            at_field_start = false;
        } else if (ch == ',') {
            end_field();
        } else if (ch == '\n') {
            if (!field.text.empty() && field.text.back() == '\r') field.text.pop_back();
            end_record();
        } else {
            field.text.push_back(ch);
            at_field_start = false;
        }
    }
    if (in_quotes) throw InputError("unterminated quoted field at end of CSV");
    if (!field.text.empty() || field.quoted || !record.empty()) end_record();

    RawCsv out;
    std::size_t file_row = 0;
    for (auto& rec : records) {
        ++file_row;
        std::vector<std::string> row;
        row.reserve(rec.size());
        bool all_empty = true;
        for (auto& f : rec) {
            std::string t = f.quoted ? std::move(f.text) : std::string(trim(f.text));
            if (!t.empty() || f.quoted) all_empty = false;
            row.push_back(std::move(t));
        }
        if (row.size() == 1 && all_empty) continue;  // stray blank line
        if (out.header.empty()) {
            out.header = std::move(row);
        } else {
            out.rows.push_back(std::move(row));
            out.file_rows.push_back(file_row);
        }
    }
    return out;
}

std::string format_numeric(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string csv_quote(std::string_view field) {
    bool needs = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::vector<std::vector<std::string>> read_csv_records(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open CSV file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    RawCsv raw = parse_csv_text(buf.str());
    std::vector<std::vector<std::string>> out;
    if (!raw.header.empty()) out.push_back(std::move(raw.header));
    for (auto& r : raw.rows) out.push_back(std::move(r));
    return out;
}

Table load_csv(const std::filesystem::path& path, const Schema& schema) {
    return load_csv(path, schema, CsvOptions{}).table;
}

LoadedCsv load_csv(const std::filesystem::path& path, const Schema& schema,
                   const CsvOptions& opts) {
    schema.validate();
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open CSV file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    if (trim(text).empty()) throw EmptyTableError("empty CSV file: " + path.string());

    RawCsv raw = parse_csv_text(text);
    if (raw.header.empty()) throw EmptyTableError("CSV has no header row: " + path.string());

    // map schema columns onto file columns
    std::unordered_map<std::string, std::size_t> header_pos;
    for (std::size_t i = 0; i < raw.header.size(); ++i) {
        if (!header_pos.emplace(raw.header[i], i).second)
            throw SchemaError("duplicate header column '" + raw.header[i] + "'");
    }
    std::vector<std::size_t> src(schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) {
        auto it = header_pos.find(schema.columns[i].name);
        if (it == header_pos.end())
            throw SchemaError("CSV is missing column '" + schema.columns[i].name + "'");
        src[i] = it->second;
    }
    if (header_pos.size() != schema.size()) {
        for (const auto& [name, _] : header_pos) {
            if (schema.index_of(name) < 0)
                throw SchemaError("CSV column '" + name + "' is not in the schema");
        }
    }

    std::vector<Column> cols(schema.size());
    std::vector<std::unordered_map<std::string, std::uint32_t>> lookup(schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) cols[i].kind = schema.columns[i].kind;

    std::size_t dropped = 0;
    for (std::size_t r = 0; r < raw.rows.size(); ++r) {
        const auto& row = raw.rows[r];
        const std::size_t file_row = raw.file_rows[r];
        if (row.size() != raw.header.size())
            throw ParseError("row has " + std::to_string(row.size()) + " fields, expected " +
                                 std::to_string(raw.header.size()),
                             file_row, 1);
        if (opts.drop_na) {
            bool has_missing = false;
            for (std::size_t i = 0; i < schema.size() && !has_missing; ++i)
                has_missing = row[src[i]].empty();
            if (has_missing) {
                ++dropped;
                continue;
            }
        }
        for (std::size_t i = 0; i < schema.size(); ++i) {
            const std::string& cell = row[src[i]];
            if (cell.empty())
                throw MissingValueError("missing value", file_row, src[i] + 1);
            if (cols[i].kind == ColumnKind::Numerical) {
                double v;
                if (!parse_double(cell, v))
                    throw ParseError("cannot parse '" + cell + "' as a number", file_row,
                                     src[i] + 1);
                cols[i].num.push_back(v);
            } else {
                auto [it, inserted] =
                    lookup[i].emplace(cell, static_cast<std::uint32_t>(cols[i].dict.size()));
                if (inserted) cols[i].dict.push_back(cell);
                cols[i].cat.push_back(it->second);
            }
        }
    }
    if (cols[0].size() == 0)
        throw EmptyTableError("CSV has no data rows" +
                              std::string(dropped ? " after dropping incomplete rows" : "") + ": " +
                              path.string());

    Table table(schema, std::move(cols));
    table.require_binary(static_cast<std::size_t>(table.sensitive_index()));
    table.require_binary(static_cast<std::size_t>(table.target_index()));
    return {std::move(table), dropped};
}

void write_csv(const Table& table, const std::filesystem::path& path) {
    if (table.n_rows() == 0) throw EmptyTableError("refusing to write a table with no rows");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());

    const Schema& schema = table.schema();
    for (std::size_t i = 0; i < schema.size(); ++i) {
        if (i) out << ',';
        out << csv_quote(schema.columns[i].name);
    }
    out << '\n';
    for (std::size_t r = 0; r < table.n_rows(); ++r) {
        for (std::size_t i = 0; i < schema.size(); ++i) {
            if (i) out << ',';
            const Column& c = table.column(i);
            if (c.kind == ColumnKind::Numerical) out << format_numeric(c.num[r]);
            else out << csv_quote(c.dict[c.cat[r]]);
        }
        out << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace fairgdt
