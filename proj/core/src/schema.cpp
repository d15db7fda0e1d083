#include "fairgdt/schema.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "fairgdt/errors.hpp"

namespace fairgdt {

std::string_view to_string(ColumnKind kind) {
    return kind == ColumnKind::Numerical ? "numerical" : "categorical";
}

ColumnKind column_kind_from_string(std::string_view text) {
    if (text == "numerical") return ColumnKind::Numerical;
    if (text == "categorical") return ColumnKind::Categorical;
    throw SchemaError("unknown column kind: '" + std::string(text) + "'");
}

int Schema::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

void Schema::validate() const {
    if (columns.empty()) throw SchemaError("schema has no columns");
    std::unordered_set<std::string> seen;
    for (const auto& c : columns) {
        if (c.name.empty()) throw SchemaError("schema contains an empty column name");
        if (!seen.insert(c.name).second) throw SchemaError("duplicate column name: '" + c.name + "'");
    }
    int s = index_of(sensitive);
    int t = index_of(target);
    if (s < 0) throw SchemaError("sensitive column '" + sensitive + "' not in schema");
    if (t < 0) throw SchemaError("target column '" + target + "' not in schema");
    if (s == t) throw SchemaError("sensitive and target must be different columns");
    if (columns[s].kind != ColumnKind::Categorical)
        throw SchemaError("sensitive column '" + sensitive + "' must be categorical");
    if (columns[t].kind != ColumnKind::Categorical)
        throw SchemaError("target column '" + target + "' must be categorical");
}

Schema Schema::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid schema JSON: ") + e.what());
    }
    Schema schema;
    try {
        for (const auto& col : j.at("columns")) {
            schema.columns.push_back(
                {col.at("name").get<std::string>(),
                 column_kind_from_string(col.at("kind").get<std::string>())});
        }
        schema.sensitive = j.at("sensitive").get<std::string>();
        schema.target = j.at("target").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("invalid schema JSON: ") + e.what());
    }
    schema.validate();
    return schema;
}

Schema Schema::from_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open schema file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_json(buf.str());
}

std::string Schema::to_json() const {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& c : columns) {
        cols.push_back({{"name", c.name}, {"kind", std::string(to_string(c.kind))}});
    }
    nlohmann::json j{{"columns", cols}, {"sensitive", sensitive}, {"target", target}};
    return j.dump(2);
}

}  // namespace fairgdt
