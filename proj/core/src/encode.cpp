#include "fairgdt/encode.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "fairgdt/errors.hpp"

namespace fairgdt {

std::size_t EncodeStats::width() const {
    std::size_t w = 0;
    for (const Col& c : cols) w += c.kind == ColumnKind::Numerical ? 1 : c.categories.size();
    return w;
}

std::pair<Matrix, EncodeStats> encode_for_distance(const Table& table,
                                                   const EncodeStats* reference) {
    EncodeStats stats;
    if (reference) {
        if (reference->cols.size() != table.n_cols())
            throw SchemaError("encoding reference does not match the table's column count");
        stats = *reference;
    } else {
        stats.cols.resize(table.n_cols());
        for (std::size_t i = 0; i < table.n_cols(); ++i) {
            const Column& c = table.column(i);
            stats.cols[i].kind = c.kind;
            if (c.kind == ColumnKind::Numerical) {
                auto [mn, mx] = std::minmax_element(c.num.begin(), c.num.end());
                stats.cols[i].min = *mn;
                stats.cols[i].max = *mx;
            } else {
                stats.cols[i].categories = c.dict;
            }
        }
    }

    Matrix m(table.n_rows(), stats.width());
    std::size_t offset = 0;
    for (std::size_t i = 0; i < table.n_cols(); ++i) {
        const Column& c = table.column(i);
        const EncodeStats::Col& sc = stats.cols[i];
        if (sc.kind != c.kind) throw SchemaError("encoding reference column kind mismatch");
        if (c.kind == ColumnKind::Numerical) {
            const double range = sc.max - sc.min;
            for (std::size_t r = 0; r < table.n_rows(); ++r) {
                m.at(r, offset) = range == 0.0 ? 0.5 : (c.num[r] - sc.min) / range;
            }
            offset += 1;
        } else {
            std::unordered_map<std::string, std::size_t> pos;
            pos.reserve(sc.categories.size());
            for (std::size_t k = 0; k < sc.categories.size(); ++k) pos.emplace(sc.categories[k], k);
            for (std::size_t r = 0; r < table.n_rows(); ++r) {
                auto it = pos.find(c.dict[c.cat[r]]);
                if (it != pos.end()) m.at(r, offset + it->second) = 1.0;
                // unseen category: all-zero block
            }
            offset += sc.categories.size();
        }
    }
    return {std::move(m), std::move(stats)};
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace fairgdt
