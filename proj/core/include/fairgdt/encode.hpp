#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fairgdt/table.hpp"

namespace fairgdt {

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
    std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
};

/// Per-column statistics of the reference table used to put other tables in
/// the same frame: min/max for numerical columns, the dictionary for
/// categorical columns.
struct EncodeStats {
    struct Col {
        ColumnKind kind = ColumnKind::Numerical;
        double min = 0.0;
        double max = 0.0;
        std::vector<std::string> categories;
    };
    std::vector<Col> cols;

    std::size_t width() const;
};

/// Mixed-type embedding for distance computations: numerical columns are
/// min-max scaled to [0,1], categorical columns one-hot expanded. With a
/// reference, the table is encoded in the reference frame; categories unseen
/// there map to the all-zero block, and a constant reference column encodes
/// as 0.5 everywhere.
std::pair<Matrix, EncodeStats> encode_for_distance(const Table& table,
                                                   const EncodeStats* reference = nullptr);

double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace fairgdt
