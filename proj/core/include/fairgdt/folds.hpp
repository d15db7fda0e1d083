#pragma once

#include <cstdint>
#include <vector>

namespace fairgdt {

/// One cross-validation split; train and test are sorted row indices that
/// partition [0, n_rows).
struct FoldSplit {
    int fold = 0;
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

/// Seeded random partition into n_folds test sets of near-equal size
/// (the first n_rows % n_folds folds get one extra test row).
std::vector<FoldSplit> make_folds(std::size_t n_rows, std::size_t n_folds, std::uint64_t seed);

}  // namespace fairgdt
