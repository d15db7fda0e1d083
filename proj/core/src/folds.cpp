#include "fairgdt/folds.hpp"

#include <algorithm>
#include <numeric>

#include "fairgdt/errors.hpp"
#include "fairgdt/rng.hpp"

namespace fairgdt {

std::vector<FoldSplit> make_folds(std::size_t n_rows, std::size_t n_folds, std::uint64_t seed) {
    if (n_folds < 2) throw InputError("make_folds: need at least 2 folds");
    if (n_rows < n_folds)
        throw InputError("make_folds: fewer rows (" + std::to_string(n_rows) + ") than folds (" +
                         std::to_string(n_folds) + ")");

    std::vector<std::size_t> order(n_rows);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    for (std::size_t i = n_rows - 1; i > 0; --i) {
        std::swap(order[i], order[rng.uniform_index(i + 1)]);
    }

    std::vector<FoldSplit> folds;
    folds.reserve(n_folds);
    const std::size_t base = n_rows / n_folds;
    const std::size_t extra = n_rows % n_folds;
    std::size_t start = 0;
    for (std::size_t f = 0; f < n_folds; ++f) {
        const std::size_t size = base + (f < extra ? 1 : 0);
        FoldSplit split;
        split.fold = static_cast<int>(f);
        split.test.assign(order.begin() + start, order.begin() + start + size);
        split.train.reserve(n_rows - size);
        split.train.insert(split.train.end(), order.begin(), order.begin() + start);
        split.train.insert(split.train.end(), order.begin() + start + size, order.end());
        std::sort(split.test.begin(), split.test.end());
        std::sort(split.train.begin(), split.train.end());
        folds.push_back(std::move(split));
        start += size;
    }
    return folds;
}

}  // namespace fairgdt
