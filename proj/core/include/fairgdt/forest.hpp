#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fairgdt/cart.hpp"
#include "fairgdt/table.hpp"

namespace fairgdt {

struct ForestParams {
    int n_trees = 100;
    int max_depth = 12;
    int min_samples_leaf = 5;
};

/// Bagged forest of classification trees used for downstream evaluation and
/// the detection score: each tree sees a bootstrap resample and a random
/// ceil(sqrt(d)) feature subset.
struct Forest {
    std::string target;
    int target_column = -1;
    ForestParams params;
    std::uint64_t seed = 0;
    std::vector<CartTree> trees;
};

Forest fit_forest(const Table& train, const std::string& target,
                  const std::vector<std::string>& exclude, const ForestParams& params,
                  std::uint64_t seed);

/// Mean over trees of the leaf probability for category id 1.
std::vector<double> predict_proba(const Forest& forest, const Table& rows);

/// proba >= 0.5
std::vector<std::uint8_t> predict_label(const Forest& forest, const Table& rows);

}  // namespace fairgdt
