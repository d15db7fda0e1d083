#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairgdt/cart.hpp"
#include "fairgdt/fairlift.hpp"
#include "fairgdt/table.hpp"

namespace fairgdt {

/// Generation order of the non-sensitive, non-target columns. The sensitive
/// column is always generated after all of them, the target last.
enum class OrderingStrategy { Original, AscCorrY, DescCorrY, AscCorrS, DescCorrS };

std::string_view to_string(OrderingStrategy s);
OrderingStrategy ordering_from_string(std::string_view text);

struct GeneratorParams {
    TreeParams tree;
    bool y_tree_include_s = false;  // add S to the target tree's predictors
};

/// Fitted autoregressive chain: a bootstrap store for the first column, one
/// tree per subsequent column (each fitted on the real values of the columns
/// preceding it), a tree for S on all X, and a tree for Y on all X carrying
/// leaf fairness stats.
struct GeneratorModel {
    Schema schema;
    std::vector<std::vector<std::string>> dicts;  // per schema column; empty for numerical
    std::vector<int> x_order;                     // schema indices, generation order
    int s_col = -1;
    int y_col = -1;
    Column bootstrap;  // training values of the first generated column
    std::vector<CartTree> x_trees;  // x_trees[i] predicts x_order[i + 1]
    CartTree s_tree;
    CartTree y_tree;
    OrderingStrategy ordering = OrderingStrategy::Original;
    GeneratorParams params;
    std::uint64_t seed = 0;
};

/// Full generation order (X columns per strategy, then S, then Y) as schema
/// indices. Correlation strategies rank X columns by Cramér's V against the
/// target (or sensitive) column; numerical columns are discretized into 10
/// equal-frequency bins first.
std::vector<int> resolve_order(const Table& train, OrderingStrategy strategy);

GeneratorModel fit_generator(const Table& train, OrderingStrategy strategy,
                             const GeneratorParams& params, std::uint64_t seed);

/// Draws n synthetic rows. Column 0 is bootstrapped from the training
/// values; every later column routes the partial rows through its tree,
/// groups them by leaf and samples each group from the leaf distribution.
/// When a plan is given the target column uses the plan's adjusted
/// probabilities on selected leaves; the other columns are unaffected and
/// bit-identical to a plan-less run with the same seed.
Table sample_synthetic(const GeneratorModel& model, std::size_t n,
                       const ResamplingPlan* plan, std::uint64_t seed);

/// Persists to a directory: model.json, one tree_<column>.json per fitted
/// tree, and bootstrap_<column>.csv for the first column.
void save_model(const GeneratorModel& model, const std::filesystem::path& dir);
GeneratorModel load_model(const std::filesystem::path& dir);

/// Cramér's V between two id sequences (0..ka-1, 0..kb-1); 0 when either
/// side is constant.
double cramers_v(std::span<const std::uint32_t> a, std::size_t ka,
                 std::span<const std::uint32_t> b, std::size_t kb);

}  // namespace fairgdt
