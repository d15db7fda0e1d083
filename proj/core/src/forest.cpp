#include "fairgdt/forest.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fairgdt/errors.hpp"
#include "fairgdt/parallel.hpp"

namespace fairgdt {

namespace {

// Pairwise summation keeps the mean independent of how per-tree work was
// scheduled.
double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

}  // namespace

Forest fit_forest(const Table& train, const std::string& target,
                  const std::vector<std::string>& exclude, const ForestParams& params,
                  std::uint64_t seed) {
    if (params.n_trees < 1) throw InputError("fit_forest: n_trees must be >= 1");
    const int target_col = train.column_index(target);
    if (target_col < 0) throw SchemaError("fit_forest: no such target column '" + target + "'");
    train.require_binary(static_cast<std::size_t>(target_col));
    for (const std::string& name : exclude) {
        if (name == target) throw InputError("fit_forest: cannot exclude the target column");
    }

    std::vector<std::string> features;
    for (const ColumnSpec& c : train.schema().columns) {
        if (c.name == target) continue;
        if (std::find(exclude.begin(), exclude.end(), c.name) != exclude.end()) continue;
        features.push_back(c.name);
    }
    if (features.empty()) throw InputError("fit_forest: no predictor columns left");

    Forest forest;
    forest.target = target;
    forest.target_column = target_col;
    forest.params = params;
    forest.seed = seed;
    forest.trees.resize(static_cast<std::size_t>(params.n_trees));

    const std::size_t n = train.n_rows();
    const std::size_t d = features.size();
    const std::size_t m = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(d))));

    TreeParams tree_params;
    tree_params.max_depth = params.max_depth;
    tree_params.min_samples_leaf = params.min_samples_leaf;
    tree_params.min_impurity_decrease = 0.0;

    parallel_for(forest.trees.size(), [&](std::size_t t) {
        Rng rng(Rng::derive(seed, t));
        // feature subset first, then the bootstrap, so both are reproducible
        std::vector<std::string> pool = features;
        std::vector<std::string> chosen;
        chosen.reserve(m);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t j = i + rng.uniform_index(d - i);
            std::swap(pool[i], pool[j]);
            chosen.push_back(pool[i]);
        }
        std::sort(chosen.begin(), chosen.end(), [&](const std::string& a, const std::string& b) {
            return train.column_index(a) < train.column_index(b);
        });
        std::vector<std::size_t> rows(n);
        for (std::size_t i = 0; i < n; ++i) rows[i] = rng.uniform_index(n);
        forest.trees[t] = fit_tree_rows(train, rows, target, chosen, tree_params);
    });
    return forest;
}

std::vector<double> predict_proba(const Forest& forest, const Table& rows) {
    if (forest.trees.empty()) throw InternalError("predict_proba: empty forest");
    std::vector<double> out(rows.n_rows());
    std::vector<double> votes(forest.trees.size());
    for (std::size_t r = 0; r < rows.n_rows(); ++r) {
        for (std::size_t t = 0; t < forest.trees.size(); ++t) {
            const CartTree& tree = forest.trees[t];
            const int leaf = route(tree, rows, r);
            votes[t] = tree.leaves[static_cast<std::size_t>(leaf)].probs[1];
        }
        out[r] = pairwise_sum(votes) / static_cast<double>(votes.size());
    }
    return out;
}

std::vector<std::uint8_t> predict_label(const Forest& forest, const Table& rows) {
    const std::vector<double> proba = predict_proba(forest, rows);
    std::vector<std::uint8_t> out(proba.size());
    for (std::size_t i = 0; i < proba.size(); ++i) out[i] = proba[i] >= 0.5 ? 1 : 0;
    return out;
}

}  // namespace fairgdt
