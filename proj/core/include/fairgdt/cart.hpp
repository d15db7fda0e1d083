#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fairgdt/rng.hpp"
#include "fairgdt/table.hpp"

namespace fairgdt {

struct TreeParams {
    int max_depth = -1;  // -1 = unbounded
    int min_samples_leaf = 20;
    double min_impurity_decrease = 0.0;

    friend bool operator==(const TreeParams&, const TreeParams&) = default;
};

/// Binary split on one predictor column. Numerical: go left iff value <=
/// threshold (threshold is the midpoint between two adjacent observed
/// values). Categorical: go left iff the category id is in left_categories;
/// ids unseen at fit time therefore route right.
struct SplitRule {
    int column = -1;
    bool categorical = false;
    double threshold = 0.0;
    std::vector<std::uint32_t> left_categories;  // sorted
};

/// Empirical output distribution of one leaf. Categorical targets store a
/// probability per category id; numerical targets keep the multiset of
/// training values routed here.
struct LeafDistribution {
    std::vector<double> probs;
    std::vector<double> values;
    std::size_t support = 0;

    bool is_categorical() const { return !probs.empty(); }
};

/// Per-leaf counts over the training data plus the effect on global
/// discrimination / training accuracy if this leaf's predicted label were
/// flipped.
struct LeafFairnessStats {
    std::size_t n_s0 = 0, n_s1 = 0;
    std::size_t n_y1_s0 = 0, n_y1_s1 = 0;
    int majority_label = 0;   // argmax of the leaf distribution, ties -> 0
    double delta_disc = 0.0;  // change in disc when flipping the label
    double delta_acc = 0.0;   // training-accuracy loss of the flip, >= 0

    std::size_t support() const { return n_s0 + n_s1; }
    std::size_t n_y1() const { return n_y1_s0 + n_y1_s1; }
};

struct TreeNode {
    SplitRule rule;
    int left = -1;
    int right = -1;
    int leaf = -1;

    bool is_leaf() const { return leaf >= 0; }
};

struct CartTree {
    std::string target;
    std::vector<std::string> predictors;
    int target_column = -1;
    std::vector<int> predictor_columns;
    bool classification = true;
    TreeParams params;

    std::vector<TreeNode> nodes;  // nodes[0] is the root
    std::vector<LeafDistribution> leaves;

    // populated by compute_leaf_fairness
    std::vector<LeafFairnessStats> fairness;
    std::size_t n_s0_total = 0, n_s1_total = 0, n_train = 0;

    std::size_t n_leaves() const { return leaves.size(); }
    bool fairness_computed() const { return !fairness.empty(); }
    int depth() const;
};

/// Greedy top-down CART: Gini impurity decrease for categorical targets,
/// variance reduction for numerical ones. Equal-gain ties resolve to the
/// earliest predictor and lowest threshold, so fitting is deterministic;
/// the seed is accepted for interface symmetry only.
CartTree fit_tree(const Table& train, const std::string& target,
                  const std::vector<std::string>& predictors, const TreeParams& params = {},
                  std::uint64_t seed = 0);

/// Same, restricted to the given rows (repeats allowed — bootstrap samples).
CartTree fit_tree_rows(const Table& train, std::span<const std::size_t> rows,
                       const std::string& target, const std::vector<std::string>& predictors,
                       const TreeParams& params = {}, std::uint64_t seed = 0);

/// Routes a row to its leaf through arbitrary cell accessors indexed by
/// schema column.
template <class NumAt, class CatAt>
int route_cells(const CartTree& tree, NumAt&& num_at, CatAt&& cat_at) {
    int n = 0;
    while (!tree.nodes[n].is_leaf()) {
        const SplitRule& r = tree.nodes[n].rule;
        bool left;
        if (r.categorical) {
            left = std::binary_search(r.left_categories.begin(), r.left_categories.end(),
                                      cat_at(r.column));
        } else {
            left = num_at(r.column) <= r.threshold;
        }
        n = left ? tree.nodes[n].left : tree.nodes[n].right;
    }
    return tree.nodes[n].leaf;
}

int route(const CartTree& tree, const Table& table, std::size_t row);

std::vector<std::uint32_t> sample_leaf_categories(const LeafDistribution& dist, std::size_t n,
                                                  Rng& rng);
std::vector<double> sample_leaf_values(const LeafDistribution& dist, std::size_t n, Rng& rng);

/// Fills per-leaf group/label counts and the flip deltas for a tree whose
/// target is y_col. Throws GroupMissingError when a sensitive group has no
/// training rows at all.
void compute_leaf_fairness(CartTree& tree, const Table& train, const std::string& s_col,
                           const std::string& y_col);

/// Recomputes majority labels and flip deltas from raw leaf counts already
/// present in tree.fairness (used after deserialization and by tests that
/// fabricate leaf stats).
void finalize_fairness_stats(CartTree& tree);

/// Hard-label discrimination P(pred=1|S=0) - P(pred=1|S=1) from leaf stats.
double tree_disc(const CartTree& tree);

std::string tree_to_json(const CartTree& tree);
CartTree tree_from_json(const std::string& text);

}  // namespace fairgdt
