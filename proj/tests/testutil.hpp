#pragma once

// Shared fixtures and brute-force oracles for the test suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "fairgdt/cart.hpp"
#include "fairgdt/errors.hpp"
#include "fairgdt/rng.hpp"
#include "fairgdt/table.hpp"

namespace testutil {

using namespace fairgdt;

inline Column num_col(std::vector<double> values) {
    Column c;
    c.kind = ColumnKind::Numerical;
    c.num = std::move(values);
    return c;
}

/// Categorical column with an explicit dictionary, so category ids do not
/// depend on row order.
inline Column cat_col(const std::vector<std::string>& labels, std::vector<std::string> dict) {
    Column c;
    c.kind = ColumnKind::Categorical;
    c.dict = std::move(dict);
    c.cat.reserve(labels.size());
    for (const std::string& l : labels) {
        auto it = std::find(c.dict.begin(), c.dict.end(), l);
        if (it == c.dict.end()) throw InternalError("cat_col: label not in dictionary: " + l);
        c.cat.push_back(static_cast<std::uint32_t>(it - c.dict.begin()));
    }
    return c;
}

/// Categorical column with a first-observation dictionary.
inline Column cat_col(const std::vector<std::string>& labels) {
    std::vector<std::string> dict;
    for (const std::string& l : labels) {
        if (std::find(dict.begin(), dict.end(), l) == dict.end()) dict.push_back(l);
    }
    return cat_col(labels, std::move(dict));
}

inline Table make_table(std::vector<std::pair<std::string, Column>> cols, std::string sensitive,
                        std::string target) {
    Schema schema;
    std::vector<Column> data;
    for (auto& [name, col] : cols) {
        schema.columns.push_back({name, col.kind});
        data.push_back(std::move(col));
    }
    schema.sensitive = std::move(sensitive);
    schema.target = std::move(target);
    return Table(std::move(schema), std::move(data));
}

// ---------------------------------------------------------------------------
// datasets

/// Semi-synthetic dataset with an injected direct S->Y bias: group base
/// rates P(y=yes|g0)=0.6 vs P(y=yes|g1)=0.3 in expectation. x_loc and x_aux
/// carry the group signal, x_sig/x_grp carry group-independent utility
/// signal.
inline Table make_biased_table(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x_loc(n), x_aux(n), x_sig(n);
    std::vector<std::string> x_grp(n), s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool s1 = rng.bernoulli(0.5);
        x_loc[i] = rng.normal() + (s1 ? 1.4 : 0.0);
        x_aux[i] = rng.normal() + (s1 ? 0.8 : 0.0);
        x_sig[i] = rng.normal();
        const double u = rng.uniform01();
        x_grp[i] = x_sig[i] > 0.0 ? (u < 0.7 ? "hi1" : "hi2") : (u < 0.7 ? "lo1" : "lo2");
        double p = 0.6 - (s1 ? 0.3 : 0.0) + 0.25 * std::tanh(x_sig[i]);
        p = std::clamp(p, 0.02, 0.98);
        s[i] = s1 ? "g1" : "g0";
        y[i] = rng.bernoulli(p) ? "yes" : "no";
    }
    return make_table({{"x_loc", num_col(std::move(x_loc))},
                       {"x_aux", num_col(std::move(x_aux))},
                       {"x_sig", num_col(std::move(x_sig))},
                       {"x_grp", cat_col(x_grp, {"lo1", "lo2", "hi1", "hi2"})},
                       {"s", cat_col(s, {"g0", "g1"})},
                       {"y", cat_col(y, {"no", "yes"})}},
                      "s", "y");
}

/// Dataset where the category "c" never co-occurs with s=g1: the sensitive
/// tree isolates it in a pure leaf, so generated data must contain no
/// (g1, c) rows either.
inline Table make_ood_table(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::string> x_rel(n), s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        const std::string rel = u < 0.4 ? "a" : (u < 0.7 ? "b" : "c");
        double p_s1 = rel == "a" ? 0.8 : (rel == "b" ? 0.5 : 0.0);
        x_rel[i] = rel;
        s[i] = rng.bernoulli(p_s1) ? "g1" : "g0";
        y[i] = rng.bernoulli(0.5) ? "yes" : "no";
    }
    return make_table({{"x_rel", cat_col(x_rel, {"a", "b", "c"})},
                       {"s", cat_col(s, {"g0", "g1"})},
                       {"y", cat_col(y, {"no", "yes"})}},
                      "s", "y");
}

/// 4 distinct XOR rows x 25 copies; no single split separates the labels but
/// depth 2 does.
inline Table make_xor_table() {
    std::vector<std::string> a, b, y;
    for (int copy = 0; copy < 25; ++copy) {
        for (int av = 0; av < 2; ++av) {
            for (int bv = 0; bv < 2; ++bv) {
                a.push_back(av ? "1" : "0");
                b.push_back(bv ? "1" : "0");
                y.push_back((av ^ bv) ? "1" : "0");
            }
        }
    }
    return make_table({{"a", cat_col(a, {"0", "1"})},
                       {"b", cat_col(b, {"0", "1"})},
                       {"y", cat_col(y, {"0", "1"})}},
                      "a", "y");
}

/// b is an exact step function of a.
inline Table make_step_table(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> a(n), b(n);
    std::vector<std::string> s(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.uniform01() * 10.0;
        b[i] = a[i] <= 5.0 ? 1.0 : 9.0;
        s[i] = rng.bernoulli(0.5) ? "g1" : "g0";
        y[i] = rng.bernoulli(0.5) ? "yes" : "no";
    }
    return make_table({{"a", num_col(std::move(a))},
                       {"b", num_col(std::move(b))},
                       {"s", cat_col(s, {"g0", "g1"})},
                       {"y", cat_col(y, {"no", "yes"})}},
                      "s", "y");
}

// ---------------------------------------------------------------------------
// oracles

inline double gini_of(const std::vector<std::size_t>& counts, std::size_t n) {
    double s = 0.0;
    for (std::size_t c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(n);
        s += p * p;
    }
    return 1.0 - s;
}

inline double variance_of(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    return var / static_cast<double>(v.size());
}

/// Weighted impurity decrease of an explicit left/right row partition.
inline double partition_decrease(const Table& t, int target,
                                 const std::vector<std::size_t>& left,
                                 const std::vector<std::size_t>& right) {
    const std::size_t n = left.size() + right.size();
    const bool classification = t.column(target).kind == ColumnKind::Categorical;
    if (classification) {
        const std::size_t k = t.column(target).dict.size();
        std::vector<std::size_t> cl(k, 0), cr(k, 0), cp(k, 0);
        for (std::size_t r : left) ++cl[t.cat_at(target, r)], ++cp[t.cat_at(target, r)];
        for (std::size_t r : right) ++cr[t.cat_at(target, r)], ++cp[t.cat_at(target, r)];
        return gini_of(cp, n) -
               (static_cast<double>(left.size()) * gini_of(cl, left.size()) +
                static_cast<double>(right.size()) * gini_of(cr, right.size())) /
                   static_cast<double>(n);
    }
    std::vector<double> vl, vr, vp;
    for (std::size_t r : left) vl.push_back(t.num_at(target, r)), vp.push_back(t.num_at(target, r));
    for (std::size_t r : right) vr.push_back(t.num_at(target, r)), vp.push_back(t.num_at(target, r));
    return variance_of(vp) -
           (static_cast<double>(vl.size()) * variance_of(vl) +
            static_cast<double>(vr.size()) * variance_of(vr)) /
               static_cast<double>(n);
}

/// Exhaustive best split: every numerical midpoint and every proper subset
/// of every categorical predictor's observed categories. Returns -1 when no
/// candidate satisfies min_leaf.
inline double brute_force_best_decrease(const Table& t, const std::string& target,
                                        const std::vector<std::string>& predictors,
                                        int min_leaf) {
    const int target_col = t.column_index(target);
    double best = -1.0;
    std::vector<std::size_t> all(t.n_rows());
    std::iota(all.begin(), all.end(), 0);

    for (const std::string& pname : predictors) {
        const int col = t.column_index(pname);
        const Column& c = t.column(col);
        if (c.kind == ColumnKind::Numerical) {
            std::vector<double> vals = c.num;
            std::sort(vals.begin(), vals.end());
            vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
            for (std::size_t i = 0; i + 1 < vals.size(); ++i) {
                const double thr = vals[i] + (vals[i + 1] - vals[i]) / 2.0;
                std::vector<std::size_t> left, right;
                for (std::size_t r : all)
                    (t.num_at(col, r) <= thr ? left : right).push_back(r);
                if (left.size() < static_cast<std::size_t>(min_leaf) ||
                    right.size() < static_cast<std::size_t>(min_leaf))
                    continue;
                best = std::max(best, partition_decrease(t, target_col, left, right));
            }
        } else {
            std::vector<std::uint32_t> observed;
            for (std::uint32_t id = 0; id < c.dict.size(); ++id) {
                if (std::find(c.cat.begin(), c.cat.end(), id) != c.cat.end())
                    observed.push_back(id);
            }
            const std::size_t k = observed.size();
            if (k < 2) continue;
            for (std::uint32_t mask = 1; mask + 1 < (1u << k); ++mask) {
                std::vector<std::size_t> left, right;
                for (std::size_t r : all) {
                    const std::uint32_t id = t.cat_at(col, r);
                    bool in_left = false;
                    for (std::size_t bit = 0; bit < k; ++bit) {
                        if ((mask >> bit) & 1u) in_left = in_left || observed[bit] == id;
                    }
                    (in_left ? left : right).push_back(r);
                }
                if (left.size() < static_cast<std::size_t>(min_leaf) ||
                    right.size() < static_cast<std::size_t>(min_leaf))
                    continue;
                best = std::max(best, partition_decrease(t, target_col, left, right));
            }
        }
    }
    return best;
}

/// Impurity decrease achieved by a fitted root split.
inline double root_split_decrease(const CartTree& tree, const Table& t) {
    if (tree.nodes.empty() || tree.nodes[0].is_leaf()) return -1.0;
    const SplitRule& rule = tree.nodes[0].rule;
    std::vector<std::size_t> left, right;
    for (std::size_t r = 0; r < t.n_rows(); ++r) {
        bool go_left;
        if (rule.categorical) {
            go_left = std::binary_search(rule.left_categories.begin(), rule.left_categories.end(),
                                         t.cat_at(rule.column, r));
        } else {
            go_left = t.num_at(rule.column, r) <= rule.threshold;
        }
        (go_left ? left : right).push_back(r);
    }
    return partition_decrease(t, t.column_index(tree.target), left, right);
}

/// Fabricated classification tree with random but internally consistent leaf
/// fairness counts (used by the greedy-vs-exhaustive oracle).
inline CartTree fabricate_fair_tree(Rng& rng, std::size_t max_candidates = 12) {
    for (;;) {
        CartTree tree;
        tree.target = "y";
        tree.classification = true;
        const std::size_t n_leaves = 3 + rng.uniform_index(11);  // 3..13
        tree.fairness.resize(n_leaves);
        std::size_t tot_s0 = 0, tot_s1 = 0;
        for (std::size_t i = 0; i < n_leaves; ++i) {
            LeafFairnessStats& f = tree.fairness[i];
            do {
                f.n_s0 = rng.uniform_index(41);
                f.n_s1 = rng.uniform_index(41);
            } while (f.n_s0 + f.n_s1 == 0);
            f.n_y1_s0 = rng.uniform_index(f.n_s0 + 1);
            f.n_y1_s1 = rng.uniform_index(f.n_s1 + 1);
            tot_s0 += f.n_s0;
            tot_s1 += f.n_s1;

            LeafDistribution dist;
            dist.support = f.n_s0 + f.n_s1;
            const double p1 =
                static_cast<double>(f.n_y1_s0 + f.n_y1_s1) / static_cast<double>(dist.support);
            dist.probs = {1.0 - p1, p1};
            tree.leaves.push_back(std::move(dist));
        }
        if (tot_s0 == 0 || tot_s1 == 0) continue;

        // structurally valid right-comb of nodes (the resampler never routes)
        for (std::size_t j = 0; j + 1 < n_leaves; ++j) {
            TreeNode split;
            split.rule.column = 0;
            split.rule.threshold = static_cast<double>(j);
            tree.nodes.push_back(split);  // index 2j
            TreeNode leaf;
            leaf.leaf = static_cast<int>(j);
            tree.nodes.push_back(leaf);  // index 2j+1
        }
        TreeNode last;
        last.leaf = static_cast<int>(n_leaves - 1);
        tree.nodes.push_back(last);
        for (std::size_t j = 0; j + 1 < n_leaves; ++j) {
            tree.nodes[2 * j].left = static_cast<int>(2 * j + 1);
            tree.nodes[2 * j].right = static_cast<int>(2 * j + 2);
        }

        finalize_fairness_stats(tree);
        std::size_t candidates = 0;
        const double sign = tree_disc(tree) < 0.0 ? -1.0 : 1.0;
        for (const auto& f : tree.fairness) candidates += sign * f.delta_disc < 0.0 ? 1 : 0;
        if (candidates == 0 || candidates > max_candidates) continue;
        return tree;
    }
}

struct ExhaustiveSelection {
    bool feasible = false;
    double best_cost = 0.0;  // min total delta_acc among feasible subsets
};

/// Enumerates every subset of the candidate leaves.
inline ExhaustiveSelection exhaustive_select(const CartTree& tree, double thr_disc) {
    const double base = tree_disc(tree);
    const double sign = base < 0.0 ? -1.0 : 1.0;
    std::vector<std::size_t> cands;
    for (std::size_t i = 0; i < tree.fairness.size(); ++i) {
        if (sign * tree.fairness[i].delta_disc < 0.0) cands.push_back(i);
    }
    ExhaustiveSelection out;
    for (std::uint64_t mask = 0; mask < (1ull << cands.size()); ++mask) {
        double d = sign * base, cost = 0.0;
        for (std::size_t b = 0; b < cands.size(); ++b) {
            if ((mask >> b) & 1ull) {
                d += sign * tree.fairness[cands[b]].delta_disc;
                cost += tree.fairness[cands[b]].delta_acc;
            }
        }
        if (d <= thr_disc) {
            if (!out.feasible || cost < out.best_cost) {
                out.feasible = true;
                out.best_cost = cost;
            }
        }
    }
    return out;
}

/// Discrimination of hard tree predictions computed from raw routed rows
/// (independent of the per-leaf bookkeeping), with the labels of `flipped`
/// leaves inverted.
inline double direct_disc(const CartTree& tree, const Table& train,
                          const std::vector<int>& flipped = {}) {
    const int s_col = train.sensitive_index();
    std::size_t n0 = 0, n1 = 0, pos0 = 0, pos1 = 0;
    for (std::size_t r = 0; r < train.n_rows(); ++r) {
        const int leaf = route(tree, train, r);
        int label = tree.fairness[static_cast<std::size_t>(leaf)].majority_label;
        if (std::find(flipped.begin(), flipped.end(), leaf) != flipped.end()) label = 1 - label;
        if (train.cat_at(s_col, r) == 1) {
            ++n1;
            pos1 += label;
        } else {
            ++n0;
            pos0 += label;
        }
    }
    return static_cast<double>(pos0) / static_cast<double>(n0) -
           static_cast<double>(pos1) / static_cast<double>(n1);
}

}  // namespace testutil
