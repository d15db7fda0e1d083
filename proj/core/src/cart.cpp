#include "fairgdt/cart.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include <json.hpp>

#include "fairgdt/errors.hpp"

namespace fairgdt {

namespace {

double gini(const std::vector<std::size_t>& counts, std::size_t n) {
    double s = 0.0;
    for (std::size_t c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(n);
        s += p * p;
    }
    return 1.0 - s;
}

double variance(double sum, double sumsq, std::size_t n) {
    const double mean = sum / static_cast<double>(n);
    return std::max(0.0, sumsq / static_cast<double>(n) - mean * mean);
}

// Midpoint that cannot collapse onto the upper neighbor; "value <= t" must
// reproduce the partition counted during the scan.
double split_threshold(double lo, double hi) {
    double t = lo + (hi - lo) / 2.0;
    if (!(t < hi)) t = lo;
    if (t < lo) t = lo;
    return t;
}

struct BestSplit {
    double decrease = -1.0;
    int pred = -1;  // index into predictor_columns
    double threshold = 0.0;
    std::vector<std::uint32_t> left_categories;
    bool categorical = false;

    bool found() const { return pred >= 0; }
};

class TreeFitter {
public:
    TreeFitter(const Table& table, int target_col, std::vector<int> pred_cols, TreeParams params)
        : t_(table), target_(target_col), preds_(std::move(pred_cols)), params_(params) {
        classification_ = t_.column(target_).kind == ColumnKind::Categorical;
        n_classes_ = classification_ ? t_.column(target_).dict.size() : 0;
    }

    CartTree fit(std::span<const std::size_t> rows) {
        tree_.target = t_.schema().columns[target_].name;
        tree_.target_column = target_;
        tree_.predictor_columns = preds_;
        for (int p : preds_) tree_.predictors.push_back(t_.schema().columns[p].name);
        tree_.classification = classification_;
        tree_.params = params_;

        std::vector<std::size_t> root(rows.begin(), rows.end());
        build(std::move(root), 0);
        return std::move(tree_);
    }

private:
    int build(std::vector<std::size_t>&& rows, int depth) {
        bool stop = params_.max_depth >= 0 && depth >= params_.max_depth;
        stop = stop || rows.size() < 2 * static_cast<std::size_t>(params_.min_samples_leaf);
        double parent_impurity = 0.0;
        if (!stop) {
            parent_impurity = node_impurity(rows);
            stop = parent_impurity <= 0.0;
        }

        BestSplit best;
        if (!stop) {
            best = search(rows, parent_impurity);
            stop = !best.found() || best.decrease < params_.min_impurity_decrease;
        }
        if (stop) return make_leaf(rows);

        std::vector<std::size_t> left, right;
        partition(rows, best, left, right);
        rows.clear();
        rows.shrink_to_fit();

        const int node = static_cast<int>(tree_.nodes.size());
        tree_.nodes.emplace_back();
        tree_.nodes[node].rule.column = preds_[best.pred];
        tree_.nodes[node].rule.categorical = best.categorical;
        tree_.nodes[node].rule.threshold = best.threshold;
        tree_.nodes[node].rule.left_categories = std::move(best.left_categories);

        const int l = build(std::move(left), depth + 1);
        const int r = build(std::move(right), depth + 1);
        tree_.nodes[node].left = l;
        tree_.nodes[node].right = r;
        return node;
    }

    int make_leaf(const std::vector<std::size_t>& rows) {
        LeafDistribution dist;
        dist.support = rows.size();
        if (classification_) {
            std::vector<std::size_t> counts(n_classes_, 0);
            for (std::size_t r : rows) ++counts[t_.cat_at(target_, r)];
            dist.probs.resize(n_classes_);
            for (std::size_t c = 0; c < n_classes_; ++c)
                dist.probs[c] = static_cast<double>(counts[c]) / static_cast<double>(rows.size());
        } else {
            dist.values.reserve(rows.size());
            for (std::size_t r : rows) dist.values.push_back(t_.num_at(target_, r));
        }
        const int leaf = static_cast<int>(tree_.leaves.size());
        tree_.leaves.push_back(std::move(dist));
        const int node = static_cast<int>(tree_.nodes.size());
        tree_.nodes.emplace_back();
        tree_.nodes[node].leaf = leaf;
        return node;
    }

    double node_impurity(const std::vector<std::size_t>& rows) {
        if (classification_) {
            std::vector<std::size_t> counts(n_classes_, 0);
            for (std::size_t r : rows) ++counts[t_.cat_at(target_, r)];
            std::size_t observed = 0;
            for (std::size_t c : counts) observed += c > 0 ? 1 : 0;
            if (observed <= 1) return 0.0;
            return gini(counts, rows.size());
        }
        double lo = t_.num_at(target_, rows[0]), hi = lo, sum = 0.0, sumsq = 0.0;
        for (std::size_t r : rows) {
            const double v = t_.num_at(target_, r);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            sum += v;
            sumsq += v * v;
        }
        if (lo == hi) return 0.0;
        return variance(sum, sumsq, rows.size());
    }

    BestSplit search(const std::vector<std::size_t>& rows, double parent_impurity) {
        BestSplit best;
        for (std::size_t p = 0; p < preds_.size(); ++p) {
            const Column& col = t_.column(preds_[p]);
            if (col.kind == ColumnKind::Numerical) {
                search_numeric(rows, p, parent_impurity, best);
            } else {
                search_categorical(rows, p, parent_impurity, best);
            }
        }
        return best;
    }

    void search_numeric(const std::vector<std::size_t>& rows, std::size_t p,
                        double parent_impurity, BestSplit& best) {
        const int col = preds_[p];
        const std::size_t n = rows.size();
        const std::size_t min_leaf = static_cast<std::size_t>(params_.min_samples_leaf);

        if (classification_) {
            std::vector<std::pair<double, std::uint32_t>> pairs;
            pairs.reserve(n);
            std::vector<std::size_t> total(n_classes_, 0);
            for (std::size_t r : rows) {
                pairs.emplace_back(t_.num_at(col, r), t_.cat_at(target_, r));
                ++total[t_.cat_at(target_, r)];
            }
            std::sort(pairs.begin(), pairs.end());
            std::vector<std::size_t> left(n_classes_, 0);
            std::vector<std::size_t> right = total;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                ++left[pairs[i].second];
                --right[pairs[i].second];
                if (pairs[i].first == pairs[i + 1].first) continue;
                const std::size_t nl = i + 1, nr = n - nl;
                if (nl < min_leaf || nr < min_leaf) continue;
                const double dec =
                    parent_impurity - (static_cast<double>(nl) * gini(left, nl) +
                                       static_cast<double>(nr) * gini(right, nr)) /
                                          static_cast<double>(n);
                if (dec > best.decrease) {
                    best.decrease = dec;
                    best.pred = static_cast<int>(p);
                    best.categorical = false;
                    best.threshold = split_threshold(pairs[i].first, pairs[i + 1].first);
                    best.left_categories.clear();
                }
            }
        } else {
            std::vector<std::pair<double, double>> pairs;
            pairs.reserve(n);
            double sum = 0.0, sumsq = 0.0;
            for (std::size_t r : rows) {
                const double y = t_.num_at(target_, r);
                pairs.emplace_back(t_.num_at(col, r), y);
                sum += y;
                sumsq += y * y;
            }
            std::sort(pairs.begin(), pairs.end());
            double lsum = 0.0, lsumsq = 0.0;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                lsum += pairs[i].second;
                lsumsq += pairs[i].second * pairs[i].second;
                if (pairs[i].first == pairs[i + 1].first) continue;
                const std::size_t nl = i + 1, nr = n - nl;
                if (nl < min_leaf || nr < min_leaf) continue;
                const double dec =
                    parent_impurity -
                    (static_cast<double>(nl) * variance(lsum, lsumsq, nl) +
                     static_cast<double>(nr) * variance(sum - lsum, sumsq - lsumsq, nr)) /
                        static_cast<double>(n);
                if (dec > best.decrease) {
                    best.decrease = dec;
                    best.pred = static_cast<int>(p);
                    best.categorical = false;
                    best.threshold = split_threshold(pairs[i].first, pairs[i + 1].first);
                    best.left_categories.clear();
                }
            }
        }
    }

    // Categories are ordered by a target statistic and scanned as if ordinal
    // (exact for binary classification and for variance reduction).
    void search_categorical(const std::vector<std::size_t>& rows, std::size_t p,
                            double parent_impurity, BestSplit& best) {
        const int col = preds_[p];
        const std::size_t k = t_.column(col).dict.size();
        const std::size_t n = rows.size();
        const std::size_t min_leaf = static_cast<std::size_t>(params_.min_samples_leaf);

        std::vector<std::size_t> cnt(k, 0);
        std::vector<std::size_t> cls;          // k * n_classes, classification only
        std::vector<double> sums, sumsqs;      // regression only
        std::vector<std::size_t> total_counts; // per class
        double tsum = 0.0, tsumsq = 0.0;

        if (classification_) {
            cls.assign(k * n_classes_, 0);
            total_counts.assign(n_classes_, 0);
            for (std::size_t r : rows) {
                const std::uint32_t c = t_.cat_at(col, r);
                const std::uint32_t y = t_.cat_at(target_, r);
                ++cnt[c];
                ++cls[c * n_classes_ + y];
                ++total_counts[y];
            }
        } else {
            sums.assign(k, 0.0);
            sumsqs.assign(k, 0.0);
            for (std::size_t r : rows) {
                const std::uint32_t c = t_.cat_at(col, r);
                const double y = t_.num_at(target_, r);
                ++cnt[c];
                sums[c] += y;
                sumsqs[c] += y * y;
                tsum += y;
                tsumsq += y * y;
            }
        }

        std::vector<std::uint32_t> observed;
        for (std::uint32_t c = 0; c < k; ++c)
            if (cnt[c] > 0) observed.push_back(c);
        if (observed.size() < 2) return;

        std::vector<double> stat(k, 0.0);
        if (classification_) {
            std::size_t majority = 0;
            for (std::size_t y = 1; y < n_classes_; ++y)
                if (total_counts[y] > total_counts[majority]) majority = y;
            for (std::uint32_t c : observed)
                stat[c] = static_cast<double>(cls[c * n_classes_ + majority]) /
                          static_cast<double>(cnt[c]);
        } else {
            for (std::uint32_t c : observed) stat[c] = sums[c] / static_cast<double>(cnt[c]);
        }
        std::sort(observed.begin(), observed.end(), [&](std::uint32_t a, std::uint32_t b) {
            if (stat[a] != stat[b]) return stat[a] < stat[b];
            return a < b;
        });

        if (classification_) {
            std::vector<std::size_t> left(n_classes_, 0);
            std::vector<std::size_t> right = total_counts;
            std::size_t nl = 0;
            for (std::size_t m = 0; m + 1 < observed.size(); ++m) {
                const std::uint32_t c = observed[m];
                nl += cnt[c];
                for (std::size_t y = 0; y < n_classes_; ++y) {
                    left[y] += cls[c * n_classes_ + y];
                    right[y] -= cls[c * n_classes_ + y];
                }
                const std::size_t nr = n - nl;
                if (nl < min_leaf || nr < min_leaf) continue;
                const double dec =
                    parent_impurity - (static_cast<double>(nl) * gini(left, nl) +
                                       static_cast<double>(nr) * gini(right, nr)) /
                                          static_cast<double>(n);
                if (dec > best.decrease) {
                    best.decrease = dec;
                    best.pred = static_cast<int>(p);
                    best.categorical = true;
                    best.threshold = 0.0;
                    best.left_categories.assign(observed.begin(), observed.begin() + m + 1);
                    std::sort(best.left_categories.begin(), best.left_categories.end());
                }
            }
        } else {
            double lsum = 0.0, lsumsq = 0.0;
            std::size_t nl = 0;
            for (std::size_t m = 0; m + 1 < observed.size(); ++m) {
                const std::uint32_t c = observed[m];
                nl += cnt[c];
                lsum += sums[c];
                lsumsq += sumsqs[c];
                const std::size_t nr = n - nl;
                if (nl < min_leaf || nr < min_leaf) continue;
                const double dec =
                    parent_impurity -
                    (static_cast<double>(nl) * variance(lsum, lsumsq, nl) +
                     static_cast<double>(nr) * variance(tsum - lsum, tsumsq - lsumsq, nr)) /
                        static_cast<double>(n);
                if (dec > best.decrease) {
                    best.decrease = dec;
                    best.pred = static_cast<int>(p);
                    best.categorical = true;
                    best.threshold = 0.0;
                    best.left_categories.assign(observed.begin(), observed.begin() + m + 1);
                    std::sort(best.left_categories.begin(), best.left_categories.end());
                }
            }
        }
    }

    void partition(const std::vector<std::size_t>& rows, const BestSplit& best,
                   std::vector<std::size_t>& left, std::vector<std::size_t>& right) const {
        const int col = preds_[best.pred];
        for (std::size_t r : rows) {
            bool go_left;
            if (best.categorical) {
                go_left = std::binary_search(best.left_categories.begin(),
                                             best.left_categories.end(), t_.cat_at(col, r));
            } else {
                go_left = t_.num_at(col, r) <= best.threshold;
            }
            (go_left ? left : right).push_back(r);
        }
    }

    const Table& t_;
    int target_;
    std::vector<int> preds_;
    TreeParams params_;
    bool classification_ = true;
    std::size_t n_classes_ = 0;
    CartTree tree_;
};

}  // namespace

int CartTree::depth() const {
    if (nodes.empty()) return 0;
    int max_depth = 0;
    std::vector<std::pair<int, int>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [n, d] = stack.back();
        stack.pop_back();
        if (nodes[n].is_leaf()) {
            max_depth = std::max(max_depth, d);
        } else {
            stack.emplace_back(nodes[n].left, d + 1);
            stack.emplace_back(nodes[n].right, d + 1);
        }
    }
    return max_depth;
}

CartTree fit_tree(const Table& train, const std::string& target,
                  const std::vector<std::string>& predictors, const TreeParams& params,
                  std::uint64_t seed) {
    std::vector<std::size_t> rows(train.n_rows());
    std::iota(rows.begin(), rows.end(), 0);
    return fit_tree_rows(train, rows, target, predictors, params, seed);
}

CartTree fit_tree_rows(const Table& train, std::span<const std::size_t> rows,
                       const std::string& target, const std::vector<std::string>& predictors,
                       const TreeParams& params, std::uint64_t seed) {
    (void)seed;  // fitting is fully deterministic
    if (predictors.empty()) throw InputError("fit_tree: empty predictor list");
    if (params.min_samples_leaf < 1) throw InputError("fit_tree: min_samples_leaf must be >= 1");
    if (rows.size() < 2 * static_cast<std::size_t>(params.min_samples_leaf))
        throw InputError("fit_tree: need at least 2*min_samples_leaf training rows");

    const int target_col = train.column_index(target);
    if (target_col < 0) throw SchemaError("fit_tree: no such target column '" + target + "'");
    std::vector<int> pred_cols;
    pred_cols.reserve(predictors.size());
    for (const std::string& name : predictors) {
        if (name == target) throw InputError("fit_tree: target cannot be its own predictor");
        const int c = train.column_index(name);
        if (c < 0) throw SchemaError("fit_tree: no such predictor column '" + name + "'");
        pred_cols.push_back(c);
    }

    TreeFitter fitter(train, target_col, std::move(pred_cols), params);
    return fitter.fit(rows);
}

int route(const CartTree& tree, const Table& table, std::size_t row) {
    return route_cells(
        tree, [&](int col) { return table.num_at(col, row); },
        [&](int col) { return table.cat_at(col, row); });
}

std::vector<std::uint32_t> sample_leaf_categories(const LeafDistribution& dist, std::size_t n,
                                                  Rng& rng) {
    if (!dist.is_categorical()) throw InternalError("sample_leaf_categories on a numerical leaf");
    std::vector<std::uint32_t> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        double acc = 0.0;
        std::uint32_t pick = 0;
        bool found = false;
        for (std::uint32_t c = 0; c < dist.probs.size(); ++c) {
            if (dist.probs[c] <= 0.0) continue;
            acc += dist.probs[c];
            pick = c;
            if (u < acc) {
                found = true;
                break;
            }
        }
        (void)found;  // rounding may leave u >= acc; the last positive class wins
        out[i] = pick;
    }
    return out;
}

std::vector<double> sample_leaf_values(const LeafDistribution& dist, std::size_t n, Rng& rng) {
    if (dist.is_categorical()) throw InternalError("sample_leaf_values on a categorical leaf");
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = dist.values[rng.uniform_index(dist.values.size())];
    return out;
}

void finalize_fairness_stats(CartTree& tree) {
    if (tree.fairness.size() != tree.leaves.size())
        throw InternalError("fairness stats size mismatch");
    tree.n_s0_total = 0;
    tree.n_s1_total = 0;
    for (const LeafFairnessStats& f : tree.fairness) {
        tree.n_s0_total += f.n_s0;
        tree.n_s1_total += f.n_s1;
    }
    tree.n_train = tree.n_s0_total + tree.n_s1_total;
    if (tree.n_s0_total == 0 || tree.n_s1_total == 0)
        throw GroupMissingError("a sensitive group has no training rows");

    for (std::size_t i = 0; i < tree.fairness.size(); ++i) {
        LeafFairnessStats& f = tree.fairness[i];
        const LeafDistribution& dist = tree.leaves[i];
        int majority = 0;
        for (std::size_t c = 1; c < dist.probs.size(); ++c) {
            if (dist.probs[c] > dist.probs[majority]) majority = static_cast<int>(c);
        }
        f.majority_label = majority;

        const double w = static_cast<double>(f.n_s0) / static_cast<double>(tree.n_s0_total) -
                         static_cast<double>(f.n_s1) / static_cast<double>(tree.n_s1_total);
        f.delta_disc = majority == 0 ? w : -w;

        const std::size_t n_y1 = f.n_y1();
        const std::size_t n_eq = majority == 1 ? n_y1 : f.support() - n_y1;
        const std::size_t n_neq = f.support() - n_eq;
        const std::size_t diff = n_eq >= n_neq ? n_eq - n_neq : n_neq - n_eq;
        f.delta_acc = static_cast<double>(diff) / static_cast<double>(tree.n_train);
    }
}

void compute_leaf_fairness(CartTree& tree, const Table& train, const std::string& s_col,
                           const std::string& y_col) {
    if (tree.target != y_col)
        throw InputError("compute_leaf_fairness: tree predicts '" + tree.target + "', not '" +
                         y_col + "'");
    if (!tree.classification) throw InputError("compute_leaf_fairness: target tree is numerical");
    const int s_idx = train.column_index(s_col);
    const int y_idx = train.column_index(y_col);
    if (s_idx < 0 || y_idx < 0) throw SchemaError("compute_leaf_fairness: unknown column");
    train.require_binary(static_cast<std::size_t>(s_idx));
    train.require_binary(static_cast<std::size_t>(y_idx));

    tree.fairness.assign(tree.leaves.size(), LeafFairnessStats{});
    for (std::size_t r = 0; r < train.n_rows(); ++r) {
        const int leaf = route(tree, train, r);
        LeafFairnessStats& f = tree.fairness[static_cast<std::size_t>(leaf)];
        const bool s1 = train.cat_at(s_idx, r) == 1;
        const bool y1 = train.cat_at(y_idx, r) == 1;
        if (s1) {
            ++f.n_s1;
            if (y1) ++f.n_y1_s1;
        } else {
            ++f.n_s0;
            if (y1) ++f.n_y1_s0;
        }
    }
    finalize_fairness_stats(tree);
}

double tree_disc(const CartTree& tree) {
    if (!tree.fairness_computed()) throw InternalError("tree_disc: fairness stats not computed");
    double disc = 0.0;
    for (const LeafFairnessStats& f : tree.fairness) {
        if (f.majority_label == 1) {
            disc += static_cast<double>(f.n_s0) / static_cast<double>(tree.n_s0_total) -
                    static_cast<double>(f.n_s1) / static_cast<double>(tree.n_s1_total);
        }
    }
    return disc;
}

std::string tree_to_json(const CartTree& tree) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const TreeNode& n : tree.nodes) {
        if (n.is_leaf()) {
            nodes.push_back({{"leaf", n.leaf}});
        } else {
            nlohmann::json jn{{"left", n.left},
                              {"right", n.right},
                              {"column", n.rule.column},
                              {"categorical", n.rule.categorical}};
            if (n.rule.categorical) jn["left_categories"] = n.rule.left_categories;
            else jn["threshold"] = n.rule.threshold;
            nodes.push_back(std::move(jn));
        }
    }
    nlohmann::json leaves = nlohmann::json::array();
    for (const LeafDistribution& l : tree.leaves) {
        nlohmann::json jl{{"support", l.support}};
        if (l.is_categorical()) jl["probs"] = l.probs;
        else jl["values"] = l.values;
        leaves.push_back(std::move(jl));
    }
    nlohmann::json j{{"format", 1},
                     {"target", tree.target},
                     {"target_column", tree.target_column},
                     {"classification", tree.classification},
                     {"predictors", tree.predictors},
                     {"predictor_columns", tree.predictor_columns},
                     {"params",
                      {{"max_depth", tree.params.max_depth},
                       {"min_samples_leaf", tree.params.min_samples_leaf},
                       {"min_impurity_decrease", tree.params.min_impurity_decrease}}},
                     {"nodes", nodes},
                     {"leaves", leaves}};
    if (tree.fairness_computed()) {
        nlohmann::json fair = nlohmann::json::array();
        for (const LeafFairnessStats& f : tree.fairness) {
            fair.push_back({{"n_s0", f.n_s0},
                            {"n_s1", f.n_s1},
                            {"n_y1_s0", f.n_y1_s0},
                            {"n_y1_s1", f.n_y1_s1}});
        }
        j["fairness"] = std::move(fair);
    }
    return j.dump(2);
}

CartTree tree_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid tree JSON: ") + e.what());
    }
    if (j.value("format", 0) != 1) throw InputError("unsupported tree format");
    CartTree tree;
    try {
        tree.target = j.at("target").get<std::string>();
        tree.target_column = j.at("target_column").get<int>();
        tree.classification = j.at("classification").get<bool>();
        tree.predictors = j.at("predictors").get<std::vector<std::string>>();
        tree.predictor_columns = j.at("predictor_columns").get<std::vector<int>>();
        const auto& params = j.at("params");
        tree.params.max_depth = params.at("max_depth").get<int>();
        tree.params.min_samples_leaf = params.at("min_samples_leaf").get<int>();
        tree.params.min_impurity_decrease = params.at("min_impurity_decrease").get<double>();
        for (const auto& jn : j.at("nodes")) {
            TreeNode n;
            if (jn.contains("leaf")) {
                n.leaf = jn.at("leaf").get<int>();
            } else {
                n.left = jn.at("left").get<int>();
                n.right = jn.at("right").get<int>();
                n.rule.column = jn.at("column").get<int>();
                n.rule.categorical = jn.at("categorical").get<bool>();
                if (n.rule.categorical)
                    n.rule.left_categories =
                        jn.at("left_categories").get<std::vector<std::uint32_t>>();
                else n.rule.threshold = jn.at("threshold").get<double>();
            }
            tree.nodes.push_back(std::move(n));
        }
        for (const auto& jl : j.at("leaves")) {
            LeafDistribution l;
            l.support = jl.at("support").get<std::size_t>();
            if (jl.contains("probs")) l.probs = jl.at("probs").get<std::vector<double>>();
            else l.values = jl.at("values").get<std::vector<double>>();
            tree.leaves.push_back(std::move(l));
        }
        if (j.contains("fairness")) {
            for (const auto& jf : j.at("fairness")) {
                LeafFairnessStats f;
                f.n_s0 = jf.at("n_s0").get<std::size_t>();
                f.n_s1 = jf.at("n_s1").get<std::size_t>();
                f.n_y1_s0 = jf.at("n_y1_s0").get<std::size_t>();
                f.n_y1_s1 = jf.at("n_y1_s1").get<std::size_t>();
                tree.fairness.push_back(f);
            }
            finalize_fairness_stats(tree);
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid tree JSON: ") + e.what());
    }
    return tree;
}

}  // namespace fairgdt
