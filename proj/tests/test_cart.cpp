#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fairgdt/cart.hpp"
#include "fairgdt/errors.hpp"
#include "testutil.hpp"

using namespace fairgdt;
using namespace testutil;

namespace {

TreeParams leafy(int min_leaf, int max_depth = -1) {
    TreeParams p;
    p.min_samples_leaf = min_leaf;
    p.max_depth = max_depth;
    return p;
}

double train_accuracy(const CartTree& tree, const Table& t) {
    const int target = t.column_index(tree.target);
    std::size_t hits = 0;
    for (std::size_t r = 0; r < t.n_rows(); ++r) {
        const LeafDistribution& d = tree.leaves[route(tree, t, r)];
        std::size_t best = 0;
        for (std::size_t c = 1; c < d.probs.size(); ++c)
            if (d.probs[c] > d.probs[best]) best = c;
        hits += best == t.cat_at(target, r) ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(t.n_rows());
}

}  // namespace

TEST_CASE("perfectly separable binary predictor gives a depth-1 pure tree") {
    std::vector<std::string> a, y;
    for (int i = 0; i < 20; ++i) {
        a.push_back(i % 2 ? "u" : "v");
        y.push_back(i % 2 ? "pos" : "neg");
    }
    const Table t = make_table({{"a", cat_col(a, {"u", "v"})},
                                {"s", cat_col(a, {"u", "v"})},
                                {"y", cat_col(y, {"neg", "pos"})}},
                               "s", "y");
    const CartTree tree = fit_tree(t, "y", {"a"}, leafy(1));
    CHECK(tree.depth() == 1);
    REQUIRE(tree.n_leaves() == 2);
    for (const auto& leaf : tree.leaves) {
        CHECK((leaf.probs[0] == 1.0 || leaf.probs[1] == 1.0));
    }
    CHECK(train_accuracy(tree, t) == 1.0);
}

TEST_CASE("constant target collapses to a single certain leaf") {
    std::vector<std::string> y(30, "only");
    std::vector<double> x;
    for (int i = 0; i < 30; ++i) x.push_back(i);
    const Table t = make_table({{"x", num_col(x)},
                                {"s", cat_col(std::vector<std::string>(30, "a"), {"a", "b"})},
                                {"y", cat_col(y, {"only", "other"})}},
                               "s", "y");
    const CartTree tree = fit_tree(t, "y", {"x"}, leafy(1));
    REQUIRE(tree.n_leaves() == 1);
    CHECK(tree.leaves[0].probs[0] == 1.0);
    CHECK(tree.leaves[0].probs[1] == 0.0);
}

TEST_CASE("XOR needs depth 2: no depth-1 split separates, depth 2 does") {
    const Table t = make_xor_table();
    // brute force confirms every single split has zero gain
    CHECK(brute_force_best_decrease(t, "y", {"a", "b"}, 1) == doctest::Approx(0.0).epsilon(1e-15));
    const CartTree tree = fit_tree(t, "y", {"a", "b"}, leafy(1, 2));
    CHECK(tree.depth() == 2);
    REQUIRE(tree.n_leaves() == 4);
    for (const auto& leaf : tree.leaves) CHECK((leaf.probs[0] == 1.0 || leaf.probs[1] == 1.0));
    CHECK(train_accuracy(tree, t) == 1.0);
}

TEST_CASE("routing conventions") {
    std::vector<double> age;
    std::vector<std::string> y;
    for (int i = 0; i < 40; ++i) {
        age.push_back(i < 20 ? 20.0 + i * 0.5 : 31.0 + (i - 20));
        y.push_back(i < 20 ? "young" : "old");
    }
    const Table t = make_table({{"age", num_col(age)},
                                {"s", cat_col(std::vector<std::string>(40, "a"), {"a", "b"})},
                                {"y", cat_col(y, {"young", "old"})}},
                               "s", "y");
    const CartTree tree = fit_tree(t, "y", {"age"}, leafy(1, 1));
    REQUIRE(!tree.nodes[0].is_leaf());
    const double thr = tree.nodes[0].rule.threshold;
    CHECK(thr == doctest::Approx(30.25));  // midpoint of 29.5 and 31

    const auto leaf_for_age = [&](double a) {
        return route_cells(
            tree, [&](int) { return a; }, [&](int) { return std::uint32_t{0}; });
    };
    const int left_leaf = tree.nodes[tree.nodes[0].left].leaf;
    const int right_leaf = tree.nodes[tree.nodes[0].right].leaf;
    CHECK(leaf_for_age(25.0) == left_leaf);
    CHECK(leaf_for_age(thr) == left_leaf);  // boundary goes left
    CHECK(leaf_for_age(35.0) == right_leaf);

    SUBCASE("unseen category routes right at a categorical split") {
        CartTree cat_tree;
        cat_tree.target = "y";
        cat_tree.classification = true;
        TreeNode split;
        split.rule.column = 0;
        split.rule.categorical = true;
        split.rule.left_categories = {0, 2};
        split.left = 1;
        split.right = 2;
        cat_tree.nodes = {split, TreeNode{}, TreeNode{}};
        cat_tree.nodes[1].leaf = 0;
        cat_tree.nodes[2].leaf = 1;
        cat_tree.leaves.resize(2);
        const auto leaf_for = [&](std::uint32_t c) {
            return route_cells(
                cat_tree, [&](int) { return 0.0; }, [&](int) { return c; });
        };
        CHECK(leaf_for(0) == 0);
        CHECK(leaf_for(2) == 0);
        CHECK(leaf_for(1) == 1);
        CHECK(leaf_for(77) == 1);  // unseen id
    }
}

TEST_CASE("sample_leaf draws") {
    SUBCASE("degenerate distribution repeats the single category") {
        LeafDistribution d;
        d.probs = {0.0, 1.0};
        d.support = 5;
        Rng rng(1);
        const auto draws = sample_leaf_categories(d, 5, rng);
        for (auto v : draws) CHECK(v == 1);
    }
    SUBCASE("empirical frequency matches the stored probability") {
        LeafDistribution d;
        d.probs = {0.2, 0.8};
        d.support = 10;
        Rng rng(42);
        const auto draws = sample_leaf_categories(d, 1000000, rng);
        std::size_t ones = 0;
        for (auto v : draws) ones += v;
        const double freq = static_cast<double>(ones) / 1e6;
        CHECK(freq == doctest::Approx(0.8).epsilon(0.0025));
    }
    SUBCASE("numerical leaf resamples its value multiset") {
        LeafDistribution d;
        d.values = {3.0, 7.0};
        d.support = 2;
        Rng rng(7);
        const auto draws = sample_leaf_values(d, 10000, rng);
        double mean = 0.0;
        for (double v : draws) {
            CHECK((v == 3.0 || v == 7.0));
            mean += v;
        }
        mean /= 1e4;
        CHECK(mean == doctest::Approx(5.0).epsilon(0.02));
    }
}

TEST_CASE("leaf fairness arithmetic from raw counts") {
    CartTree tree;
    tree.target = "y";
    tree.classification = true;
    tree.leaves.resize(3);
    tree.fairness.resize(3);

    // leaf 0: n(S=0)=10, n(S=1)=0, predicts 1
    tree.leaves[0].probs = {0.0, 1.0};
    tree.leaves[0].support = 10;
    tree.fairness[0] = {10, 0, 10, 0, 0, 0, 0};
    // leaf 1: pure, support 20, predicts 1
    tree.leaves[1].probs = {0.0, 1.0};
    tree.leaves[1].support = 20;
    tree.fairness[1] = {10, 10, 10, 10, 0, 0, 0};
    // filler so totals are n(S=0)=100, n(S=1)=100 and overall N=200
    tree.leaves[2].probs = {1.0, 0.0};
    tree.leaves[2].support = 170;
    tree.fairness[2] = {80, 90, 0, 0, 0, 0, 0};

    finalize_fairness_stats(tree);
    CHECK(tree.n_train == 200);
    CHECK(tree.fairness[0].majority_label == 1);
    // flipping 1 -> 0 contributes -(10/100 - 0/100) = -0.10
    CHECK(tree.fairness[0].delta_disc == doctest::Approx(-0.10).epsilon(1e-12));
    // pure leaf of support 20 in a 200-row training set
    CHECK(tree.fairness[1].delta_acc == doctest::Approx(0.10).epsilon(1e-12));
}

TEST_CASE("tied leaf predicts label 0 and a balanced leaf has zero delta_acc") {
    CartTree tree;
    tree.target = "y";
    tree.classification = true;
    tree.leaves.resize(2);
    tree.fairness.resize(2);
    tree.leaves[0].probs = {0.5, 0.5};
    tree.leaves[0].support = 20;
    tree.fairness[0] = {10, 10, 5, 5, 0, 0, 0};
    tree.leaves[1].probs = {1.0, 0.0};
    tree.leaves[1].support = 20;
    tree.fairness[1] = {10, 10, 0, 0, 0, 0, 0};
    finalize_fairness_stats(tree);
    CHECK(tree.fairness[0].majority_label == 0);
    CHECK(tree.fairness[0].delta_acc == 0.0);
}

TEST_CASE("computed fairness stats agree with direct predictions") {
    for (std::uint64_t seed : {11ull, 12ull, 13ull}) {
        const Table t = make_biased_table(600, seed);
        CartTree tree = fit_tree(t, "y", {"x_loc", "x_sig", "x_grp"}, leafy(20));
        compute_leaf_fairness(tree, t, "s", "y");

        std::size_t support_sum = 0;
        for (const auto& f : tree.fairness) support_sum += f.support();
        CHECK(support_sum == t.n_rows());

        CHECK(tree_disc(tree) == doctest::Approx(direct_disc(tree, t)).epsilon(1e-12));
    }
}

TEST_CASE("missing sensitive group is an error") {
    const Table t = make_table(
        {{"x", num_col({1, 2, 3, 4, 5, 6, 7, 8})},
         {"s", cat_col(std::vector<std::string>(8, "g0"), {"g0", "g1"})},
         {"y", cat_col({"a", "b", "a", "b", "a", "b", "a", "b"}, {"a", "b"})}},
        "s", "y");
    CartTree tree = fit_tree(t, "y", {"x"}, leafy(1));
    CHECK_THROWS_AS(compute_leaf_fairness(tree, t, "s", "y"), GroupMissingError);
}

TEST_CASE("fit preconditions") {
    const Table t = make_biased_table(100, 5);
    CHECK_THROWS_AS(fit_tree(t, "y", {}, leafy(1)), InputError);
    CHECK_THROWS_AS(fit_tree(t, "y", {"y"}, leafy(1)), InputError);
    CHECK_THROWS_AS(fit_tree(t, "y", {"nope"}, leafy(1)), SchemaError);
    CHECK_THROWS_AS(fit_tree(t, "y", {"x_loc"}, leafy(60)), InputError);
}

TEST_CASE("distribution normalization and support partition on fitted trees") {
    Rng rng(21);
    for (int it = 0; it < 20; ++it) {
        const Table t = make_biased_table(150 + rng.uniform_index(150), rng.next());
        const CartTree tree =
            fit_tree(t, "y", {"x_loc", "x_sig", "x_grp"}, leafy(5 + (int)rng.uniform_index(15)));
        std::size_t support = 0;
        for (const auto& leaf : tree.leaves) {
            support += leaf.support;
            double sum = 0.0;
            for (double p : leaf.probs) sum += p;
            REQUIRE(sum == doctest::Approx(1.0).epsilon(1e-12));
        }
        REQUIRE(support == t.n_rows());
        std::vector<std::size_t> routed(tree.n_leaves(), 0);
        for (std::size_t r = 0; r < t.n_rows(); ++r) ++routed[route(tree, t, r)];
        for (std::size_t l = 0; l < tree.n_leaves(); ++l) REQUIRE(routed[l] == tree.leaves[l].support);
    }
}

TEST_CASE("root split matches the exhaustive oracle on small instances") {
    Rng rng(31);
    int checked = 0;
    for (int it = 0; it < 120; ++it) {
        // small random tables: <= 50 rows, <= 3 predictors, binary target
        const std::size_t n = 20 + rng.uniform_index(31);
        std::vector<double> xnum(n);
        std::vector<std::string> xcat1(n), xcat2(n), y(n), s(n);
        const char* cats1[] = {"a", "b", "c"};
        const char* cats2[] = {"u", "v", "w", "z"};
        for (std::size_t i = 0; i < n; ++i) {
            xnum[i] = static_cast<double>(rng.uniform_index(8));
            xcat1[i] = cats1[rng.uniform_index(3)];
            xcat2[i] = cats2[rng.uniform_index(4)];
            y[i] = rng.bernoulli(0.4 + 0.2 * (xnum[i] > 3) + (xcat1[i] == "a" ? 0.2 : 0.0)) ? "t1"
                                                                                            : "t0";
            s[i] = rng.bernoulli(0.5) ? "g1" : "g0";
        }
        const Table t = make_table({{"xnum", num_col(xnum)},
                                    {"xcat1", cat_col(xcat1, {"a", "b", "c"})},
                                    {"xcat2", cat_col(xcat2, {"u", "v", "w", "z"})},
                                    {"s", cat_col(s, {"g0", "g1"})},
                                    {"y", cat_col(y, {"t0", "t1"})}},
                                   "s", "y");
        const int min_leaf = 1 + static_cast<int>(rng.uniform_index(5));
        const std::vector<std::string> preds{"xnum", "xcat1", "xcat2"};
        const double oracle = brute_force_best_decrease(t, "y", preds, min_leaf);
        const CartTree tree = fit_tree(t, "y", preds, leafy(min_leaf, 1));
        if (tree.nodes[0].is_leaf()) {
            // only legitimate when no candidate split exists or the node is pure
            REQUIRE(oracle <= 0.0);
        } else {
            REQUIRE(root_split_decrease(tree, t) == doctest::Approx(oracle).epsilon(1e-10));
            ++checked;
        }
    }
    CHECK(checked > 80);

    SUBCASE("numerical target variant") {
        Rng r2(32);
        for (int it = 0; it < 60; ++it) {
            const std::size_t n = 20 + r2.uniform_index(31);
            std::vector<double> x(n), yv(n);
            std::vector<std::string> c(n), s(n), dummy(n);
            const char* cats[] = {"a", "b", "c", "d"};
            for (std::size_t i = 0; i < n; ++i) {
                x[i] = static_cast<double>(r2.uniform_index(6));
                c[i] = cats[r2.uniform_index(4)];
                yv[i] = x[i] * 0.5 + (c[i] == "a" ? 2.0 : 0.0) + r2.normal();
                s[i] = r2.bernoulli(0.5) ? "g1" : "g0";
                dummy[i] = r2.bernoulli(0.5) ? "p" : "q";
            }
            const Table t = make_table({{"x", num_col(x)},
                                        {"c", cat_col(c, {"a", "b", "c", "d"})},
                                        {"target", num_col(yv)},
                                        {"s", cat_col(s, {"g0", "g1"})},
                                        {"flag", cat_col(dummy, {"p", "q"})}},
                                       "s", "flag");
            const double oracle = brute_force_best_decrease(t, "target", {"x", "c"}, 2);
            const CartTree tree = fit_tree(t, "target", {"x", "c"}, leafy(2, 1));
            if (!tree.nodes[0].is_leaf()) {
                REQUIRE(root_split_decrease(tree, t) == doctest::Approx(oracle).epsilon(1e-10));
            } else {
                REQUIRE(oracle <= 0.0);
            }
        }
    }
}

TEST_CASE("fitting is deterministic and trees serialize losslessly") {
    const Table t = make_biased_table(400, 77);
    const CartTree a = fit_tree(t, "y", {"x_loc", "x_sig", "x_grp"}, leafy(10));
    const CartTree b = fit_tree(t, "y", {"x_loc", "x_sig", "x_grp"}, leafy(10));
    CHECK(tree_to_json(a) == tree_to_json(b));

    CartTree with_stats = a;
    compute_leaf_fairness(with_stats, t, "s", "y");
    const CartTree back = tree_from_json(tree_to_json(with_stats));
    CHECK(tree_to_json(back) == tree_to_json(with_stats));
    CHECK(back.n_train == with_stats.n_train);
    for (std::size_t r = 0; r < t.n_rows(); ++r) REQUIRE(route(back, t, r) == route(with_stats, t, r));
}
