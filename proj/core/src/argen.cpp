#include "fairgdt/argen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "fairgdt/csv.hpp"
#include "fairgdt/errors.hpp"
#include "fairgdt/parallel.hpp"
#include "fairgdt/text.hpp"

namespace fairgdt {

namespace {

constexpr std::size_t kOrderingBins = 10;

std::vector<std::uint32_t> equal_freq_bins(const std::vector<double>& values, std::size_t bins) {
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> edges;
    edges.reserve(bins - 1);
    for (std::size_t j = 1; j < bins; ++j) edges.push_back(sorted[j * sorted.size() / bins]);
    std::vector<std::uint32_t> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        out[i] = static_cast<std::uint32_t>(
            std::upper_bound(edges.begin(), edges.end(), values[i]) - edges.begin());
    }
    return out;
}

std::string sanitize_filename(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    for (char c : name) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
        out.push_back(ok ? c : '_');
    }
    return out.empty() ? std::string("_") : out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace

std::string_view to_string(OrderingStrategy s) {
    switch (s) {
        case OrderingStrategy::Original: return "original";
        case OrderingStrategy::AscCorrY: return "asc-y";
        case OrderingStrategy::DescCorrY: return "desc-y";
        case OrderingStrategy::AscCorrS: return "asc-s";
        case OrderingStrategy::DescCorrS: return "desc-s";
    }
    return "original";
}

OrderingStrategy ordering_from_string(std::string_view text) {
    if (text == "original") return OrderingStrategy::Original;
    if (text == "asc-y") return OrderingStrategy::AscCorrY;
    if (text == "desc-y") return OrderingStrategy::DescCorrY;
    if (text == "asc-s") return OrderingStrategy::AscCorrS;
    if (text == "desc-s") return OrderingStrategy::DescCorrS;
    throw InputError("unknown ordering strategy: '" + std::string(text) +
                     "' (expected original, asc-y, desc-y, asc-s or desc-s)");
}

double cramers_v(std::span<const std::uint32_t> a, std::size_t ka,
                 std::span<const std::uint32_t> b, std::size_t kb) {
    if (a.size() != b.size()) throw InternalError("cramers_v: length mismatch");
    const std::size_t n = a.size();
    if (n == 0 || ka == 0 || kb == 0) return 0.0;

    std::vector<std::size_t> table(ka * kb, 0);
    std::vector<std::size_t> row(ka, 0), col(kb, 0);
    for (std::size_t i = 0; i < n; ++i) {
        ++table[a[i] * kb + b[i]];
        ++row[a[i]];
        ++col[b[i]];
    }
    std::size_t r_eff = 0, c_eff = 0;
    for (std::size_t c : row) r_eff += c > 0 ? 1 : 0;
    for (std::size_t c : col) c_eff += c > 0 ? 1 : 0;
    const std::size_t dof = std::min(r_eff, c_eff);
    if (dof < 2) return 0.0;

    double chi2 = 0.0;
    for (std::size_t i = 0; i < ka; ++i) {
        if (row[i] == 0) continue;
        for (std::size_t j = 0; j < kb; ++j) {
            if (col[j] == 0) continue;
            const double expected = static_cast<double>(row[i]) * static_cast<double>(col[j]) /
                                    static_cast<double>(n);
            const double d = static_cast<double>(table[i * kb + j]) - expected;
            chi2 += d * d / expected;
        }
    }
    const double v = std::sqrt(chi2 / (static_cast<double>(n) * static_cast<double>(dof - 1)));
    return std::clamp(v, 0.0, 1.0);
}

std::vector<int> resolve_order(const Table& train, OrderingStrategy strategy) {
    const Schema& schema = train.schema();
    const int s_idx = train.sensitive_index();
    const int y_idx = train.target_index();

    std::vector<int> xs;
    for (std::size_t i = 0; i < schema.size(); ++i) {
        const int c = static_cast<int>(i);
        if (c != s_idx && c != y_idx) xs.push_back(c);
    }

    if (strategy != OrderingStrategy::Original) {
        const bool against_y =
            strategy == OrderingStrategy::AscCorrY || strategy == OrderingStrategy::DescCorrY;
        const bool ascending =
            strategy == OrderingStrategy::AscCorrY || strategy == OrderingStrategy::AscCorrS;
        const Column& ref = train.column(static_cast<std::size_t>(against_y ? y_idx : s_idx));

        std::vector<double> score(schema.size(), 0.0);
        for (int c : xs) {
            const Column& col = train.column(static_cast<std::size_t>(c));
            if (col.kind == ColumnKind::Categorical) {
                score[c] = cramers_v(col.cat, col.dict.size(), ref.cat, ref.dict.size());
            } else {
                const auto bins = equal_freq_bins(col.num, kOrderingBins);
                score[c] = cramers_v(bins, kOrderingBins, ref.cat, ref.dict.size());
            }
        }
        std::stable_sort(xs.begin(), xs.end(), [&](int a, int b) {
            return ascending ? score[a] < score[b] : score[a] > score[b];
        });
    }

    xs.push_back(s_idx);
    xs.push_back(y_idx);
    return xs;
}

GeneratorModel fit_generator(const Table& train, OrderingStrategy strategy,
                             const GeneratorParams& params, std::uint64_t seed) {
    const Schema& schema = train.schema();
    const int s_idx = train.sensitive_index();
    const int y_idx = train.target_index();
    train.require_binary(static_cast<std::size_t>(s_idx));
    train.require_binary(static_cast<std::size_t>(y_idx));

    GeneratorModel model;
    model.schema = schema;
    model.s_col = s_idx;
    model.y_col = y_idx;
    model.ordering = strategy;
    model.params = params;
    model.seed = seed;

    std::vector<int> order = resolve_order(train, strategy);
    model.x_order.assign(order.begin(), order.end() - 2);
    if (model.x_order.empty())
        throw InputError("fit_generator: need at least one feature column besides the sensitive "
                         "and target columns");

    model.dicts.resize(schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) model.dicts[i] = train.column(i).dict;
    model.bootstrap = train.column(static_cast<std::size_t>(model.x_order[0]));

    const auto name_of = [&](int c) { return schema.columns[static_cast<std::size_t>(c)].name; };

    struct TreeTask {
        std::string target;
        std::vector<std::string> predictors;
    };
    std::vector<TreeTask> specs;
    std::vector<std::string> x_names;
    for (std::size_t i = 1; i < model.x_order.size(); ++i) {
        TreeTask spec;
        spec.target = name_of(model.x_order[i]);
        for (std::size_t j = 0; j < i; ++j) spec.predictors.push_back(name_of(model.x_order[j]));
        specs.push_back(std::move(spec));
    }
    for (int c : model.x_order) x_names.push_back(name_of(c));
    specs.push_back({name_of(s_idx), x_names});
    {
        std::vector<std::string> y_preds = x_names;
        if (params.y_tree_include_s) y_preds.push_back(name_of(s_idx));
        specs.push_back({name_of(y_idx), std::move(y_preds)});
    }

    // Every tree is fitted on real columns only, so the fits are independent.
    std::vector<CartTree> trees(specs.size());
    parallel_for(specs.size(), [&](std::size_t i) {
        trees[i] = fit_tree(train, specs[i].target, specs[i].predictors, params.tree,
                            Rng::derive(seed, i));
    });

    model.y_tree = std::move(trees.back());
    model.s_tree = std::move(trees[trees.size() - 2]);
    trees.resize(trees.size() - 2);
    model.x_trees = std::move(trees);

    compute_leaf_fairness(model.y_tree, train, name_of(s_idx), name_of(y_idx));
    return model;
}

Table sample_synthetic(const GeneratorModel& model, std::size_t n, const ResamplingPlan* plan,
                       std::uint64_t seed) {
    if (n == 0) throw InputError("sample_synthetic: n must be >= 1");
    const Schema& schema = model.schema;

    std::vector<Column> cols(schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) {
        cols[i].kind = schema.columns[i].kind;
        cols[i].dict = model.dicts[i];
        if (cols[i].kind == ColumnKind::Numerical) {
            cols[i].num.assign(n, std::numeric_limits<double>::quiet_NaN());
        } else {
            cols[i].cat.assign(n, std::numeric_limits<std::uint32_t>::max());
        }
    }

    std::vector<int> positions = model.x_order;
    positions.push_back(model.s_col);
    positions.push_back(model.y_col);

    // first column: bootstrap draws from the training values
    {
        const int c = positions[0];
        Rng rng(Rng::derive(seed, 0));
        const Column& boot = model.bootstrap;
        const std::size_t m = boot.size();
        if (m == 0) throw InternalError("sample_synthetic: empty bootstrap store");
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t pick = rng.uniform_index(m);
            if (boot.kind == ColumnKind::Numerical) cols[c].num[i] = boot.num[pick];
            else cols[c].cat[i] = boot.cat[pick];
        }
    }

    for (std::size_t p = 1; p < positions.size(); ++p) {
        const int c = positions[p];
        const CartTree* tree;
        if (p < model.x_order.size()) tree = &model.x_trees[p - 1];
        else if (c == model.s_col) tree = &model.s_tree;
        else tree = &model.y_tree;
        const bool is_target_tree = tree == &model.y_tree;

        // group row indices by leaf (generated predictor columns only)
        std::vector<std::vector<std::uint32_t>> groups(tree->n_leaves());
        for (std::size_t i = 0; i < n; ++i) {
            const int leaf = route_cells(
                *tree, [&](int col) { return cols[col].num[i]; },
                [&](int col) { return cols[col].cat[i]; });
            groups[static_cast<std::size_t>(leaf)].push_back(static_cast<std::uint32_t>(i));
        }
        std::size_t grouped = 0;
        for (const auto& g : groups) grouped += g.size();
        if (grouped != n) throw InternalError("sample_synthetic: leaf groups do not partition the rows");

        const std::uint64_t col_seed = Rng::derive(seed, p);
        for (std::size_t leaf = 0; leaf < groups.size(); ++leaf) {
            const auto& g = groups[leaf];
            if (g.empty()) continue;
            Rng rng(Rng::derive(col_seed, leaf));
            const LeafDistribution& dist = tree->leaves[leaf];
            if (dist.is_categorical()) {
                const PlanLeaf* pl =
                    (is_target_tree && plan) ? plan->find(static_cast<int>(leaf)) : nullptr;
                std::vector<std::uint32_t> draws;
                if (pl) {
                    LeafDistribution adjusted;
                    adjusted.probs = pl->p_adjusted;
                    adjusted.support = dist.support;
                    draws = sample_leaf_categories(adjusted, g.size(), rng);
                } else {
                    draws = sample_leaf_categories(dist, g.size(), rng);
                }
                for (std::size_t j = 0; j < g.size(); ++j) cols[c].cat[g[j]] = draws[j];
            } else {
                const auto draws = sample_leaf_values(dist, g.size(), rng);
                for (std::size_t j = 0; j < g.size(); ++j) cols[c].num[g[j]] = draws[j];
            }
        }
    }

    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i].kind == ColumnKind::Categorical) {
            for (std::uint32_t id : cols[i].cat) {
                if (id == std::numeric_limits<std::uint32_t>::max())
                    throw InternalError("sample_synthetic: unfilled cell in column '" +
                                        schema.columns[i].name + "'");
            }
        }
    }
    return Table(schema, std::move(cols));
}

void save_model(const GeneratorModel& model, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const Schema& schema = model.schema;
    const auto name_of = [&](int c) { return schema.columns[static_cast<std::size_t>(c)].name; };

    nlohmann::json trees = nlohmann::json::array();
    const auto emit_tree = [&](const CartTree& tree) {
        std::string file = "tree_" + sanitize_filename(tree.target) + ".json";
        write_file(dir / file, tree_to_json(tree));
        trees.push_back({{"column", tree.target}, {"file", file}});
    };
    for (const CartTree& tree : model.x_trees) emit_tree(tree);
    emit_tree(model.s_tree);
    emit_tree(model.y_tree);

    const std::string boot_name = name_of(model.x_order[0]);
    const std::string boot_file = "bootstrap_" + sanitize_filename(boot_name) + ".csv";
    {
        std::ostringstream out;
        out << csv_quote(boot_name) << '\n';
        const Column& boot = model.bootstrap;
        char buf[40];
        for (std::size_t i = 0; i < boot.size(); ++i) {
            if (boot.kind == ColumnKind::Numerical) {
                std::snprintf(buf, sizeof(buf), "%.17g", boot.num[i]);
                out << buf << '\n';
            } else {
                out << csv_quote(boot.dict[boot.cat[i]]) << '\n';
            }
        }
        write_file(dir / boot_file, out.str());
    }

    std::vector<std::string> x_order_names;
    for (int c : model.x_order) x_order_names.push_back(name_of(c));

    nlohmann::json j{{"format", 1},
                     {"seed", model.seed},
                     {"ordering", std::string(to_string(model.ordering))},
                     {"params",
                      {{"max_depth", model.params.tree.max_depth},
                       {"min_samples_leaf", model.params.tree.min_samples_leaf},
                       {"min_impurity_decrease", model.params.tree.min_impurity_decrease},
                       {"y_tree_include_s", model.params.y_tree_include_s}}},
                     {"schema", nlohmann::json::parse(schema.to_json())},
                     {"dicts", model.dicts},
                     {"x_order", x_order_names},
                     {"bootstrap", {{"column", boot_name}, {"file", boot_file}}},
                     {"trees", trees}};
    write_file(dir / "model.json", j.dump(2));
}

GeneratorModel load_model(const std::filesystem::path& dir) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(dir / "model.json"));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid model.json: ") + e.what());
    }
    if (j.value("format", 0) != 1) throw InputError("unsupported model format");

    GeneratorModel model;
    try {
        model.seed = j.at("seed").get<std::uint64_t>();
        model.ordering = ordering_from_string(j.at("ordering").get<std::string>());
        const auto& params = j.at("params");
        model.params.tree.max_depth = params.at("max_depth").get<int>();
        model.params.tree.min_samples_leaf = params.at("min_samples_leaf").get<int>();
        model.params.tree.min_impurity_decrease = params.at("min_impurity_decrease").get<double>();
        model.params.y_tree_include_s = params.at("y_tree_include_s").get<bool>();
        model.schema = Schema::from_json(j.at("schema").dump());
        model.dicts = j.at("dicts").get<std::vector<std::vector<std::string>>>();
        model.s_col = model.schema.sensitive_index();
        model.y_col = model.schema.target_index();
        for (const auto& name : j.at("x_order")) {
            const int c = model.schema.index_of(name.get<std::string>());
            if (c < 0) throw InputError("model x_order names a missing column");
            model.x_order.push_back(c);
        }

        std::unordered_map<std::string, CartTree> trees;
        for (const auto& jt : j.at("trees")) {
            const std::string column = jt.at("column").get<std::string>();
            const std::string file = jt.at("file").get<std::string>();
            trees.emplace(column, tree_from_json(read_file(dir / file)));
        }
        const auto take_tree = [&](const std::string& column) {
            auto it = trees.find(column);
            if (it == trees.end())
                throw InputError("model is missing the tree for column '" + column + "'");
            CartTree t = std::move(it->second);
            trees.erase(it);
            return t;
        };
        for (std::size_t i = 1; i < model.x_order.size(); ++i) {
            model.x_trees.push_back(
                take_tree(model.schema.columns[static_cast<std::size_t>(model.x_order[i])].name));
        }
        model.s_tree = take_tree(model.schema.sensitive);
        model.y_tree = take_tree(model.schema.target);

        // bootstrap store
        const auto& jb = j.at("bootstrap");
        const std::string boot_col = jb.at("column").get<std::string>();
        const int boot_idx = model.schema.index_of(boot_col);
        if (boot_idx != model.x_order[0])
            throw InputError("model bootstrap column does not match the generation order");
        auto records = read_csv_records(dir / jb.at("file").get<std::string>());
        if (records.size() < 2) throw InputError("model bootstrap file has no values");
        Column boot;
        boot.kind = model.schema.columns[static_cast<std::size_t>(boot_idx)].kind;
        boot.dict = model.dicts[static_cast<std::size_t>(boot_idx)];
        std::unordered_map<std::string, std::uint32_t> lookup;
        for (std::size_t i = 0; i < boot.dict.size(); ++i)
            lookup.emplace(boot.dict[i], static_cast<std::uint32_t>(i));
        for (std::size_t r = 1; r < records.size(); ++r) {
            if (records[r].size() != 1)
                throw InputError("model bootstrap file must have exactly one column");
            const std::string& cell = records[r][0];
            if (boot.kind == ColumnKind::Numerical) {
                double v;
                if (!parse_double(cell, v))
                    throw InputError("bad numeric value in bootstrap file: '" + cell + "'");
                boot.num.push_back(v);
            } else {
                auto it = lookup.find(cell);
                if (it == lookup.end())
                    throw InputError("bootstrap value '" + cell + "' missing from the dictionary");
                boot.cat.push_back(it->second);
            }
        }
        model.bootstrap = std::move(boot);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid model.json: ") + e.what());
    }
    return model;
}

}  // namespace fairgdt
