#include <benchmark/benchmark.h>

#include "fairgdt/argen.hpp"
#include "fairgdt/fairlift.hpp"
#include "fairgdt/metrics.hpp"
#include "fairgdt/rng.hpp"
#include "fairgdt/table.hpp"

namespace {

using namespace fairgdt;

// Random mixed-type table: half numerical, half categorical with 8
// categories, plus binary sensitive/target columns (same recipe as the
// CLI bench subcommand).
Table random_table(std::size_t n_features, std::size_t n_rows, std::uint64_t seed) {
    Schema schema;
    for (std::size_t f = 0; f < n_features; ++f) {
        const bool numeric = f < (n_features + 1) / 2;
        schema.columns.push_back(
            {"x" + std::to_string(f), numeric ? ColumnKind::Numerical : ColumnKind::Categorical});
    }
    schema.columns.push_back({"s", ColumnKind::Categorical});
    schema.columns.push_back({"y", ColumnKind::Categorical});
    schema.sensitive = "s";
    schema.target = "y";

    Rng rng(seed);
    std::vector<Column> cols(schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) {
        Column& c = cols[i];
        c.kind = schema.columns[i].kind;
        if (c.kind == ColumnKind::Numerical) {
            c.num.resize(n_rows);
            for (double& v : c.num) v = rng.uniform01();
        } else {
            const std::size_t k = i >= n_features ? 2 : 8;
            for (std::size_t j = 0; j < k; ++j) c.dict.push_back("c" + std::to_string(j));
            c.cat.resize(n_rows);
            for (auto& v : c.cat) v = static_cast<std::uint32_t>(rng.uniform_index(k));
        }
    }
    return Table(std::move(schema), std::move(cols));
}

void BM_FitTree(benchmark::State& state) {
    const Table t = random_table(10, static_cast<std::size_t>(state.range(0)), 1);
    std::vector<std::string> preds;
    for (std::size_t i = 0; i + 2 < t.n_cols(); ++i) preds.push_back(t.schema().columns[i].name);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_tree(t, "y", preds));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitTree)->Arg(1000)->Arg(10000);

void BM_FitGenerator(benchmark::State& state) {
    const Table t = random_table(10, static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fit_generator(t, OrderingStrategy::Original, {}, 3));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FitGenerator)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_SampleSynthetic(benchmark::State& state) {
    const Table t = random_table(10, 10000, 3);
    const GeneratorModel model = fit_generator(t, OrderingStrategy::Original, {}, 4);
    const ResamplingPlan plan = build_plan(model.y_tree, 1.0, 0.0);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            sample_synthetic(model, static_cast<std::size_t>(state.range(0)), &plan, ++seed));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleSynthetic)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_GreedySelect(benchmark::State& state) {
    const Table t = random_table(10, 5000, 5);
    const GeneratorModel model = fit_generator(t, OrderingStrategy::Original, {}, 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(greedy_select(model.y_tree, 0.0));
    }
}
BENCHMARK(BM_GreedySelect);

void BM_NeighborhoodMetrics(benchmark::State& state) {
    const Table real = random_table(8, static_cast<std::size_t>(state.range(0)), 7);
    const GeneratorModel model = fit_generator(real, OrderingStrategy::Original, {}, 8);
    const Table synth =
        sample_synthetic(model, static_cast<std::size_t>(state.range(0)), nullptr, 9);
    for (auto _ : state) {
        benchmark::DoNotOptimize(metrics::neighborhood_metrics(real, synth, 5));
    }
}
BENCHMARK(BM_NeighborhoodMetrics)->Arg(500)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
