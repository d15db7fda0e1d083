#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fairgdt/argen.hpp"
#include "fairgdt/csv.hpp"
#include "fairgdt/errors.hpp"
#include "fairgdt/folds.hpp"
#include "fairgdt/metrics.hpp"
#include "fairgdt/parallel.hpp"
#include "fairgdt/text.hpp"

namespace fs = std::filesystem;

namespace fairgdt::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct TreeFlags {
    int min_leaf = 20;
    int max_depth = -1;

    TreeParams params() const {
        TreeParams p;
        p.min_samples_leaf = min_leaf;
        p.max_depth = max_depth;
        return p;
    }
};

Table load_table(const std::string& path, const Schema& schema, bool drop_na) {
    CsvOptions opts;
    opts.drop_na = drop_na;
    LoadedCsv loaded = load_csv(path, schema, opts);
    if (loaded.rows_dropped > 0) {
        std::cerr << "warning: dropped " << loaded.rows_dropped
                  << " row(s) with missing values from " << path << "\n";
    }
    return std::move(loaded.table);
}

std::string plan_filename(double lambda) { return "plan_lambda" + dtos(lambda) + ".json"; }

void write_text_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << text;
    if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void append_report_row(const fs::path& path, const metrics::EvalReport& report) {
    const bool fresh = !fs::exists(path);
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    if (fresh) out << metrics::EvalReport::csv_header() << '\n';
    out << report.csv_row() << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    for (const std::string& item : split(text, ',')) {
        const auto t = trim(item);
        if (t.empty()) continue;
        double v;
        if (!parse_double(t, v)) throw InputError(std::string(what) + ": bad number '" + std::string(t) + "'");
        out.push_back(v);
    }
    if (out.empty()) throw InputError(std::string(what) + ": empty list");
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text, const char* what) {
    std::vector<std::size_t> out;
    for (double v : parse_double_list(text, what)) {
        if (v < 1 || v != std::floor(v))
            throw InputError(std::string(what) + ": expected positive integers");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

// ---------------------------------------------------------------------------
// fit

struct FitOptions {
    std::string data, schema, out;
    double lambda = 1.0;
    double thr_disc = 0.0;
    std::string ordering = "original";
    std::uint64_t seed = 42;
    TreeFlags tree;
    bool drop_na = false;
    bool y_tree_include_s = false;
};

int cmd_fit(const FitOptions& opt) {
    const Schema schema = Schema::from_json_file(opt.schema);
    const Table train = load_table(opt.data, schema, opt.drop_na);
    if (!(opt.lambda >= 0.0 && opt.lambda <= 1.0))
        throw InputError("--lambda must lie in [0, 1]");

    GeneratorParams params;
    params.tree = opt.tree.params();
    params.y_tree_include_s = opt.y_tree_include_s;

    const auto t0 = Clock::now();
    const GeneratorModel model =
        fit_generator(train, ordering_from_string(opt.ordering), params, opt.seed);
    const ResamplingPlan plan = build_plan(model.y_tree, opt.lambda, opt.thr_disc);
    const double fit_s = seconds_since(t0);

    save_model(model, opt.out);
    write_text_file(fs::path(opt.out) / plan_filename(opt.lambda), plan_to_json(plan));

    std::cout << "columns (generation order):";
    for (int c : model.x_order) std::cout << ' ' << schema.columns[c].name;
    std::cout << ' ' << schema.sensitive << ' ' << schema.target << "\n";
    std::cout << "tree sizes (leaves):";
    for (const CartTree& t : model.x_trees) std::cout << ' ' << t.target << ':' << t.n_leaves();
    std::cout << ' ' << model.s_tree.target << ':' << model.s_tree.n_leaves();
    std::cout << ' ' << model.y_tree.target << ':' << model.y_tree.n_leaves() << "\n";
    std::cout << "baseline disc: " << dtos(plan.baseline_disc) << "\n";
    std::cout << "plan: lambda=" << dtos(plan.lambda) << " thr=" << dtos(plan.thr_disc)
              << " new_disc=" << dtos(plan.new_disc) << " selected=" << plan.leaves.size() << "/"
              << model.y_tree.n_leaves() << (plan.feasible ? "" : " [threshold infeasible]")
              << "\n";
    std::cout << "fit time: " << std::fixed << std::setprecision(3) << fit_s << " s\n";
    std::cout << "model written to " << opt.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// generate

struct GenerateOptions {
    std::string model, out;
    std::size_t n = 0;  // 0 = training-split size
    std::uint64_t seed = 42;
    std::optional<double> lambda;
    double thr_disc = 0.0;
};

int cmd_generate(const GenerateOptions& opt) {
    const GeneratorModel model = load_model(opt.model);

    ResamplingPlan plan;
    if (opt.lambda) {
        plan = build_plan(model.y_tree, *opt.lambda, opt.thr_disc);
    } else {
        std::vector<fs::path> plans;
        for (const auto& entry : fs::directory_iterator(opt.model)) {
            const std::string name = entry.path().filename().string();
            if (name.rfind("plan_lambda", 0) == 0 && entry.path().extension() == ".json")
                plans.push_back(entry.path());
        }
        if (plans.empty())
            throw InputError("no plan file in the model directory; pass --lambda");
        if (plans.size() > 1)
            throw InputError("several plan files in the model directory; pass --lambda");
        plan = plan_from_json(read_text_file(plans.front()));
    }

    const std::size_t n = opt.n > 0 ? opt.n : model.bootstrap.size();
    const Table synth = sample_synthetic(model, n, &plan, opt.seed);
    write_csv(synth, opt.out);
    std::cout << "wrote " << n << " synthetic rows to " << opt.out << " (lambda="
              << dtos(plan.lambda) << ")\n";
    return 0;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateOptions {
    std::string real, synth, schema;
    std::string train;  // optional reference split; defaults to `real`
    std::string out;    // optional results CSV to append to
    std::uint64_t seed = 42;
    bool drop_na = false;
    bool downstream_include_s = false;
};

void print_report(const metrics::EvalReport& r) {
    const auto line = [](const char* name, double v) {
        std::cout << "  " << std::left << std::setw(12) << name;
        if (std::isnan(v)) std::cout << "-";
        else std::cout << dtos(v);
        std::cout << "\n";
    };
    std::cout << "evaluation report\n";
    line("roc_auc", r.roc_auc);
    line("stat_parity", std::isnan(r.stat_parity) ? r.stat_parity : std::abs(r.stat_parity));
    line("detection", r.detection);
    line("ks", r.ks);
    line("tv", r.tv);
    line("precision", r.precision);
    line("recall", r.recall);
    line("density", r.density);
    line("coverage", r.coverage);
    line("dcr", r.dcr);
}

int cmd_evaluate(const EvaluateOptions& opt) {
    const Schema schema = Schema::from_json_file(opt.schema);
    const Table real = load_table(opt.real, schema, opt.drop_na);
    const Table synth = load_table(opt.synth, schema, opt.drop_na);
    std::optional<Table> train;
    if (!opt.train.empty()) train = load_table(opt.train, schema, opt.drop_na);

    metrics::ReportOptions ropts;
    ropts.downstream_include_s = opt.downstream_include_s;
    metrics::EvalReport report =
        metrics::full_report(real, synth, train ? *train : real, opt.seed, ropts);
    report.seed = opt.seed;

    print_report(report);
    if (!opt.out.empty()) {
        append_report_row(opt.out, report);
        std::cout << "appended results row to " << opt.out << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
    std::string data, schema, out;
    std::string lambdas = "0,0.25,0.5,0.75,1";
    std::string orderings = "original";
    std::size_t folds = 3;
    std::size_t n = 0;  // 0 = training-split size
    std::uint64_t seed = 42;
    unsigned jobs = 1;
    double thr_disc = 0.0;
    TreeFlags tree;
    bool drop_na = false;
    bool y_tree_include_s = false;
    bool downstream_include_s = false;
};

struct SweepCell {
    std::size_t fold, lambda_idx, ordering_idx;
};

// Test hook: FAIRGDT_INJECT_FAIL="<fold>:<lambda_idx>:<ordering_idx>" makes
// that one cell fail, to exercise the resilience path.
bool injected_failure(const SweepCell& cell) {
    const char* env = std::getenv("FAIRGDT_INJECT_FAIL");
    if (!env) return false;
    const auto parts = split(env, ':');
    if (parts.size() != 3) return false;
    return parts[0] == std::to_string(cell.fold) && parts[1] == std::to_string(cell.lambda_idx) &&
           parts[2] == std::to_string(cell.ordering_idx);
}

struct Aggregate {
    std::vector<metrics::EvalReport> rows;
};

void append_mean_std(std::string& line, const std::vector<double>& values) {
    std::vector<double> v;
    for (double x : values) {
        if (!std::isnan(x)) v.push_back(x);
    }
    if (v.empty()) {
        line += ",,";
        return;
    }
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    for (double x : v) var += (x - mean) * (x - mean);
    const double stddev = v.size() > 1 ? std::sqrt(var / static_cast<double>(v.size() - 1)) : 0.0;
    line += ',' + dtos(mean) + ',' + dtos(stddev);
}

int cmd_sweep(const SweepOptions& opt) {
    const Schema schema = Schema::from_json_file(opt.schema);
    const Table data = load_table(opt.data, schema, opt.drop_na);
    const std::vector<double> lambdas = parse_double_list(opt.lambdas, "--lambdas");
    for (double l : lambdas) {
        if (!(l >= 0.0 && l <= 1.0)) throw InputError("--lambdas entries must lie in [0, 1]");
    }
    std::vector<OrderingStrategy> orderings;
    for (const std::string& o : split(opt.orderings, ',')) {
        const auto t = trim(o);
        if (!t.empty()) orderings.push_back(ordering_from_string(t));
    }
    if (orderings.empty()) throw InputError("--orderings: empty list");

    const std::vector<FoldSplit> folds = make_folds(data.n_rows(), opt.folds, opt.seed);

    GeneratorParams params;
    params.tree = opt.tree.params();
    params.y_tree_include_s = opt.y_tree_include_s;

    std::vector<SweepCell> cells;
    for (std::size_t f = 0; f < folds.size(); ++f)
        for (std::size_t o = 0; o < orderings.size(); ++o)
            for (std::size_t l = 0; l < lambdas.size(); ++l) cells.push_back({f, l, o});

    std::vector<metrics::EvalReport> results(cells.size());
    std::mutex log_mutex;
    std::size_t failures = 0;

    parallel_for(
        cells.size(),
        [&](std::size_t ci) {
            const SweepCell& cell = cells[ci];
            metrics::EvalReport& rep = results[ci];
            rep.fold = static_cast<int>(cell.fold);
            rep.lambda = lambdas[cell.lambda_idx];
            rep.has_lambda = true;
            rep.ordering = std::string(to_string(orderings[cell.ordering_idx]));
            // one seed per (fold, ordering): lambda then only changes the
            // target column of the synthetic data
            const std::uint64_t cell_seed =
                Rng::derive(Rng::derive(opt.seed, 1000 + cell.fold), cell.ordering_idx);
            rep.seed = cell_seed;
            try {
                if (injected_failure(cell)) throw InputError("injected failure");
                const Table train = data.select_rows(folds[cell.fold].train);
                const Table test = data.select_rows(folds[cell.fold].test);

                const auto t0 = Clock::now();
                const GeneratorModel model =
                    fit_generator(train, orderings[cell.ordering_idx], params, cell_seed);
                const ResamplingPlan plan =
                    build_plan(model.y_tree, lambdas[cell.lambda_idx], opt.thr_disc);
                const double fit_s = seconds_since(t0);

                const auto t1 = Clock::now();
                const std::size_t n = opt.n > 0 ? opt.n : train.n_rows();
                const Table synth = sample_synthetic(model, n, &plan, Rng::derive(cell_seed, 7));
                const double sample_s = seconds_since(t1);

                metrics::ReportOptions ropts;
                ropts.downstream_include_s = opt.downstream_include_s;
                metrics::EvalReport measured =
                    metrics::full_report(test, synth, train, Rng::derive(cell_seed, 11), ropts);
                measured.fold = rep.fold;
                measured.lambda = rep.lambda;
                measured.has_lambda = true;
                measured.ordering = rep.ordering;
                measured.seed = rep.seed;
                measured.fit_s = fit_s;
                measured.sample_s = sample_s;
                measured.has_timings = true;
                rep = std::move(measured);
            } catch (const std::exception& e) {
                rep.status = "failed";
                std::lock_guard lock(log_mutex);
                ++failures;
                std::cerr << "warning: cell fold=" << cell.fold
                          << " lambda=" << dtos(lambdas[cell.lambda_idx])
                          << " ordering=" << rep.ordering << " failed: " << e.what() << "\n";
                return;
            }
            std::lock_guard lock(log_mutex);
            std::cerr << "[fold " << cell.fold << "] ordering=" << rep.ordering
                      << " lambda=" << dtos(rep.lambda) << " ok\n";
        },
        opt.jobs);

    fs::create_directories(opt.out);
    {
        std::ofstream out(fs::path(opt.out) / "results.csv", std::ios::binary);
        if (!out) throw IoError("cannot write results.csv in " + opt.out);
        out << metrics::EvalReport::csv_header() << '\n';
        for (const auto& rep : results) out << rep.csv_row() << '\n';
    }
    {
        std::ofstream out(fs::path(opt.out) / "summary.csv", std::ios::binary);
        if (!out) throw IoError("cannot write summary.csv in " + opt.out);
        out << "lambda,ordering,n,roc_auc_mean,roc_auc_std,stat_parity_mean,stat_parity_std,"
               "detection_mean,detection_std,ks_mean,ks_std,tv_mean,tv_std,precision_mean,"
               "precision_std,recall_mean,recall_std,density_mean,density_std,coverage_mean,"
               "coverage_std,dcr_mean,dcr_std,fit_s_mean,sample_s_mean\n";
        for (std::size_t o = 0; o < orderings.size(); ++o) {
            for (std::size_t l = 0; l < lambdas.size(); ++l) {
                std::vector<const metrics::EvalReport*> ok;
                for (std::size_t ci = 0; ci < cells.size(); ++ci) {
                    if (cells[ci].lambda_idx == l && cells[ci].ordering_idx == o &&
                        results[ci].status == "ok")
                        ok.push_back(&results[ci]);
                }
                std::string line = dtos(lambdas[l]);
                line += ',' + std::string(to_string(orderings[o]));
                line += ',' + std::to_string(ok.size());
                const auto gather = [&](auto member) {
                    std::vector<double> v;
                    for (const auto* r : ok) v.push_back(member(*r));
                    return v;
                };
                append_mean_std(line, gather([](const auto& r) { return r.roc_auc; }));
                append_mean_std(line, gather([](const auto& r) { return std::abs(r.stat_parity); }));
                append_mean_std(line, gather([](const auto& r) { return r.detection; }));
                append_mean_std(line, gather([](const auto& r) { return r.ks; }));
                append_mean_std(line, gather([](const auto& r) { return r.tv; }));
                append_mean_std(line, gather([](const auto& r) { return r.precision; }));
                append_mean_std(line, gather([](const auto& r) { return r.recall; }));
                append_mean_std(line, gather([](const auto& r) { return r.density; }));
                append_mean_std(line, gather([](const auto& r) { return r.coverage; }));
                append_mean_std(line, gather([](const auto& r) { return r.dcr; }));
                // mean-only timing columns
                std::vector<double> fit_v, sample_v;
                for (const auto* r : ok) {
                    fit_v.push_back(r->fit_s);
                    sample_v.push_back(r->sample_s);
                }
                std::string tmp;
                append_mean_std(tmp, fit_v);
                line += ',' + split(tmp.substr(1), ',')[0];
                tmp.clear();
                append_mean_std(tmp, sample_v);
                line += ',' + split(tmp.substr(1), ',')[0];
                out << line << '\n';
            }
        }
    }

    std::cout << "sweep complete: " << cells.size() - failures << "/" << cells.size()
              << " cells ok; results in " << opt.out << "\n";
    if (failures > 0) std::cerr << "warning: " << failures << " cell(s) failed\n";
    return 0;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
    std::string features = "10";
    std::string rows = "10000";
    std::uint64_t seed = 42;
    std::string out;
};

// Random mixed-type table: half numerical, half categorical with 8
// categories, plus random binary sensitive/target columns.
Table make_bench_table(std::size_t n_features, std::size_t n_rows, std::uint64_t seed) {
    Schema schema;
    for (std::size_t f = 0; f < n_features; ++f) {
        const bool numeric = f < (n_features + 1) / 2;
        schema.columns.push_back({"x" + std::to_string(f),
                                  numeric ? ColumnKind::Numerical : ColumnKind::Categorical});
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
            const bool binary = i >= n_features;
            const std::size_t k = binary ? 2 : 8;
            for (std::size_t j = 0; j < k; ++j) c.dict.push_back("c" + std::to_string(j));
            c.cat.resize(n_rows);
            for (auto& v : c.cat) v = static_cast<std::uint32_t>(rng.uniform_index(k));
        }
    }
    return Table(std::move(schema), std::move(cols));
}

int cmd_bench(const BenchOptions& opt) {
    const std::vector<std::size_t> features = parse_size_list(opt.features, "--features");
    const std::vector<std::size_t> rows = parse_size_list(opt.rows, "--rows");

    std::ostringstream csv;
    csv << "n_features,n_rows,fit_s,sample_s,total_s\n";
    std::cout << std::left << std::setw(12) << "n_features" << std::setw(10) << "n_rows"
              << std::setw(10) << "fit_s" << std::setw(10) << "sample_s" << std::setw(10)
              << "total_s" << "\n";
    for (std::size_t f : features) {
        for (std::size_t r : rows) {
            const Table data = make_bench_table(f, r, Rng::derive(opt.seed, f * 1000003 + r));

            const auto t0 = Clock::now();
            const GeneratorModel model =
                fit_generator(data, OrderingStrategy::Original, GeneratorParams{}, opt.seed);
            const ResamplingPlan plan = build_plan(model.y_tree, 1.0, 0.0);
            const double fit_s = seconds_since(t0);

            const auto t1 = Clock::now();
            const Table synth = sample_synthetic(model, r, &plan, Rng::derive(opt.seed, 9));
            const double sample_s = seconds_since(t1);
            if (synth.n_rows() != r) throw InternalError("bench: bad synthetic row count");

            csv << f << ',' << r << ',' << dtos(fit_s) << ',' << dtos(sample_s) << ','
                << dtos(fit_s + sample_s) << '\n';
            std::cout << std::left << std::setw(12) << f << std::setw(10) << r << std::setw(10)
                      << std::setprecision(3) << std::fixed << fit_s << std::setw(10) << sample_s
                      << std::setw(10) << (fit_s + sample_s) << "\n";
        }
    }
    if (!opt.out.empty()) {
        write_text_file(opt.out, csv.str());
        std::cout << "timings written to " << opt.out << "\n";
    }
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"fairgdt - fair synthetic tabular data from autoregressive decision trees"};
    app.require_subcommand(1);

    FitOptions fit;
    CLI::App* fit_cmd = app.add_subcommand("fit", "Fit a generator and its resampling plan");
    fit_cmd->add_option("--data", fit.data, "Training CSV")->required();
    fit_cmd->add_option("--schema", fit.schema, "Schema JSON")->required();
    fit_cmd->add_option("--out", fit.out, "Output model directory")->required();
    fit_cmd->add_option("--lambda", fit.lambda, "Fairness-utility tradeoff in [0,1]");
    fit_cmd->add_option("--thr-disc", fit.thr_disc, "Discrimination threshold");
    fit_cmd->add_option("--ordering", fit.ordering,
                        "Column order: original|asc-y|desc-y|asc-s|desc-s");
    fit_cmd->add_option("--seed", fit.seed, "Random seed");
    fit_cmd->add_option("--min-leaf", fit.tree.min_leaf, "Minimum samples per leaf");
    fit_cmd->add_option("--max-depth", fit.tree.max_depth, "Maximum tree depth (-1 = unbounded)");
    fit_cmd->add_flag("--drop-na", fit.drop_na, "Drop rows with missing values");
    fit_cmd->add_flag("--y-tree-include-s", fit.y_tree_include_s,
                      "Let the target tree use the sensitive column");

    GenerateOptions gen;
    double gen_lambda = -1.0;
    CLI::App* gen_cmd = app.add_subcommand("generate", "Sample synthetic rows from a model");
    gen_cmd->add_option("--model", gen.model, "Model directory")->required();
    gen_cmd->add_option("--out", gen.out, "Output CSV")->required();
    gen_cmd->add_option("--n", gen.n, "Rows to generate (default: training-split size)");
    gen_cmd->add_option("--seed", gen.seed, "Random seed");
    CLI::Option* gen_lambda_opt = gen_cmd->add_option(
        "--lambda", gen_lambda, "Override the persisted plan's lambda");
    gen_cmd->add_option("--thr-disc", gen.thr_disc,
                        "Discrimination threshold when --lambda is given");

    EvaluateOptions eval;
    CLI::App* eval_cmd = app.add_subcommand("evaluate", "Score synthetic data against real data");
    eval_cmd->add_option("--real", eval.real, "Real (test) CSV")->required();
    eval_cmd->add_option("--synth", eval.synth, "Synthetic CSV")->required();
    eval_cmd->add_option("--schema", eval.schema, "Schema JSON")->required();
    eval_cmd->add_option("--train", eval.train,
                         "Real training CSV for quality metrics (default: --real)");
    eval_cmd->add_option("--out", eval.out, "Results CSV to append to");
    eval_cmd->add_option("--seed", eval.seed, "Random seed");
    eval_cmd->add_flag("--drop-na", eval.drop_na, "Drop rows with missing values");
    eval_cmd->add_flag("--downstream-include-s", eval.downstream_include_s,
                       "Let the downstream classifier use the sensitive column");

    SweepOptions sweep;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "Cross-validated lambda/ordering experiment grid");
    sweep_cmd->add_option("--data", sweep.data, "Dataset CSV")->required();
    sweep_cmd->add_option("--schema", sweep.schema, "Schema JSON")->required();
    sweep_cmd->add_option("--out", sweep.out, "Output directory")->required();
    sweep_cmd->add_option("--lambdas", sweep.lambdas, "Comma-separated lambda values");
    sweep_cmd->add_option("--orderings", sweep.orderings, "Comma-separated ordering strategies");
    sweep_cmd->add_option("--folds", sweep.folds, "Number of folds");
    sweep_cmd->add_option("--n", sweep.n, "Synthetic rows per cell (default: training size)");
    sweep_cmd->add_option("--seed", sweep.seed, "Master seed");
    sweep_cmd->add_option("--jobs", sweep.jobs, "Parallel sweep cells");
    sweep_cmd->add_option("--thr-disc", sweep.thr_disc, "Discrimination threshold");
    sweep_cmd->add_option("--min-leaf", sweep.tree.min_leaf, "Minimum samples per leaf");
    sweep_cmd->add_option("--max-depth", sweep.tree.max_depth,
                          "Maximum tree depth (-1 = unbounded)");
    sweep_cmd->add_flag("--drop-na", sweep.drop_na, "Drop rows with missing values");
    sweep_cmd->add_flag("--y-tree-include-s", sweep.y_tree_include_s,
                        "Let the target tree use the sensitive column");
    sweep_cmd->add_flag("--downstream-include-s", sweep.downstream_include_s,
                        "Let the downstream classifier use the sensitive column");

    BenchOptions bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "Time fitting/sampling on random tables");
    bench_cmd->add_option("--features", bench.features, "Comma-separated feature counts");
    bench_cmd->add_option("--rows", bench.rows, "Comma-separated row counts");
    bench_cmd->add_option("--seed", bench.seed, "Random seed");
    bench_cmd->add_option("--out", bench.out, "Timing CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (fit_cmd->parsed()) return cmd_fit(fit);
        if (gen_cmd->parsed()) {
            if (gen_lambda_opt->count() > 0) gen.lambda = gen_lambda;
            return cmd_generate(gen);
        }
        if (eval_cmd->parsed()) return cmd_evaluate(eval);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep);
        if (bench_cmd->parsed()) return cmd_bench(bench);
        throw InternalError("no subcommand dispatched");
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace fairgdt::cli
