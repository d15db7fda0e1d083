#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fairgdt/encode.hpp"
#include "fairgdt/forest.hpp"
#include "fairgdt/table.hpp"

namespace fairgdt::metrics {

/// P(pred=1 | S=0) - P(pred=1 | S=1), signed. Both groups must be present.
double stat_parity(std::span<const std::uint8_t> y_pred, std::span<const std::uint8_t> s);

/// Rank-based AUC (Mann–Whitney), ties averaged. Both classes required.
double roc_auc(std::span<const double> scores, std::span<const std::uint8_t> labels);

/// 1 - sup |F_a - F_b| over the two empirical CDFs (higher is better).
double ks_score(std::span<const double> a, std::span<const double> b);

/// 1 - total variation distance between the two category frequency tables.
double tv_score(const std::vector<std::string>& a, const std::vector<std::string>& b);

/// Column-wise convenience overload aligning the categories by label.
double tv_score_columns(const Table& a, const Table& b, std::size_t col);

/// ROC AUC of a forest trained to tell real rows (label 0) from synthetic
/// rows (label 1) on a stratified 70/30 split; ~0.5 means indistinguishable.
double detection_score(const Table& real, const Table& synth, const ForestParams& params,
                       std::uint64_t seed);

struct NeighborhoodScores {
    double precision = 0.0;
    double recall = 0.0;
    double density = 0.0;
    double coverage = 0.0;
};

/// k-NN sphere metrics in the real-data encoding frame. Real spheres use the
/// distance to the k-th nearest real neighbor (self excluded); zero-radius
/// spheres contain exact matches only. Recall needs synthetic-side spheres
/// and is NaN when the synthetic table has fewer than k+1 rows.
NeighborhoodScores neighborhood_metrics(const Table& real, const Table& synth, int k = 5);

/// Same metrics on already-encoded point sets (shared frame).
NeighborhoodScores neighborhood_from_encoded(const Matrix& real, const Matrix& synth, int k);

/// Median synthetic-to-real nearest-neighbor distance over the median
/// real-to-real one. Throws DegenerateReferenceError when the reference
/// median is zero.
double dcr(const Table& real, const Table& synth);

struct ReportOptions {
    ForestParams forest;
    bool downstream_include_s = false;
    int k_neighbors = 5;
    bool with_quality = true;  // detection / KS / TV / neighborhood / DCR block
};

/// All metric values for one (real, synthetic) pair. stat_parity is stored
/// signed and reported as an absolute value. Metrics that were not computed
/// stay NaN and serialize to an empty CSV cell.
struct EvalReport {
    static constexpr double unset = std::numeric_limits<double>::quiet_NaN();

    double roc_auc = unset;
    double stat_parity = unset;
    double detection = unset;
    double ks = unset;
    double tv = unset;
    double precision = unset;
    double recall = unset;
    double density = unset;
    double coverage = unset;
    double dcr = unset;

    // metadata
    int fold = -1;  // -1 = not part of a fold protocol
    double lambda = 0.0;
    bool has_lambda = false;
    std::string ordering;
    std::uint64_t seed = 0;
    double fit_s = 0.0, sample_s = 0.0;
    bool has_timings = false;
    std::string status = "ok";

    static std::string csv_header();
    std::string csv_row() const;
    std::string to_json() const;
    static EvalReport from_json(const std::string& text);
};

/// Trains the downstream forest on the synthetic table, scores utility and
/// fairness on real test data, and compares synthetic quality against the
/// real training split.
EvalReport full_report(const Table& real_test, const Table& synth, const Table& real_train,
                       std::uint64_t seed, const ReportOptions& opts = {});

}  // namespace fairgdt::metrics
