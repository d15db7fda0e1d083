#include "fairgdt/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include <json.hpp>

#include "fairgdt/errors.hpp"
#include "fairgdt/parallel.hpp"
#include "fairgdt/rng.hpp"
#include "fairgdt/text.hpp"

namespace fairgdt::metrics {

namespace {

double median(std::vector<double> v) {
    if (v.empty()) throw InternalError("median of an empty set");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<std::string> column_labels(const Table& t, std::size_t col) {
    const Column& c = t.column(col);
    std::vector<std::string> out;
    out.reserve(t.n_rows());
    for (std::uint32_t id : c.cat) out.push_back(c.dict[id]);
    return out;
}

std::string field_or_empty(double v) { return std::isnan(v) ? std::string() : dtos(v); }

}  // namespace

double stat_parity(std::span<const std::uint8_t> y_pred, std::span<const std::uint8_t> s) {
    if (y_pred.size() != s.size() || y_pred.empty())
        throw InputError("stat_parity: sequences must be nonempty and of equal length");
    std::size_t n0 = 0, n1 = 0, pos0 = 0, pos1 = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i]) {
            ++n1;
            pos1 += y_pred[i] ? 1 : 0;
        } else {
            ++n0;
            pos0 += y_pred[i] ? 1 : 0;
        }
    }
    if (n0 == 0 || n1 == 0) throw GroupMissingError("stat_parity: a sensitive group is absent");
    return static_cast<double>(pos0) / static_cast<double>(n0) -
           static_cast<double>(pos1) / static_cast<double>(n1);
}

double roc_auc(std::span<const double> scores, std::span<const std::uint8_t> labels) {
    if (scores.size() != labels.size() || scores.empty())
        throw InputError("roc_auc: sequences must be nonempty and of equal length");
    const std::size_t n = scores.size();
    std::size_t n_pos = 0;
    for (std::uint8_t l : labels) n_pos += l ? 1 : 0;
    const std::size_t n_neg = n - n_pos;
    if (n_pos == 0 || n_neg == 0) throw InputError("roc_auc: both classes must be present");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

    // average ranks over score ties
    double rank_sum_pos = 0.0;
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && scores[idx[j + 1]] == scores[idx[i]]) ++j;
        const double avg_rank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            if (labels[idx[k]]) rank_sum_pos += avg_rank;
        }
        i = j + 1;
    }
    const double np = static_cast<double>(n_pos);
    return (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * static_cast<double>(n_neg));
}

double ks_score(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw InputError("ks_score: both samples must be nonempty");
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    const double na = static_cast<double>(sa.size()), nb = static_cast<double>(sb.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < sa.size() || j < sb.size()) {
        const double x = std::min(i < sa.size() ? sa[i] : std::numeric_limits<double>::infinity(),
                                  j < sb.size() ? sb[j] : std::numeric_limits<double>::infinity());
        while (i < sa.size() && sa[i] == x) ++i;
        while (j < sb.size() && sb[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return 1.0 - d;
}

double tv_score(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.empty() || b.empty()) throw InputError("tv_score: both samples must be nonempty");
    std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> counts;
    for (const std::string& v : a) ++counts[v].first;
    for (const std::string& v : b) ++counts[v].second;
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double dist = 0.0;
    for (const auto& [_, c] : counts) {
        dist += std::abs(static_cast<double>(c.first) / na - static_cast<double>(c.second) / nb);
    }
    return 1.0 - 0.5 * dist;
}

double tv_score_columns(const Table& a, const Table& b, std::size_t col) {
    return tv_score(column_labels(a, col), column_labels(b, col));
}

double detection_score(const Table& real, const Table& synth, const ForestParams& params,
                       std::uint64_t seed) {
    if (real.schema() != synth.schema())
        throw SchemaError("detection_score: real and synthetic schemas differ");
    const std::size_t nr = real.n_rows(), ns = synth.n_rows();
    if (nr < 10 || ns < 10)
        throw InputError("detection_score: need at least 10 rows on each side");

    std::string label = "__source";
    while (real.schema().index_of(label) >= 0) label.insert(label.begin(), '_');

    Schema det_schema = real.schema();
    det_schema.columns.push_back({label, ColumnKind::Categorical});
    det_schema.target = label;

    std::vector<Column> cols;
    cols.reserve(det_schema.size());
    for (std::size_t i = 0; i < real.n_cols(); ++i) {
        const Column& cr = real.column(i);
        const Column& cs = synth.column(i);
        Column out;
        out.kind = cr.kind;
        if (cr.kind == ColumnKind::Numerical) {
            out.num = cr.num;
            out.num.insert(out.num.end(), cs.num.begin(), cs.num.end());
        } else {
            out.dict = cr.dict;
            std::unordered_map<std::string, std::uint32_t> lookup;
            for (std::size_t k = 0; k < out.dict.size(); ++k)
                lookup.emplace(out.dict[k], static_cast<std::uint32_t>(k));
            out.cat = cr.cat;
            out.cat.reserve(nr + ns);
            for (std::uint32_t id : cs.cat) {
                const std::string& name = cs.dict[id];
                auto [it, inserted] =
                    lookup.emplace(name, static_cast<std::uint32_t>(out.dict.size()));
                if (inserted) out.dict.push_back(name);
                out.cat.push_back(it->second);
            }
        }
        cols.push_back(std::move(out));
    }
    Column flag;
    flag.kind = ColumnKind::Categorical;
    flag.dict = {"real", "synthetic"};
    flag.cat.assign(nr, 0);
    flag.cat.insert(flag.cat.end(), ns, 1);
    cols.push_back(std::move(flag));
    const Table combined(det_schema, std::move(cols));

    // stratified 70/30 split
    std::vector<std::size_t> train_idx, test_idx;
    const auto split_side = [&](std::size_t offset, std::size_t count, std::uint64_t tag) {
        std::vector<std::size_t> idx(count);
        std::iota(idx.begin(), idx.end(), offset);
        Rng rng(Rng::derive(seed, tag));
        for (std::size_t i = count - 1; i > 0; --i) std::swap(idx[i], idx[rng.uniform_index(i + 1)]);
        const std::size_t cut = count * 7 / 10;
        train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + cut);
        test_idx.insert(test_idx.end(), idx.begin() + cut, idx.end());
    };
    split_side(0, nr, 1);
    split_side(nr, ns, 2);
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());

    const Table train = combined.select_rows(train_idx);
    const Table test = combined.select_rows(test_idx);
    const Forest forest = fit_forest(train, label, {}, params, Rng::derive(seed, 3));
    const std::vector<double> scores = predict_proba(forest, test);
    const std::vector<std::uint8_t> truth =
        test.binary_column(static_cast<std::size_t>(test.column_index(label)));
    return roc_auc(scores, truth);
}

NeighborhoodScores neighborhood_from_encoded(const Matrix& real, const Matrix& synth, int k) {
    if (k < 1) throw InputError("neighborhood metrics: k must be >= 1");
    const std::size_t nr = real.rows, ns = synth.rows;
    if (nr < static_cast<std::size_t>(k) + 1)
        throw InputError("neighborhood metrics: need at least k+1 real rows");
    if (ns == 0) throw InputError("neighborhood metrics: empty synthetic side");

    const auto knn_radii_sq = [k](const Matrix& pts) {
        std::vector<double> radii(pts.rows);
        parallel_for(pts.rows, [&](std::size_t i) {
            std::vector<double> dists;
            dists.reserve(pts.rows - 1);
            for (std::size_t j = 0; j < pts.rows; ++j) {
                if (j == i) continue;
                dists.push_back(squared_distance(pts.row(i), pts.row(j)));
            }
            std::nth_element(dists.begin(), dists.begin() + (k - 1), dists.end());
            radii[i] = dists[static_cast<std::size_t>(k - 1)];
        });
        return radii;
    };

    const std::vector<double> real_radii = knn_radii_sq(real);

    NeighborhoodScores out;
    std::vector<std::uint8_t> covered(nr, 0);
    std::size_t inside_any = 0;
    double density_sum = 0.0;
    for (std::size_t j = 0; j < ns; ++j) {
        std::size_t count_in = 0;
        for (std::size_t i = 0; i < nr; ++i) {
            if (squared_distance(real.row(i), synth.row(j)) <= real_radii[i]) {
                ++count_in;
                covered[i] = 1;
            }
        }
        inside_any += count_in > 0 ? 1 : 0;
        density_sum += static_cast<double>(count_in) / static_cast<double>(k);
    }
    out.precision = static_cast<double>(inside_any) / static_cast<double>(ns);
    out.density = density_sum / static_cast<double>(ns);
    out.coverage =
        static_cast<double>(std::accumulate(covered.begin(), covered.end(), std::size_t{0})) /
        static_cast<double>(nr);

    if (ns >= static_cast<std::size_t>(k) + 1) {
        const std::vector<double> synth_radii = knn_radii_sq(synth);
        std::size_t recalled = 0;
        for (std::size_t i = 0; i < nr; ++i) {
            for (std::size_t j = 0; j < ns; ++j) {
                if (squared_distance(real.row(i), synth.row(j)) <= synth_radii[j]) {
                    ++recalled;
                    break;
                }
            }
        }
        out.recall = static_cast<double>(recalled) / static_cast<double>(nr);
    } else {
        out.recall = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
}

NeighborhoodScores neighborhood_metrics(const Table& real, const Table& synth, int k) {
    if (real.schema() != synth.schema())
        throw SchemaError("neighborhood metrics: real and synthetic schemas differ");
    auto [real_m, stats] = encode_for_distance(real);
    auto [synth_m, _] = encode_for_distance(synth, &stats);
    return neighborhood_from_encoded(real_m, synth_m, k);
}

double dcr(const Table& real, const Table& synth) {
    if (real.schema() != synth.schema())
        throw SchemaError("dcr: real and synthetic schemas differ");
    if (real.n_rows() < 2) throw InputError("dcr: need at least 2 real rows");
    if (synth.n_rows() < 1) throw InputError("dcr: need at least 1 synthetic row");

    auto [real_m, stats] = encode_for_distance(real);
    auto [synth_m, _] = encode_for_distance(synth, &stats);

    std::vector<double> real_nn(real_m.rows);
    parallel_for(real_m.rows, [&](std::size_t i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < real_m.rows; ++j) {
            if (j == i) continue;
            best = std::min(best, squared_distance(real_m.row(i), real_m.row(j)));
        }
        real_nn[i] = std::sqrt(best);
    });
    std::vector<double> synth_nn(synth_m.rows);
    parallel_for(synth_m.rows, [&](std::size_t j) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < real_m.rows; ++i) {
            best = std::min(best, squared_distance(real_m.row(i), synth_m.row(j)));
        }
        synth_nn[j] = std::sqrt(best);
    });

    const double denom = median(std::move(real_nn));
    if (denom == 0.0)
        throw DegenerateReferenceError(
            "dcr: the median real-to-real nearest-neighbor distance is zero");
    return median(std::move(synth_nn)) / denom;
}

std::string EvalReport::csv_header() {
    return "fold,lambda,ordering,seed,roc_auc,stat_parity,detection,ks,tv,precision,recall,"
           "density,coverage,dcr,fit_s,sample_s,status";
}

std::string EvalReport::csv_row() const {
    std::string out;
    out += fold >= 0 ? std::to_string(fold) : std::string();
    out += ',';
    out += has_lambda ? dtos(lambda) : std::string();
    out += ',';
    out += ordering;
    out += ',';
    out += std::to_string(seed);
    out += ',';
    out += field_or_empty(roc_auc);
    out += ',';
    out += field_or_empty(std::isnan(stat_parity) ? stat_parity : std::abs(stat_parity));
    out += ',';
    out += field_or_empty(detection);
    out += ',';
    out += field_or_empty(ks);
    out += ',';
    out += field_or_empty(tv);
    out += ',';
    out += field_or_empty(precision);
    out += ',';
    out += field_or_empty(recall);
    out += ',';
    out += field_or_empty(density);
    out += ',';
    out += field_or_empty(coverage);
    out += ',';
    out += field_or_empty(dcr);
    out += ',';
    out += has_timings ? dtos(fit_s) : std::string();
    out += ',';
    out += has_timings ? dtos(sample_s) : std::string();
    out += ',';
    out += status;
    return out;
}

namespace {

nlohmann::json number_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

double number_from(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::numeric_limits<double>::quiet_NaN();
    return j.at(key).get<double>();
}

}  // namespace

std::string EvalReport::to_json() const {
    nlohmann::json j{{"roc_auc", number_or_null(roc_auc)},
                     {"stat_parity", number_or_null(stat_parity)},
                     {"stat_parity_abs",
                      number_or_null(std::isnan(stat_parity) ? stat_parity : std::abs(stat_parity))},
                     {"detection", number_or_null(detection)},
                     {"ks", number_or_null(ks)},
                     {"tv", number_or_null(tv)},
                     {"precision", number_or_null(precision)},
                     {"recall", number_or_null(recall)},
                     {"density", number_or_null(density)},
                     {"coverage", number_or_null(coverage)},
                     {"dcr", number_or_null(dcr)},
                     {"metadata",
                      {{"fold", fold},
                       {"lambda", has_lambda ? nlohmann::json(lambda) : nlohmann::json(nullptr)},
                       {"ordering", ordering},
                       {"seed", seed},
                       {"fit_s", has_timings ? nlohmann::json(fit_s) : nlohmann::json(nullptr)},
                       {"sample_s", has_timings ? nlohmann::json(sample_s) : nlohmann::json(nullptr)},
                       {"status", status}}}};
    return j.dump(2);
}

EvalReport EvalReport::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid report JSON: ") + e.what());
    }
    EvalReport r;
    try {
        r.roc_auc = number_from(j, "roc_auc");
        r.stat_parity = number_from(j, "stat_parity");
        r.detection = number_from(j, "detection");
        r.ks = number_from(j, "ks");
        r.tv = number_from(j, "tv");
        r.precision = number_from(j, "precision");
        r.recall = number_from(j, "recall");
        r.density = number_from(j, "density");
        r.coverage = number_from(j, "coverage");
        r.dcr = number_from(j, "dcr");
        const auto& meta = j.at("metadata");
        r.fold = meta.at("fold").get<int>();
        if (!meta.at("lambda").is_null()) {
            r.lambda = meta.at("lambda").get<double>();
            r.has_lambda = true;
        }
        r.ordering = meta.at("ordering").get<std::string>();
        r.seed = meta.at("seed").get<std::uint64_t>();
        if (!meta.at("fit_s").is_null()) {
            r.fit_s = meta.at("fit_s").get<double>();
            r.sample_s = meta.at("sample_s").get<double>();
            r.has_timings = true;
        }
        r.status = meta.at("status").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid report JSON: ") + e.what());
    }
    return r;
}

EvalReport full_report(const Table& real_test, const Table& synth, const Table& real_train,
                       std::uint64_t seed, const ReportOptions& opts) {
    if (real_test.schema() != synth.schema() || real_train.schema() != synth.schema())
        throw SchemaError("full_report: table schemas are inconsistent");
    const Schema& schema = synth.schema();

    EvalReport rep;
    rep.seed = seed;

    std::vector<std::string> exclude;
    if (!opts.downstream_include_s) exclude.push_back(schema.sensitive);
    const Forest forest =
        fit_forest(synth, schema.target, exclude, opts.forest, Rng::derive(seed, 1));
    const std::vector<double> scores = predict_proba(forest, real_test);
    const std::vector<std::uint8_t> y =
        real_test.binary_column(static_cast<std::size_t>(real_test.target_index()));
    rep.roc_auc = roc_auc(scores, y);
    std::vector<std::uint8_t> preds(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) preds[i] = scores[i] >= 0.5 ? 1 : 0;
    const std::vector<std::uint8_t> s =
        real_test.binary_column(static_cast<std::size_t>(real_test.sensitive_index()));
    rep.stat_parity = stat_parity(preds, s);

    if (opts.with_quality) {
        rep.detection = detection_score(real_train, synth, opts.forest, Rng::derive(seed, 2));
        double ks_sum = 0.0, tv_sum = 0.0;
        std::size_t ks_n = 0, tv_n = 0;
        for (std::size_t i = 0; i < schema.size(); ++i) {
            if (schema.columns[i].kind == ColumnKind::Numerical) {
                ks_sum += ks_score(real_train.column(i).num, synth.column(i).num);
                ++ks_n;
            } else {
                tv_sum += tv_score_columns(real_train, synth, i);
                ++tv_n;
            }
        }
        rep.ks = ks_n ? ks_sum / static_cast<double>(ks_n)
                      : std::numeric_limits<double>::quiet_NaN();
        rep.tv = tv_n ? tv_sum / static_cast<double>(tv_n)
                      : std::numeric_limits<double>::quiet_NaN();
        const NeighborhoodScores nb = neighborhood_metrics(real_train, synth, opts.k_neighbors);
        rep.precision = nb.precision;
        rep.recall = nb.recall;
        rep.density = nb.density;
        rep.coverage = nb.coverage;
        rep.dcr = dcr(real_train, synth);
    }
    return rep;
}

}  // namespace fairgdt::metrics
