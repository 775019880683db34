#include "solarcast/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "solarcast/csv.hpp"
#include "solarcast/parallel.hpp"
#include "solarcast/preprocess.hpp"
#include "solarcast/rng.hpp"

namespace solarcast {

using json = nlohmann::ordered_json;

std::vector<WindowSplit> sliding_windows(std::size_t n_samples, const WindowConfig& config) {
    if (config.train_len == 0 || config.test_len == 0 || config.step == 0)
        throw std::invalid_argument("sliding_windows: all parameters must be >= 1");
    const std::size_t need = config.train_len + config.test_len;
    if (n_samples < need)
        throw std::invalid_argument("sliding_windows: dataset shorter than one window (" +
                                    std::to_string(n_samples) + " < " + std::to_string(need) + ")");
    const std::size_t count = (n_samples - need) / config.step + 1;
    std::vector<WindowSplit> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t start = i * config.step;
        out.push_back({start, start + config.train_len, start + config.train_len,
                       start + config.train_len + config.test_len});
    }
    return out;
}

StratificationResult stratification_check(std::span<const int> labels, const WindowSplit& split,
                                          int k) {
    if (split.test_end > labels.size())
        throw std::invalid_argument("stratification_check: split exceeds label range");
    StratificationResult result;
    auto scan = [&](std::size_t begin, std::size_t end, std::vector<int>& missing) {
        std::vector<bool> seen(static_cast<std::size_t>(k), false);
        for (std::size_t i = begin; i < end; ++i) seen[static_cast<std::size_t>(labels[i])] = true;
        for (int c = 0; c < k; ++c)
            if (!seen[static_cast<std::size_t>(c)]) missing.push_back(c);
    };
    scan(split.train_begin, split.train_end, result.missing_train);
    scan(split.test_begin, split.test_end, result.missing_test);
    result.ok = result.missing_train.empty() && result.missing_test.empty();
    return result;
}

std::int64_t ConfusionMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

std::int64_t ConfusionMatrix::row_sum(int t) const {
    std::int64_t s = 0;
    for (int p = 0; p < k; ++p) s += at(t, p);
    return s;
}

std::int64_t ConfusionMatrix::col_sum(int p) const {
    std::int64_t s = 0;
    for (int t = 0; t < k; ++t) s += at(t, p);
    return s;
}

void ConfusionMatrix::add(const ConfusionMatrix& other) {
    if (other.k != k) throw std::invalid_argument("confusion: class count mismatch");
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
}

ConfusionMatrix confusion(std::span<const int> y_true, std::span<const int> y_pred, int k) {
    if (y_true.size() != y_pred.size())
        throw std::invalid_argument("confusion: length mismatch");
    ConfusionMatrix cm(k);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        if (y_true[i] < 0 || y_true[i] >= k || y_pred[i] < 0 || y_pred[i] >= k)
            throw std::invalid_argument("confusion: label out of range at index " +
                                        std::to_string(i));
        cm.at(y_true[i], y_pred[i]) += 1;
    }
    return cm;
}

double accuracy(const ConfusionMatrix& cm) {
    const std::int64_t total = cm.total();
    if (total == 0) throw std::invalid_argument("accuracy: empty confusion matrix");
    std::int64_t trace = 0;
    for (int c = 0; c < cm.k; ++c) trace += cm.at(c, c);
    return static_cast<double>(trace) / static_cast<double>(total);
}

ClassificationReport report(const ConfusionMatrix& cm) {
    const std::int64_t total = cm.total();
    if (total == 0) throw std::invalid_argument("report: empty confusion matrix");

    ClassificationReport rep;
    rep.accuracy = accuracy(cm);
    rep.per_class.resize(static_cast<std::size_t>(cm.k));

    double sum_p = 0.0, sum_r = 0.0, sum_f = 0.0;
    double wsum_p = 0.0, wsum_r = 0.0, wsum_f = 0.0;
    for (int c = 0; c < cm.k; ++c) {
        ClassScores& s = rep.per_class[static_cast<std::size_t>(c)];
        const std::int64_t col = cm.col_sum(c);
        const std::int64_t row = cm.row_sum(c);
        const std::int64_t hit = cm.at(c, c);
        s.support = row;
        if (col == 0) {
            s.precision = 0.0;
            s.degenerate = true;
        } else {
            s.precision = static_cast<double>(hit) / static_cast<double>(col);
        }
        if (row == 0) {
            s.recall = 0.0;
            s.degenerate = true;
        } else {
            s.recall = static_cast<double>(hit) / static_cast<double>(row);
        }
        if (s.precision + s.recall == 0.0) {
            s.f1 = 0.0;
            s.degenerate = true;
        } else {
            s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
        }
        sum_p += s.precision;
        sum_r += s.recall;
        sum_f += s.f1;
        const double w = static_cast<double>(row);
        wsum_p += s.precision * w;
        wsum_r += s.recall * w;
        wsum_f += s.f1 * w;
    }
    const double k = static_cast<double>(cm.k);
    rep.macro_precision = sum_p / k;
    rep.macro_recall = sum_r / k;
    rep.macro_f1 = sum_f / k;
    rep.weighted_precision = wsum_p / static_cast<double>(total);
    rep.weighted_recall = wsum_r / static_cast<double>(total);
    rep.weighted_f1 = wsum_f / static_cast<double>(total);
    return rep;
}

AucResult roc_auc_ovr(std::span<const int> y_true, const Matrix& scores) {
    if (y_true.size() != scores.rows)
        throw std::invalid_argument("roc_auc_ovr: label/score length mismatch");
    const int k = static_cast<int>(scores.cols);
    AucResult out;
    out.per_class.resize(static_cast<std::size_t>(k));

    std::vector<std::size_t> order(y_true.size());
    double macro_sum = 0.0;
    int defined = 0;
    for (int c = 0; c < k; ++c) {
        std::size_t n_pos = 0;
        for (int y : y_true)
            if (y == c) ++n_pos;
        const std::size_t n_neg = y_true.size() - n_pos;
        if (n_pos == 0 || n_neg == 0) continue;  // AUC undefined for this class

        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return scores.at(a, static_cast<std::size_t>(c)) <
                   scores.at(b, static_cast<std::size_t>(c));
        });

        // Rank sum of positives with average ranks over score ties.
        double rank_sum_pos = 0.0;
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j + 1 < order.size() &&
                   scores.at(order[j + 1], static_cast<std::size_t>(c)) ==
                       scores.at(order[i], static_cast<std::size_t>(c)))
                ++j;
            const double avg_rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
            for (std::size_t t = i; t <= j; ++t)
                if (y_true[order[t]] == c) rank_sum_pos += avg_rank;
            i = j + 1;
        }
        const double np = static_cast<double>(n_pos);
        const double nn = static_cast<double>(n_neg);
        const double auc = (rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn);
        out.per_class[static_cast<std::size_t>(c)] = auc;
        macro_sum += auc;
        ++defined;
    }
    out.macro = defined ? macro_sum / defined : 0.0;
    return out;
}

// ---------------------------------------------------------------------------
// run_cv
// ---------------------------------------------------------------------------

namespace {

ClassifierModel train_one(ModelKind kind, const LabeledDataset& train, const ModelsConfig& models,
                          std::uint64_t model_seed, unsigned threads) {
    switch (kind) {
        case ModelKind::logistic: return train_logistic(train, models.logistic);
        case ModelKind::forest: return train_forest(train, models.forest, model_seed, threads);
        case ModelKind::gbt: return train_gbt(train, models.gbt, threads);
    }
    throw std::logic_error("train_one: bad kind");
}

json report_to_json(const ClassificationReport& rep) {
    json j;
    j["accuracy"] = rep.accuracy;
    j["per_class"] = json::array();
    for (const auto& s : rep.per_class)
        j["per_class"].push_back({{"precision", s.precision},
                                  {"recall", s.recall},
                                  {"f1", s.f1},
                                  {"support", s.support},
                                  {"degenerate", s.degenerate}});
    j["macro"] = {{"precision", rep.macro_precision},
                  {"recall", rep.macro_recall},
                  {"f1", rep.macro_f1}};
    j["weighted"] = {{"precision", rep.weighted_precision},
                     {"recall", rep.weighted_recall},
                     {"f1", rep.weighted_f1}};
    return j;
}

json auc_to_json(const AucResult& auc) {
    json j;
    j["per_class"] = json::array();
    for (const auto& a : auc.per_class) {
        if (a)
            j["per_class"].push_back(*a);
        else
            j["per_class"].push_back(nullptr);
    }
    j["macro"] = auc.macro;
    return j;
}

json confusion_to_json(const ConfusionMatrix& cm) {
    json rows = json::array();
    for (int t = 0; t < cm.k; ++t) {
        json row = json::array();
        for (int p = 0; p < cm.k; ++p) row.push_back(cm.at(t, p));
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

RunReport run_cv(const Matrix& features, const std::vector<int>& labels,
                 const std::vector<std::string>& class_names, const ModelsConfig& models,
                 const WindowConfig& windows, std::uint64_t seed, unsigned threads,
                 std::ostream* warnings) {
    if (features.rows != labels.size())
        throw std::invalid_argument("run_cv: feature/label length mismatch");
    if (models.run.empty()) throw std::invalid_argument("run_cv: no models configured");
    const int k = static_cast<int>(class_names.size());

    const std::vector<WindowSplit> splits = sliding_windows(features.rows, windows);
    RunReport result;
    result.seed = seed;
    result.window_config = windows;
    for (ModelKind kind : models.run) result.model_keys.push_back(model_kind_key(kind));

    std::vector<std::optional<StratificationResult>> usable(splits.size());
    for (std::size_t w = 0; w < splits.size(); ++w) {
        const StratificationResult sr = stratification_check(labels, splits[w], k);
        if (sr.ok) {
            usable[w] = sr;
        } else {
            result.skipped.push_back({w, splits[w], sr.missing_train, sr.missing_test});
            if (warnings) {
                *warnings << "warning: skipping window " << w << " (missing classes: train=[";
                for (std::size_t i = 0; i < sr.missing_train.size(); ++i)
                    *warnings << (i ? " " : "") << sr.missing_train[i];
                *warnings << "] test=[";
                for (std::size_t i = 0; i < sr.missing_test.size(); ++i)
                    *warnings << (i ? " " : "") << sr.missing_test[i];
                *warnings << "])\n";
            }
        }
    }

    std::vector<std::size_t> active;
    for (std::size_t w = 0; w < splits.size(); ++w)
        if (usable[w]) active.push_back(w);
    if (active.empty()) throw std::runtime_error("run_cv: zero usable windows");

    struct WindowOutcome {
        std::vector<ModelWindowResult> per_model;
        std::vector<Matrix> test_scores;     // [model] n_test x K
        std::vector<int> test_labels;
    };
    std::vector<WindowOutcome> outcomes(active.size());

    // Windows are independent; sub-seeds come from (seed, window, model), so
    // the pooled result does not depend on scheduling.
    parallel_for(active.size(), threads, [&](std::size_t a) {
        const std::size_t w = active[a];
        const WindowSplit& split = splits[w];
        const std::size_t n_train = split.train_end - split.train_begin;
        const std::size_t n_test = split.test_end - split.test_begin;

        const MatrixScaling scaling = fit_minmax(features, split.train_begin, split.train_end);

        LabeledDataset train;
        train.class_names = class_names;
        train.features = Matrix(n_train, features.cols);
        train.labels.assign(labels.begin() + static_cast<std::ptrdiff_t>(split.train_begin),
                            labels.begin() + static_cast<std::ptrdiff_t>(split.train_end));
        Matrix test(n_test, features.cols);
        for (std::size_t c = 0; c < features.cols; ++c) {
            const ScalingParams p = scaling.per_column[c];
            const double span = p.max - p.min;
            for (std::size_t r = 0; r < n_train; ++r)
                train.features.at(r, c) =
                    span > 0.0 ? (features.at(split.train_begin + r, c) - p.min) / span : 0.0;
            for (std::size_t r = 0; r < n_test; ++r)
                test.at(r, c) =
                    span > 0.0 ? (features.at(split.test_begin + r, c) - p.min) / span : 0.0;
        }

        WindowOutcome& outcome = outcomes[a];
        outcome.test_labels.assign(labels.begin() + static_cast<std::ptrdiff_t>(split.test_begin),
                                   labels.begin() + static_cast<std::ptrdiff_t>(split.test_end));

        const std::uint64_t window_seed = derive_seed(seed, 0x57494E00ULL + w);
        for (std::size_t m = 0; m < models.run.size(); ++m) {
            const ClassifierModel model =
                train_one(models.run[m], train, models, derive_seed(window_seed, m), 1);

            Matrix scores(n_test, static_cast<std::size_t>(k));
            std::vector<int> predictions(n_test);
            for (std::size_t r = 0; r < n_test; ++r) {
                const std::vector<double> p = predict_proba(model, test.row(r));
                for (std::size_t c = 0; c < p.size(); ++c) scores.at(r, c) = p[c];
                predictions[r] = argmax_lowest(p);
            }

            ModelWindowResult mw;
            mw.cm = confusion(outcome.test_labels, predictions, k);
            mw.rep = report(mw.cm);
            mw.auc = roc_auc_ovr(outcome.test_labels, scores);
            outcome.per_model.push_back(std::move(mw));
            outcome.test_scores.push_back(std::move(scores));
        }
    });

    // Pool in window order.
    result.aggregate.assign(models.run.size(), ModelAggregate{});
    std::vector<std::vector<int>> pooled_labels(models.run.size());
    std::vector<std::vector<double>> pooled_scores(models.run.size());
    for (std::size_t m = 0; m < models.run.size(); ++m)
        result.aggregate[m].pooled_cm = ConfusionMatrix(k);

    for (std::size_t a = 0; a < active.size(); ++a) {
        result.windows.emplace_back(active[a], splits[active[a]]);
        result.per_window.push_back(outcomes[a].per_model);
        for (std::size_t m = 0; m < models.run.size(); ++m) {
            result.aggregate[m].pooled_cm.add(outcomes[a].per_model[m].cm);
            pooled_labels[m].insert(pooled_labels[m].end(), outcomes[a].test_labels.begin(),
                                    outcomes[a].test_labels.end());
            const Matrix& s = outcomes[a].test_scores[m];
            pooled_scores[m].insert(pooled_scores[m].end(), s.data.begin(), s.data.end());
        }
    }
    for (std::size_t m = 0; m < models.run.size(); ++m) {
        result.aggregate[m].rep = report(result.aggregate[m].pooled_cm);
        Matrix scores;
        scores.rows = pooled_labels[m].size();
        scores.cols = static_cast<std::size_t>(k);
        scores.data = std::move(pooled_scores[m]);
        result.aggregate[m].pooled_auc = roc_auc_ovr(pooled_labels[m], scores);
    }
    return result;
}

std::string run_report_to_json(const RunReport& report) {
    json doc;
    doc["seed"] = report.seed;
    doc["config"] = {{"train_len", report.window_config.train_len},
                     {"test_len", report.window_config.test_len},
                     {"step", report.window_config.step},
                     {"models", report.model_keys}};
    doc["windows"] = json::array();
    for (std::size_t a = 0; a < report.windows.size(); ++a) {
        const auto& [index, split] = report.windows[a];
        json w;
        w["index"] = index;
        w["range"] = {{"train", {split.train_begin, split.train_end}},
                      {"test", {split.test_begin, split.test_end}}};
        w["per_model"] = json::object();
        for (std::size_t m = 0; m < report.model_keys.size(); ++m) {
            const ModelWindowResult& mw = report.per_window[a][m];
            w["per_model"][report.model_keys[m]] = {{"report", report_to_json(mw.rep)},
                                                    {"auc", auc_to_json(mw.auc)},
                                                    {"confusion", confusion_to_json(mw.cm)}};
        }
        doc["windows"].push_back(std::move(w));
    }
    doc["skipped_windows"] = json::array();
    for (const auto& s : report.skipped)
        doc["skipped_windows"].push_back({{"index", s.index},
                                          {"missing_train", s.missing_train},
                                          {"missing_test", s.missing_test}});
    doc["aggregate"] = {{"per_model", json::object()}};
    for (std::size_t m = 0; m < report.model_keys.size(); ++m) {
        const ModelAggregate& agg = report.aggregate[m];
        doc["aggregate"]["per_model"][report.model_keys[m]] = {
            {"confusion", confusion_to_json(agg.pooled_cm)},
            {"report", report_to_json(agg.rep)},
            {"auc", auc_to_json(agg.pooled_auc)}};
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Comparison
// ---------------------------------------------------------------------------

std::vector<ComparisonRow> compare_models(std::vector<ComparisonRow> rows) {
    std::sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
        if (a.accuracy != b.accuracy) return a.accuracy > b.accuracy;
        return a.model < b.model;
    });
    return rows;
}

std::vector<ComparisonRow> comparison_from_run(const RunReport& report) {
    std::vector<ComparisonRow> rows;
    for (std::size_t m = 0; m < report.model_keys.size(); ++m) {
        const ClassificationReport& rep = report.aggregate[m].rep;
        rows.push_back({model_display_name(model_kind_from_key(report.model_keys[m])),
                        rep.accuracy, rep.macro_precision, rep.macro_recall, rep.macro_f1});
    }
    return compare_models(std::move(rows));
}

namespace {

std::string percent(double fraction, int decimals) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.*f%%", decimals, fraction * 100.0);
    return buf;
}

}  // namespace

std::string format_comparison_table(const std::vector<ComparisonRow>& rows) {
    if (rows.empty()) throw std::invalid_argument("format_comparison_table: empty model list");
    std::size_t name_width = std::string("Model").size();
    for (const auto& r : rows) name_width = std::max(name_width, r.model.size());

    std::ostringstream out;
    auto pad = [&](const std::string& s, std::size_t width) {
        out << s;
        for (std::size_t i = s.size(); i < width; ++i) out << ' ';
    };
    pad("Model", name_width + 2);
    out << "Accuracy  Precision  Recall  F1-Score\n";
    for (const auto& r : rows) {
        pad(r.model, name_width + 2);
        pad(percent(r.accuracy, 2), 10);
        pad(percent(r.macro_precision, 0), 11);
        pad(percent(r.macro_recall, 0), 8);
        out << percent(r.macro_f1, 0) << '\n';
    }
    return out.str();
}

void emit_comparison_csv(const std::vector<ComparisonRow>& rows, std::ostream& out) {
    out << "model,accuracy,macro_precision,macro_recall,macro_f1\n";
    for (const auto& r : rows)
        out << r.model << ',' << format_double(r.accuracy) << ','
            << format_double(r.macro_precision) << ',' << format_double(r.macro_recall) << ','
            << format_double(r.macro_f1) << '\n';
}

}  // namespace solarcast
