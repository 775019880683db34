#include "solarcast/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace solarcast {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::string strip_comment(const std::string& line) {
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_quotes = !in_quotes;
        if (line[i] == '#' && !in_quotes) return line.substr(0, i);
    }
    return line;
}

std::optional<double> parse_number(const std::string& text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::vector<std::string> split_array_items(const std::string& inner) {
    std::vector<std::string> items;
    std::string current;
    bool in_quotes = false;
    for (char ch : inner) {
        if (ch == '"') in_quotes = !in_quotes;
        if (ch == ',' && !in_quotes) {
            items.push_back(trim(current));
            current.clear();
        } else {
            current.push_back(ch);
        }
    }
    const std::string last = trim(current);
    if (!last.empty()) items.push_back(last);
    return items;
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in) {
    ConfigFile out;
    std::string section;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) + ": malformed section");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key_part = trim(line.substr(0, eq));
        const std::string value_part = trim(line.substr(eq + 1));
        if (key_part.empty() || value_part.empty())
            throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
        const std::string key = section.empty() ? key_part : section + "." + key_part;

        Value v{};
        if (value_part.front() == '"') {
            if (value_part.size() < 2 || value_part.back() != '"')
                throw ConfigError("config line " + std::to_string(line_no) + ": unterminated string");
            v.type = Value::Type::string;
            v.text = value_part.substr(1, value_part.size() - 2);
        } else if (value_part == "true" || value_part == "false") {
            v.type = Value::Type::boolean;
            v.boolean = value_part == "true";
        } else if (value_part.front() == '[') {
            if (value_part.back() != ']')
                throw ConfigError("config line " + std::to_string(line_no) + ": unterminated array");
            const auto items = split_array_items(value_part.substr(1, value_part.size() - 2));
            const bool strings = !items.empty() && items.front().front() == '"';
            if (strings) {
                v.type = Value::Type::string_array;
                for (const auto& item : items) {
                    if (item.size() < 2 || item.front() != '"' || item.back() != '"')
                        throw ConfigError("config line " + std::to_string(line_no) +
                                          ": mixed or malformed array");
                    v.strings.push_back(item.substr(1, item.size() - 2));
                }
            } else {
                v.type = Value::Type::number_array;
                for (const auto& item : items) {
                    const auto num = parse_number(item);
                    if (!num)
                        throw ConfigError("config line " + std::to_string(line_no) +
                                          ": bad array number '" + item + "'");
                    v.numbers.push_back(*num);
                }
            }
        } else {
            const auto num = parse_number(value_part);
            if (!num)
                throw ConfigError("config line " + std::to_string(line_no) + ": bad value '" +
                                  value_part + "'");
            v.type = Value::Type::number;
            v.number = *num;
        }
        out.values_[key] = std::move(v);
    }
    return out;
}

ConfigFile ConfigFile::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    return parse(in);
}

const ConfigFile::Value* ConfigFile::find(const std::string& key) const {
    auto it = values_.find(key);
    return it == values_.end() ? nullptr : &it->second;
}

bool ConfigFile::has(const std::string& key) const { return find(key) != nullptr; }

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->type != Value::Type::string) throw ConfigError("config: '" + key + "' must be a string");
    return v->text;
}

double ConfigFile::get_number(const std::string& key, double fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->type != Value::Type::number) throw ConfigError("config: '" + key + "' must be a number");
    return v->number;
}

std::int64_t ConfigFile::get_int(const std::string& key, std::int64_t fallback) const {
    const double v = get_number(key, static_cast<double>(fallback));
    const auto i = static_cast<std::int64_t>(v);
    if (static_cast<double>(i) != v) throw ConfigError("config: '" + key + "' must be an integer");
    return i;
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->type != Value::Type::boolean) throw ConfigError("config: '" + key + "' must be a bool");
    return v->boolean;
}

std::vector<std::string> ConfigFile::get_string_array(const std::string& key,
                                                      std::vector<std::string> fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->type == Value::Type::number_array && v->numbers.empty()) return {};  // "[]"
    if (v->type != Value::Type::string_array)
        throw ConfigError("config: '" + key + "' must be a string array");
    return v->strings;
}

std::vector<double> ConfigFile::get_number_array(const std::string& key,
                                                 std::vector<double> fallback) const {
    const Value* v = find(key);
    if (!v) return fallback;
    if (v->type != Value::Type::number_array)
        throw ConfigError("config: '" + key + "' must be a number array");
    return v->numbers;
}

std::vector<std::string> ConfigFile::keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_) out.push_back(k);
    return out;
}

namespace {

ModelKind model_kind_checked(const std::string& key) {
    try {
        return model_kind_from_key(key);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

const std::set<std::string> kKnownKeys = {
    "seed",
    "output.dir",
    "synth.latitude_deg", "synth.start", "synth.n_hours", "synth.cloud_persistence",
    "synth.cloud_noise_sd", "synth.panel_rated_kw", "synth.temp_coeff_per_c", "synth.noise_sd_kw",
    "ingest.file", "ingest.timestamp_column", "ingest.continuous", "ingest.categorical",
    "ingest.merge_file", "ingest.merge_timestamp_column", "ingest.merge_continuous",
    "ingest.merge_categorical", "ingest.merge_tolerance_s",
    "preprocess.impute_linear", "preprocess.impute_ffill", "preprocess.outlier_columns",
    "preprocess.outlier_method", "preprocess.iqr_k", "preprocess.z_threshold", "preprocess.repair",
    "preprocess.lag_columns", "preprocess.lags", "preprocess.window_len", "preprocess.horizon",
    "preprocess.target", "preprocess.classes", "preprocess.label_mode", "preprocess.thresholds",
    "models.run",
    "models.logistic.learning_rate", "models.logistic.max_iters", "models.logistic.tolerance",
    "models.logistic.l2",
    "models.forest.n_trees", "models.forest.max_depth", "models.forest.min_samples_leaf",
    "models.forest.features_per_split",
    "models.gbt.rounds", "models.gbt.max_depth", "models.gbt.learning_rate", "models.gbt.lambda",
    "models.gbt.gamma", "models.gbt.min_child_weight",
    "evaluation.train_len", "evaluation.test_len", "evaluation.step",
    "eda.histogram_column", "eda.bins", "eda.kde", "eda.correlation_columns",
};

}  // namespace

PipelineConfig load_pipeline_config(const std::string& path) {
    const ConfigFile file = ConfigFile::parse_file(path);
    for (const auto& key : file.keys())
        if (!kKnownKeys.count(key))
            std::cerr << "warning: unknown config key '" << key << "' ignored\n";

    PipelineConfig cfg;
    if (file.has("seed")) cfg.seed = static_cast<std::uint64_t>(file.get_int("seed", 0));
    cfg.output_dir = file.get_string("output.dir", cfg.output_dir);

    cfg.synth.latitude_deg = file.get_number("synth.latitude_deg", cfg.synth.latitude_deg);
    const std::string start = file.get_string("synth.start", cfg.synth.start.to_iso8601());
    try {
        cfg.synth.start = Timestamp::parse_iso8601(start);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: synth.start: ") + e.what());
    }
    cfg.synth.n_hours = file.get_int("synth.n_hours", cfg.synth.n_hours);
    cfg.synth.cloud_persistence = file.get_number("synth.cloud_persistence", cfg.synth.cloud_persistence);
    cfg.synth.cloud_noise_sd = file.get_number("synth.cloud_noise_sd", cfg.synth.cloud_noise_sd);
    cfg.synth.panel_rated_kw = file.get_number("synth.panel_rated_kw", cfg.synth.panel_rated_kw);
    cfg.synth.temp_coeff_per_c = file.get_number("synth.temp_coeff_per_c", cfg.synth.temp_coeff_per_c);
    cfg.synth.noise_sd_kw = file.get_number("synth.noise_sd_kw", cfg.synth.noise_sd_kw);

    cfg.ingest.file = file.get_string("ingest.file", "");
    cfg.ingest.timestamp_column = file.get_string("ingest.timestamp_column", cfg.ingest.timestamp_column);
    cfg.ingest.continuous = file.get_string_array("ingest.continuous", {});
    cfg.ingest.categorical = file.get_string_array("ingest.categorical", {});
    cfg.ingest.merge_file = file.get_string("ingest.merge_file", "");
    cfg.ingest.merge_timestamp_column =
        file.get_string("ingest.merge_timestamp_column", cfg.ingest.merge_timestamp_column);
    cfg.ingest.merge_continuous = file.get_string_array("ingest.merge_continuous", {});
    cfg.ingest.merge_categorical = file.get_string_array("ingest.merge_categorical", {});
    cfg.ingest.merge_tolerance_s = file.get_int("ingest.merge_tolerance_s", cfg.ingest.merge_tolerance_s);

    auto& pp = cfg.preprocess;
    pp.impute_linear = file.get_string_array("preprocess.impute_linear", {});
    pp.impute_ffill = file.get_string_array("preprocess.impute_ffill", {});
    pp.outlier_columns = file.get_string_array("preprocess.outlier_columns", {});
    pp.outlier_method = file.get_string("preprocess.outlier_method", pp.outlier_method);
    pp.iqr_k = file.get_number("preprocess.iqr_k", pp.iqr_k);
    pp.z_threshold = file.get_number("preprocess.z_threshold", pp.z_threshold);
    pp.repair = file.get_string("preprocess.repair", pp.repair);
    pp.lag_columns = file.get_string_array("preprocess.lag_columns", {});
    for (double lag : file.get_number_array("preprocess.lags", {}))
        pp.lags.push_back(static_cast<int>(lag));
    pp.window_len = static_cast<int>(file.get_int("preprocess.window_len", pp.window_len));
    pp.horizon = static_cast<int>(file.get_int("preprocess.horizon", pp.horizon));
    pp.target = file.get_string("preprocess.target", pp.target);
    pp.classes = static_cast<int>(file.get_int("preprocess.classes", pp.classes));
    pp.label_mode = file.get_string("preprocess.label_mode", pp.label_mode);
    pp.thresholds = file.get_number_array("preprocess.thresholds", {});
    if (pp.outlier_method != "iqr" && pp.outlier_method != "zscore" && pp.outlier_method != "none")
        throw ConfigError("config: preprocess.outlier_method must be iqr, zscore, or none");
    if (pp.repair != "interpolate" && pp.repair != "remove")
        throw ConfigError("config: preprocess.repair must be interpolate or remove");
    if (pp.label_mode != "quantile" && pp.label_mode != "fixed")
        throw ConfigError("config: preprocess.label_mode must be quantile or fixed");

    cfg.models.run.clear();
    for (const auto& key :
         file.get_string_array("models.run", {"logistic", "forest", "gbt"}))
        cfg.models.run.push_back(model_kind_checked(key));
    if (cfg.models.run.empty()) throw ConfigError("config: models.run must name at least one model");
    auto& lp = cfg.models.logistic;
    lp.learning_rate = file.get_number("models.logistic.learning_rate", lp.learning_rate);
    lp.max_iters = static_cast<int>(file.get_int("models.logistic.max_iters", lp.max_iters));
    lp.tolerance = file.get_number("models.logistic.tolerance", lp.tolerance);
    lp.l2 = file.get_number("models.logistic.l2", lp.l2);
    auto& fp = cfg.models.forest;
    fp.n_trees = static_cast<int>(file.get_int("models.forest.n_trees", fp.n_trees));
    fp.max_depth = static_cast<int>(file.get_int("models.forest.max_depth", fp.max_depth));
    fp.min_samples_leaf =
        static_cast<int>(file.get_int("models.forest.min_samples_leaf", fp.min_samples_leaf));
    fp.features_per_split =
        static_cast<int>(file.get_int("models.forest.features_per_split", fp.features_per_split));
    auto& gp = cfg.models.gbt;
    gp.rounds = static_cast<int>(file.get_int("models.gbt.rounds", gp.rounds));
    gp.max_depth = static_cast<int>(file.get_int("models.gbt.max_depth", gp.max_depth));
    gp.learning_rate = file.get_number("models.gbt.learning_rate", gp.learning_rate);
    gp.lambda = file.get_number("models.gbt.lambda", gp.lambda);
    gp.gamma = file.get_number("models.gbt.gamma", gp.gamma);
    gp.min_child_weight = file.get_number("models.gbt.min_child_weight", gp.min_child_weight);

    cfg.evaluation.train_len =
        static_cast<std::size_t>(file.get_int("evaluation.train_len", 720));
    cfg.evaluation.test_len = static_cast<std::size_t>(file.get_int("evaluation.test_len", 168));
    cfg.evaluation.step = static_cast<std::size_t>(file.get_int("evaluation.step", 168));

    cfg.eda.histogram_column = file.get_string("eda.histogram_column", "");
    cfg.eda.bins = static_cast<int>(file.get_int("eda.bins", cfg.eda.bins));
    cfg.eda.kde = file.get_bool("eda.kde", cfg.eda.kde);
    cfg.eda.correlation_columns = file.get_string_array("eda.correlation_columns", {});
    return cfg;
}

std::string canonical_config_json(const PipelineConfig& config) {
    using json = nlohmann::ordered_json;
    json doc;
    doc["seed"] = config.seed ? json(*config.seed) : json(nullptr);
    doc["output"] = {{"dir", config.output_dir}};
    doc["synth"] = {{"latitude_deg", config.synth.latitude_deg},
                    {"start", config.synth.start.to_iso8601()},
                    {"n_hours", config.synth.n_hours},
                    {"cloud_persistence", config.synth.cloud_persistence},
                    {"cloud_noise_sd", config.synth.cloud_noise_sd},
                    {"panel_rated_kw", config.synth.panel_rated_kw},
                    {"temp_coeff_per_c", config.synth.temp_coeff_per_c},
                    {"noise_sd_kw", config.synth.noise_sd_kw}};
    doc["ingest"] = {{"file", config.ingest.file},
                     {"timestamp_column", config.ingest.timestamp_column},
                     {"continuous", config.ingest.continuous},
                     {"categorical", config.ingest.categorical},
                     {"merge_file", config.ingest.merge_file},
                     {"merge_timestamp_column", config.ingest.merge_timestamp_column},
                     {"merge_continuous", config.ingest.merge_continuous},
                     {"merge_categorical", config.ingest.merge_categorical},
                     {"merge_tolerance_s", config.ingest.merge_tolerance_s}};
    doc["preprocess"] = {{"impute_linear", config.preprocess.impute_linear},
                         {"impute_ffill", config.preprocess.impute_ffill},
                         {"outlier_columns", config.preprocess.outlier_columns},
                         {"outlier_method", config.preprocess.outlier_method},
                         {"iqr_k", config.preprocess.iqr_k},
                         {"z_threshold", config.preprocess.z_threshold},
                         {"repair", config.preprocess.repair},
                         {"lag_columns", config.preprocess.lag_columns},
                         {"lags", config.preprocess.lags},
                         {"window_len", config.preprocess.window_len},
                         {"horizon", config.preprocess.horizon},
                         {"target", config.preprocess.target},
                         {"classes", config.preprocess.classes},
                         {"label_mode", config.preprocess.label_mode},
                         {"thresholds", config.preprocess.thresholds}};
    std::vector<std::string> run_keys;
    for (ModelKind kind : config.models.run) run_keys.push_back(model_kind_key(kind));
    doc["models"] = {
        {"run", run_keys},
        {"logistic",
         {{"learning_rate", config.models.logistic.learning_rate},
          {"max_iters", config.models.logistic.max_iters},
          {"tolerance", config.models.logistic.tolerance},
          {"l2", config.models.logistic.l2}}},
        {"forest",
         {{"n_trees", config.models.forest.n_trees},
          {"max_depth", config.models.forest.max_depth},
          {"min_samples_leaf", config.models.forest.min_samples_leaf},
          {"features_per_split", config.models.forest.features_per_split}}},
        {"gbt",
         {{"rounds", config.models.gbt.rounds},
          {"max_depth", config.models.gbt.max_depth},
          {"learning_rate", config.models.gbt.learning_rate},
          {"lambda", config.models.gbt.lambda},
          {"gamma", config.models.gbt.gamma},
          {"min_child_weight", config.models.gbt.min_child_weight}}}};
    doc["evaluation"] = {{"train_len", config.evaluation.train_len},
                         {"test_len", config.evaluation.test_len},
                         {"step", config.evaluation.step}};
    doc["eda"] = {{"histogram_column", config.eda.histogram_column},
                  {"bins", config.eda.bins},
                  {"kde", config.eda.kde},
                  {"correlation_columns", config.eda.correlation_columns}};
    return doc.dump(2) + "\n";
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char b : bytes) {
        hash ^= b;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string run_dir_name(const PipelineConfig& config) {
    const std::uint64_t hash = fnv1a64(canonical_config_json(config));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "run-%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace solarcast
