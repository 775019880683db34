#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "solarcast/evaluation.hpp"
#include "solarcast/synth.hpp"

namespace solarcast {

/// Config or usage problems; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Minimal TOML-style file: [section] / [section.sub] headers, key = value
/// lines, '#' comments. Values: "string", number, true/false, or a
/// single-line array of numbers or strings.
class ConfigFile {
public:
    static ConfigFile parse(std::istream& in);
    static ConfigFile parse_file(const std::string& path);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_number(const std::string& key, double fallback) const;
    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::vector<std::string> get_string_array(const std::string& key,
                                              std::vector<std::string> fallback) const;
    std::vector<double> get_number_array(const std::string& key,
                                         std::vector<double> fallback) const;
    std::vector<std::string> keys() const;

private:
    struct Value {
        enum class Type { string, number, boolean, string_array, number_array } type;
        std::string text;
        double number = 0.0;
        bool boolean = false;
        std::vector<std::string> strings;
        std::vector<double> numbers;
    };
    const Value* find(const std::string& key) const;
    std::map<std::string, Value> values_;
};

struct IngestConfig {
    std::string file;  // empty: use the run directory's synth output
    std::string timestamp_column = "timestamp";
    std::vector<std::string> continuous;
    std::vector<std::string> categorical;
    std::string merge_file;  // optional second source joined by nearest timestamp
    std::string merge_timestamp_column = "timestamp";
    std::vector<std::string> merge_continuous;
    std::vector<std::string> merge_categorical;
    std::int64_t merge_tolerance_s = 1800;
};

struct PreprocessSettings {
    std::vector<std::string> impute_linear;  // empty: every continuous column
    std::vector<std::string> impute_ffill;
    std::vector<std::string> outlier_columns;
    std::string outlier_method = "iqr";  // iqr | zscore | none
    double iqr_k = 1.5;
    double z_threshold = 3.0;
    std::string repair = "interpolate";  // interpolate | remove
    std::vector<std::string> lag_columns;
    std::vector<int> lags;
    int window_len = 24;
    int horizon = 1;
    std::string target = "power_kwh";
    int classes = 2;
    std::string label_mode = "quantile";  // quantile | fixed
    std::vector<double> thresholds;       // fixed mode cut points
};

struct EdaSettings {
    std::string histogram_column;  // empty: the preprocess target
    int bins = 30;
    bool kde = true;
    std::vector<std::string> correlation_columns;  // empty: every continuous column
};

struct PipelineConfig {
    std::optional<std::uint64_t> seed;  // file [seed] or --seed; mandatory before running
    std::string output_dir = "out";
    synth::SynthConfig synth;
    IngestConfig ingest;
    PreprocessSettings preprocess;
    ModelsConfig models;
    WindowConfig evaluation;
    EdaSettings eda;
};

/// Parses and resolves a pipeline config; unknown keys warn on stderr.
PipelineConfig load_pipeline_config(const std::string& path);

/// Resolved-config echo (ordered keys, seed included). Identical configs
/// produce identical bytes, so this string also names the run directory.
std::string canonical_config_json(const PipelineConfig& config);

std::uint64_t fnv1a64(std::string_view bytes);

/// "run-<16 hex digits>" from the canonical config + seed.
std::string run_dir_name(const PipelineConfig& config);

}  // namespace solarcast
