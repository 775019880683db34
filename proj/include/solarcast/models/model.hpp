#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <variant>

#include "solarcast/models/forest.hpp"
#include "solarcast/models/gbt.hpp"
#include "solarcast/models/logistic.hpp"

namespace solarcast {

using ClassifierModel = std::variant<LogisticModel, ForestModel, GbtModel>;

enum class ModelKind { logistic, forest, gbt };

std::string model_kind_key(ModelKind kind);        // "logistic" / "forest" / "gbt"
std::string model_display_name(ModelKind kind);    // "Logistic Regression" / ...
ModelKind model_kind_from_key(const std::string& key);
ModelKind kind_of(const ClassifierModel& model);

std::vector<double> predict_proba(const ClassifierModel& model, std::span<const double> x);

/// Argmax of predict_proba; exact ties resolve to the lowest class index.
int predict_label(const ClassifierModel& model, std::span<const double> x);
int argmax_lowest(std::span<const double> values);

/// Versioned JSON document (kind, hyperparameters, flattened trees / weight
/// matrices). Loading reproduces predictions bit-exactly.
void save_model(const ClassifierModel& model, std::ostream& out);
std::string model_to_json(const ClassifierModel& model);
ClassifierModel load_model(std::istream& in);
ClassifierModel model_from_json(const std::string& text);

}  // namespace solarcast
