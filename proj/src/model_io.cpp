#include "solarcast/models/model.hpp"

#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace solarcast {

using json = nlohmann::ordered_json;

std::string model_kind_key(ModelKind kind) {
    switch (kind) {
        case ModelKind::logistic: return "logistic";
        case ModelKind::forest: return "forest";
        case ModelKind::gbt: return "gbt";
    }
    throw std::logic_error("model_kind_key: bad kind");
}

std::string model_display_name(ModelKind kind) {
    switch (kind) {
        case ModelKind::logistic: return "Logistic Regression";
        case ModelKind::forest: return "Random Forest";
        case ModelKind::gbt: return "Gradient Boosted Trees";
    }
    throw std::logic_error("model_display_name: bad kind");
}

ModelKind model_kind_from_key(const std::string& key) {
    if (key == "logistic") return ModelKind::logistic;
    if (key == "forest") return ModelKind::forest;
    if (key == "gbt") return ModelKind::gbt;
    throw std::invalid_argument("unknown model kind '" + key + "'");
}

ModelKind kind_of(const ClassifierModel& model) {
    if (std::holds_alternative<LogisticModel>(model)) return ModelKind::logistic;
    if (std::holds_alternative<ForestModel>(model)) return ModelKind::forest;
    return ModelKind::gbt;
}

std::vector<double> predict_proba(const ClassifierModel& model, std::span<const double> x) {
    return std::visit([&](const auto& m) { return m.predict_proba(x); }, model);
}

int argmax_lowest(std::span<const double> values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    return static_cast<int>(best);
}

int predict_label(const ClassifierModel& model, std::span<const double> x) {
    const std::vector<double> probs = predict_proba(model, x);
    return argmax_lowest(probs);
}

namespace {

json trees_to_json(const std::vector<Tree>& trees) {
    json out = json::array();
    for (const Tree& tree : trees) {
        json t;
        json feature = json::array(), threshold = json::array(), left = json::array(),
             right = json::array(), value = json::array();
        for (const TreeNode& node : tree.nodes) {
            feature.push_back(node.feature);
            threshold.push_back(node.threshold);
            left.push_back(node.left);
            right.push_back(node.right);
            value.push_back(node.value);
        }
        t["feature"] = std::move(feature);
        t["threshold"] = std::move(threshold);
        t["left"] = std::move(left);
        t["right"] = std::move(right);
        t["value"] = std::move(value);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<Tree> trees_from_json(const json& arr) {
    std::vector<Tree> trees;
    for (const auto& t : arr) {
        Tree tree;
        const std::size_t n = t.at("feature").size();
        tree.nodes.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            tree.nodes[i].feature = t.at("feature")[i].get<int>();
            tree.nodes[i].threshold = t.at("threshold")[i].get<double>();
            tree.nodes[i].left = t.at("left")[i].get<int>();
            tree.nodes[i].right = t.at("right")[i].get<int>();
            tree.nodes[i].value = t.at("value")[i].get<std::vector<double>>();
        }
        trees.push_back(std::move(tree));
    }
    return trees;
}

}  // namespace

std::string model_to_json(const ClassifierModel& model) {
    json doc;
    doc["format_version"] = 1;
    doc["kind"] = model_kind_key(kind_of(model));

    std::visit(
        [&](const auto& m) {
            doc["n_classes"] = m.n_classes;
            doc["n_features"] = m.n_features;
            doc["class_names"] = m.class_names;
        },
        model);

    if (const auto* lm = std::get_if<LogisticModel>(&model)) {
        doc["hyperparams"] = {{"learning_rate", lm->params.learning_rate},
                              {"max_iters", lm->params.max_iters},
                              {"tolerance", lm->params.tolerance},
                              {"l2", lm->params.l2}};
        doc["params"] = {{"weights", lm->weights.data},
                         {"bias", lm->bias},
                         {"iterations_run", lm->iterations_run},
                         {"final_loss", lm->final_loss}};
    } else if (const auto* fm = std::get_if<ForestModel>(&model)) {
        doc["hyperparams"] = {{"n_trees", fm->params.n_trees},
                              {"max_depth", fm->params.max_depth},
                              {"min_samples_leaf", fm->params.min_samples_leaf},
                              {"features_per_split", fm->params.features_per_split},
                              {"seed", fm->seed}};
        doc["params"] = {{"trees", trees_to_json(fm->trees)}};
    } else {
        const auto& gm = std::get<GbtModel>(model);
        doc["hyperparams"] = {{"rounds", gm.params.rounds},
                              {"max_depth", gm.params.max_depth},
                              {"learning_rate", gm.params.learning_rate},
                              {"lambda", gm.params.lambda},
                              {"gamma", gm.params.gamma},
                              {"min_child_weight", gm.params.min_child_weight}};
        doc["params"] = {{"base_score", gm.base_score},
                         {"trees", trees_to_json(gm.trees)},
                         {"train_log_loss", gm.train_log_loss}};
    }
    return doc.dump(2) + "\n";
}

void save_model(const ClassifierModel& model, std::ostream& out) { out << model_to_json(model); }

ClassifierModel model_from_json(const std::string& text) {
    const json doc = json::parse(text);
    if (doc.at("format_version").get<int>() != 1)
        throw std::runtime_error("model: unsupported format_version");
    const ModelKind kind = model_kind_from_key(doc.at("kind").get<std::string>());

    if (kind == ModelKind::logistic) {
        LogisticModel m;
        m.n_classes = doc.at("n_classes").get<int>();
        m.n_features = doc.at("n_features").get<int>();
        m.class_names = doc.at("class_names").get<std::vector<std::string>>();
        const json& hp = doc.at("hyperparams");
        m.params = {hp.at("learning_rate").get<double>(), hp.at("max_iters").get<int>(),
                    hp.at("tolerance").get<double>(), hp.at("l2").get<double>()};
        const json& p = doc.at("params");
        m.weights = Matrix(static_cast<std::size_t>(m.n_classes),
                           static_cast<std::size_t>(m.n_features));
        m.weights.data = p.at("weights").get<std::vector<double>>();
        m.bias = p.at("bias").get<std::vector<double>>();
        m.iterations_run = p.at("iterations_run").get<int>();
        m.final_loss = p.at("final_loss").get<double>();
        if (m.weights.data.size() != m.weights.rows * m.weights.cols)
            throw std::runtime_error("model: weight matrix size mismatch");
        return m;
    }
    if (kind == ModelKind::forest) {
        ForestModel m;
        m.n_classes = doc.at("n_classes").get<int>();
        m.n_features = doc.at("n_features").get<int>();
        m.class_names = doc.at("class_names").get<std::vector<std::string>>();
        const json& hp = doc.at("hyperparams");
        m.params = {hp.at("n_trees").get<int>(), hp.at("max_depth").get<int>(),
                    hp.at("min_samples_leaf").get<int>(), hp.at("features_per_split").get<int>()};
        m.seed = hp.at("seed").get<std::uint64_t>();
        m.trees = trees_from_json(doc.at("params").at("trees"));
        return m;
    }
    GbtModel m;
    m.n_classes = doc.at("n_classes").get<int>();
    m.n_features = doc.at("n_features").get<int>();
    m.class_names = doc.at("class_names").get<std::vector<std::string>>();
    const json& hp = doc.at("hyperparams");
    m.params = {hp.at("rounds").get<int>(),           hp.at("max_depth").get<int>(),
                hp.at("learning_rate").get<double>(), hp.at("lambda").get<double>(),
                hp.at("gamma").get<double>(),         hp.at("min_child_weight").get<double>()};
    const json& p = doc.at("params");
    m.base_score = p.at("base_score").get<double>();
    m.trees = trees_from_json(p.at("trees"));
    m.train_log_loss = p.at("train_log_loss").get<std::vector<double>>();
    return m;
}

ClassifierModel load_model(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

}  // namespace solarcast
