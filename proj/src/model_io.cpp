#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hatepol/error.hpp"
#include "hatepol/models.hpp"

namespace hatepol {

using nlohmann::json;

namespace {

json tree_to_json(const DecisionTree& t) {
  json j;
  auto& feature = j["feature"] = json::array();
  auto& threshold = j["threshold"] = json::array();
  auto& left = j["left"] = json::array();
  auto& right = j["right"] = json::array();
  auto& value = j["value"] = json::array();
  auto& samples = j["samples"] = json::array();
  auto& depth = j["depth"] = json::array();
  for (const auto& n : t.nodes) {
    feature.push_back(n.feature);
    threshold.push_back(n.threshold);
    left.push_back(n.left);
    right.push_back(n.right);
    value.push_back(n.hate_fraction);
    samples.push_back(n.samples);
    depth.push_back(n.depth);
  }
  return j;
}

DecisionTree tree_from_json(const json& j) {
  DecisionTree t;
  const auto& feature = j.at("feature");
  const std::size_t n = feature.size();
  for (const char* key : {"threshold", "left", "right", "value", "samples", "depth"}) {
    if (j.at(key).size() != n) throw CorruptFileError(std::string("tree field '") + key + "' has the wrong length");
  }
  if (n == 0) throw CorruptFileError("tree has no nodes");
  t.nodes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& node = t.nodes[i];
    node.feature = feature[i].get<int>();
    node.threshold = j["threshold"][i].get<double>();
    node.left = j["left"][i].get<int>();
    node.right = j["right"][i].get<int>();
    node.hate_fraction = j["value"][i].get<double>();
    node.samples = j["samples"][i].get<std::size_t>();
    node.depth = j["depth"][i].get<int>();
    if (!node.is_leaf()) {
      auto ok = [&](int c) { return c > static_cast<int>(i) && c < static_cast<int>(n); };
      if (!ok(node.left) || !ok(node.right)) throw CorruptFileError("tree child index out of range");
    }
  }
  return t;
}

json nb_to_json(const GaussianNaiveBayes& nb) {
  return {{"log_prior_hate", nb.log_prior_hate}, {"log_prior_normal", nb.log_prior_normal},
          {"mean_hate", nb.mean_hate},           {"var_hate", nb.var_hate},
          {"mean_normal", nb.mean_normal},       {"var_normal", nb.var_normal}};
}

GaussianNaiveBayes nb_from_json(const json& j) {
  GaussianNaiveBayes nb;
  nb.log_prior_hate = j.at("log_prior_hate").get<double>();
  nb.log_prior_normal = j.at("log_prior_normal").get<double>();
  nb.mean_hate = j.at("mean_hate").get<std::vector<double>>();
  nb.var_hate = j.at("var_hate").get<std::vector<double>>();
  nb.mean_normal = j.at("mean_normal").get<std::vector<double>>();
  nb.var_normal = j.at("var_normal").get<std::vector<double>>();
  return nb;
}

json hyperparameters(const TrainConfig& c) {
  json h;
  switch (c.kind) {
    case ModelKind::tree:
      h = {{"max_depth", c.tree.max_depth}, {"min_leaf", c.tree.min_leaf}};
      break;
    case ModelKind::forest:
      h = {{"max_depth", c.tree.max_depth},
           {"min_leaf", c.tree.min_leaf},
           {"n_trees", c.forest.n_trees},
           {"features_per_split", c.forest.features_per_split}};
      break;
    case ModelKind::adaboost:
      h = {{"n_rounds", c.adaboost.n_rounds}, {"base", std::string(to_string(c.adaboost.base))}};
      break;
    case ModelKind::svm:
      h = {{"lambda", c.svm.lambda}, {"epochs", c.svm.epochs}};
      break;
    case ModelKind::mlp:
      h = {{"hidden_width", c.mlp.hidden_width}, {"learning_rate", c.mlp.learning_rate},
           {"epochs", c.mlp.epochs},             {"momentum", c.mlp.momentum},
           {"batch_size", c.mlp.batch_size}};
      break;
  }
  return h;
}

TrainConfig config_from_json(ModelKind kind, const json& h, std::uint64_t seed) {
  TrainConfig c;
  c.kind = kind;
  c.seed = seed;
  switch (kind) {
    case ModelKind::forest:
      c.forest.n_trees = h.at("n_trees").get<std::size_t>();
      c.forest.features_per_split = h.at("features_per_split").get<std::size_t>();
      [[fallthrough]];
    case ModelKind::tree:
      c.tree.max_depth = h.at("max_depth").get<int>();
      c.tree.min_leaf = h.at("min_leaf").get<std::size_t>();
      break;
    case ModelKind::adaboost: {
      c.adaboost.n_rounds = h.at("n_rounds").get<std::size_t>();
      auto base = parse_base_learner(h.at("base").get<std::string>());
      if (!base) throw VersionError("unknown adaboost base learner");
      c.adaboost.base = *base;
      break;
    }
    case ModelKind::svm:
      c.svm.lambda = h.at("lambda").get<double>();
      c.svm.epochs = h.at("epochs").get<std::size_t>();
      break;
    case ModelKind::mlp:
      c.mlp.hidden_width = h.at("hidden_width").get<std::size_t>();
      c.mlp.learning_rate = h.at("learning_rate").get<double>();
      c.mlp.epochs = h.at("epochs").get<std::size_t>();
      c.mlp.momentum = h.at("momentum").get<double>();
      c.mlp.batch_size = h.at("batch_size").get<std::size_t>();
      break;
  }
  return c;
}

json params_to_json(const LearnedParameters& params) {
  return std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DecisionTree>) {
          return {{"tree", tree_to_json(p)}};
        } else if constexpr (std::is_same_v<T, ForestParams>) {
          json trees = json::array();
          for (const auto& t : p.trees) trees.push_back(tree_to_json(t));
          return {{"trees", trees}};
        } else if constexpr (std::is_same_v<T, AdaBoostParams>) {
          json learners = json::array();
          for (const auto& h : p.learners) {
            if (const auto* t = std::get_if<DecisionTree>(&h)) {
              learners.push_back({{"stump", tree_to_json(*t)}});
            } else {
              learners.push_back({{"gaussian_nb", nb_to_json(std::get<GaussianNaiveBayes>(h))}});
            }
          }
          return {{"learners", learners}, {"alphas", p.alphas}, {"errors", p.errors}};
        } else if constexpr (std::is_same_v<T, SvmParams>) {
          return {{"weights", p.weights}, {"bias", p.bias}};
        } else {
          return {{"inputs", p.inputs}, {"hidden", p.hidden}, {"w1", p.w1},
                  {"b1", p.b1},         {"w2", p.w2},         {"b2", p.b2}};
        }
      },
      params);
}

LearnedParameters params_from_json(ModelKind kind, const json& j, std::size_t n_columns) {
  switch (kind) {
    case ModelKind::tree:
      return tree_from_json(j.at("tree"));
    case ModelKind::forest: {
      ForestParams p;
      for (const auto& t : j.at("trees")) p.trees.push_back(tree_from_json(t));
      return p;
    }
    case ModelKind::adaboost: {
      AdaBoostParams p;
      for (const auto& h : j.at("learners")) {
        if (h.contains("stump")) {
          p.learners.emplace_back(tree_from_json(h["stump"]));
        } else {
          p.learners.emplace_back(nb_from_json(h.at("gaussian_nb")));
        }
      }
      p.alphas = j.at("alphas").get<std::vector<double>>();
      p.errors = j.at("errors").get<std::vector<double>>();
      if (p.alphas.size() != p.learners.size()) throw CorruptFileError("adaboost alphas do not match learners");
      return p;
    }
    case ModelKind::svm: {
      SvmParams p;
      p.weights = j.at("weights").get<std::vector<double>>();
      p.bias = j.at("bias").get<double>();
      if (p.weights.size() != n_columns) throw CorruptFileError("svm weight count does not match columns");
      return p;
    }
    case ModelKind::mlp: {
      MlpParams p;
      p.inputs = j.at("inputs").get<std::size_t>();
      p.hidden = j.at("hidden").get<std::size_t>();
      p.w1 = j.at("w1").get<std::vector<double>>();
      p.b1 = j.at("b1").get<std::vector<double>>();
      p.w2 = j.at("w2").get<std::vector<double>>();
      p.b2 = j.at("b2").get<double>();
      if (p.inputs != n_columns || p.w1.size() != p.inputs * p.hidden || p.b1.size() != p.hidden ||
          p.w2.size() != p.hidden)
        throw CorruptFileError("mlp layer shapes are inconsistent");
      return p;
    }
  }
  throw VersionError("unknown model kind");
}

}  // namespace

std::string hyperparameters_json(const TrainConfig& config) { return hyperparameters(config).dump(); }

std::string model_to_json(const Model& model) {
  json doc;
  doc["format_version"] = kModelFormatVersion;
  doc["kind"] = std::string(to_string(model.kind));
  doc["hyperparameters"] = hyperparameters(model.config);
  json meta;
  meta["columns"] = model.metadata.columns;
  meta["seed"] = model.metadata.seed;
  if (model.metadata.standardization) {
    meta["means"] = model.metadata.standardization->means;
    meta["scales"] = model.metadata.standardization->scales;
  }
  doc["training_metadata"] = meta;
  doc["learned_parameters"] = params_to_json(model.params);
  return doc.dump(1) + "\n";
}

Model model_from_json(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw CorruptFileError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw CorruptFileError("model file is not a JSON object");
    const auto version = doc.at("format_version");
    if (!version.is_number_integer() || version.get<int>() != kModelFormatVersion)
      throw VersionError("unsupported model format_version " + version.dump());
    const auto kind_text = doc.at("kind").get<std::string>();
    const auto kind = parse_model_kind(kind_text);
    if (!kind) throw VersionError("unknown model kind '" + kind_text + "'");
    Model m;
    m.kind = *kind;
    const auto& meta = doc.at("training_metadata");
    m.metadata.columns = meta.at("columns").get<std::vector<std::string>>();
    m.metadata.seed = meta.at("seed").get<std::uint64_t>();
    if (meta.contains("means")) {
      Standardization s;
      s.means = meta.at("means").get<std::vector<double>>();
      s.scales = meta.at("scales").get<std::vector<double>>();
      if (s.means.size() != m.metadata.columns.size() || s.scales.size() != m.metadata.columns.size())
        throw CorruptFileError("standardization does not match columns");
      m.metadata.standardization = std::move(s);
    }
    if ((m.kind == ModelKind::svm || m.kind == ModelKind::mlp) && !m.metadata.standardization)
      throw CorruptFileError("model lacks standardization statistics");
    m.config = config_from_json(m.kind, doc.at("hyperparameters"), m.metadata.seed);
    m.params = params_from_json(m.kind, doc.at("learned_parameters"), m.metadata.columns.size());
    return m;
  } catch (const json::exception& e) {
    throw CorruptFileError(std::string("model file is incomplete or malformed: ") + e.what());
  }
}

void save_model(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << model_to_json(model);
  if (!out) throw Error("write failed: " + path.string());
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return model_from_json(ss.str());
}

}  // namespace hatepol
