#include "hatepol/experiment.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "hatepol/error.hpp"
#include "hatepol/features.hpp"

namespace hatepol {

using nlohmann::json;

std::optional<SplitSelector> parse_split_selector(std::string_view text) {
  if (text == "all") return SplitSelector::all;
  if (text == "train") return SplitSelector::train;
  if (text == "test") return SplitSelector::test;
  if (text == "auto") return SplitSelector::automatic;
  return std::nullopt;
}

std::string_view to_string(SplitSelector selector) {
  switch (selector) {
    case SplitSelector::all: return "all";
    case SplitSelector::train: return "train";
    case SplitSelector::test: return "test";
    case SplitSelector::automatic: return "auto";
  }
  return "auto";
}

ExperimentSpec parse_experiment_spec(std::string_view json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ArgumentError(std::string("experiment spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ArgumentError("experiment spec must be a JSON object");
  static const std::unordered_set<std::string> known = {
      "train_corpus", "train_split", "test_corpus", "test_split", "liwc", "nrc", "allow_nonstandard_lexicons",
      "model", "seed", "threshold", "hyperparameters"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ArgumentError("unknown experiment spec key '" + key + "'");
  }
  ExperimentSpec s;
  try {
    auto path = [&](const char* key) {
      std::filesystem::path p = j.at(key).get<std::string>();
      return p.is_relative() ? base_dir / p : p;
    };
    s.train_corpus = path("train_corpus");
    s.test_corpus = path("test_corpus");
    s.liwc = path("liwc");
    s.nrc = path("nrc");
    auto selector = [&](const char* key) {
      const auto text = j.value(key, std::string("auto"));
      auto sel = parse_split_selector(text);
      if (!sel) throw ArgumentError(std::string(key) + " must be all, train, test or auto");
      return *sel;
    };
    s.train_split = selector("train_split");
    s.test_split = selector("test_split");
    s.allow_nonstandard_lexicons = j.value("allow_nonstandard_lexicons", false);
    const auto kind_text = j.value("model", std::string("forest"));
    const auto kind = parse_model_kind(kind_text);
    if (!kind) throw ArgumentError("unknown model '" + kind_text + "'");
    s.train.kind = *kind;
    s.train.seed = j.value("seed", std::uint64_t{42});
    s.threshold = j.value("threshold", 0.5);
    const auto h = j.value("hyperparameters", json::object());
    auto& c = s.train;
    c.tree.max_depth = h.value("max_depth", c.tree.max_depth);
    c.tree.min_leaf = h.value("min_leaf", c.tree.min_leaf);
    c.forest.n_trees = h.value("n_trees", c.forest.n_trees);
    c.forest.features_per_split = h.value("features_per_split", c.forest.features_per_split);
    c.adaboost.n_rounds = h.value("n_rounds", c.adaboost.n_rounds);
    if (h.contains("base")) {
      auto base = parse_base_learner(h["base"].get<std::string>());
      if (!base) throw ArgumentError("base must be stump or gaussian_nb");
      c.adaboost.base = *base;
    }
    c.svm.lambda = h.value("lambda", c.svm.lambda);
    if (kind == ModelKind::svm) c.svm.epochs = h.value("epochs", c.svm.epochs);
    c.mlp.hidden_width = h.value("hidden_width", c.mlp.hidden_width);
    c.mlp.learning_rate = h.value("learning_rate", c.mlp.learning_rate);
    if (kind == ModelKind::mlp) c.mlp.epochs = h.value("epochs", c.mlp.epochs);
    c.mlp.momentum = h.value("momentum", c.mlp.momentum);
    c.mlp.batch_size = h.value("batch_size", c.mlp.batch_size);
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("experiment spec field has the wrong type: ") + e.what());
  }
  s.train.validate();
  return s;
}

ExperimentSpec load_experiment_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open experiment spec " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment_spec(ss.str(), path.parent_path());
}

Corpus resolve_source(const Corpus& corpus, SplitSelector selector, bool for_training) {
  switch (selector) {
    case SplitSelector::all: return corpus.select(std::nullopt);
    case SplitSelector::train: return corpus.select(Split::train);
    case SplitSelector::test: return corpus.select(Split::test);
    case SplitSelector::automatic:
      if (!corpus.split_assignment) return corpus.select(std::nullopt);
      return corpus.select(for_training ? Split::train : Split::test);
  }
  return corpus.select(std::nullopt);
}

namespace {

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

std::vector<Label> labeled_only(const Corpus& c, const char* side) {
  std::vector<Label> out;
  for (const auto& t : c.tweets) {
    if (t.label == Label::unlabeled) throw Error(std::string(side) + " tweet '" + t.id + "' is unlabeled");
    out.push_back(t.label);
  }
  return out;
}

}  // namespace

EvalReport run_experiment(const ExperimentSpec& spec, const Corpus& train_corpus, const Corpus& test_corpus,
                          const Lexicon& liwc, const Lexicon& emo) {
  const Corpus train_rows = stage("select", [&] { return resolve_source(train_corpus, spec.train_split, true); });
  const Corpus test_rows = stage("select", [&] { return resolve_source(test_corpus, spec.test_split, false); });
  if (train_corpus.name == test_corpus.name) {
    std::unordered_set<std::string> ids;
    for (const auto& t : train_rows.tweets) ids.insert(t.id);
    for (const auto& t : test_rows.tweets) {
      if (ids.contains(t.id))
        throw StageError("select", "train and test rows overlap (tweet '" + t.id + "'); choose disjoint splits");
    }
  }
  const auto train_labels = stage("select", [&] { return labeled_only(train_rows, "training"); });
  const auto test_labels = stage("select", [&] { return labeled_only(test_rows, "test"); });

  FeaturizeOptions fopt;
  fopt.allow_nonstandard = spec.allow_nonstandard_lexicons;
  const auto x_train = stage("featurize", [&] { return featurize(train_rows, liwc, emo, fopt); });
  const auto x_test = stage("featurize", [&] { return featurize(test_rows, liwc, emo, fopt); });

  const auto model = stage("train", [&] {
    const auto y = binary_labels(train_labels);
    return train(x_train, y, spec.train);
  });

  auto report = stage("eval", [&] {
    const auto scores = predict_scores(model, x_test);
    return evaluate(scores, test_labels, spec.threshold);
  });
  report.run.train_corpus = train_rows.name;
  report.run.test_corpus = test_rows.name;
  json features = {{"liwc", liwc.name()},
                   {"liwc_categories", liwc.categories().size()},
                   {"nrc", emo.name()},
                   {"nrc_categories", emo.categories().size()},
                   {"columns", x_train.cols()}};
  report.run.feature_config = features.dump();
  json model_cfg = {{"kind", std::string(to_string(spec.train.kind))},
                    {"hyperparameters", json::parse(hyperparameters_json(spec.train))},
                    {"threshold", spec.threshold}};
  report.run.model_config = model_cfg.dump();
  report.run.seed = spec.train.seed;
  return report;
}

EvalReport run_experiment(const ExperimentSpec& spec) {
  const auto train_corpus = stage("load", [&] { return load_corpus(spec.train_corpus); });
  const auto test_corpus = spec.test_corpus == spec.train_corpus
                               ? train_corpus
                               : stage("load", [&] { return load_corpus(spec.test_corpus); });
  const auto liwc = stage("load", [&] { return load_lexicon(spec.liwc, LexiconFormat::liwc_dic); });
  const auto emo = stage("load", [&] { return load_lexicon(spec.nrc, LexiconFormat::emolex_tsv); });
  return run_experiment(spec, train_corpus, test_corpus, liwc, emo);
}

}  // namespace hatepol
