#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hatepol/corpus.hpp"
#include "hatepol/features.hpp"
#include "hatepol/mlp.hpp"
#include "hatepol/tree.hpp"

namespace hatepol {

enum class ModelKind { tree, forest, adaboost, svm, mlp };
enum class BaseLearner { stump, gaussian_nb };

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view text);
std::string_view to_string(BaseLearner base);
std::optional<BaseLearner> parse_base_learner(std::string_view text);

struct TreeSettings {
  int max_depth = -1;  // unlimited
  std::size_t min_leaf = 1;
};

struct ForestSettings {
  std::size_t n_trees = 100;
  std::size_t features_per_split = 0;  // 0 means floor(sqrt(columns))
};

struct AdaBoostSettings {
  std::size_t n_rounds = 50;
  BaseLearner base = BaseLearner::stump;
};

struct SvmSettings {
  double lambda = 1e-4;
  std::size_t epochs = 20;
};

struct MlpSettings {
  std::size_t hidden_width = 64;
  double learning_rate = 0.01;
  std::size_t epochs = 50;
  double momentum = 0.9;
  std::size_t batch_size = 16;
};

struct TrainConfig {
  ModelKind kind = ModelKind::forest;
  std::uint64_t seed = 42;
  TreeSettings tree;  // also shapes forest trees
  ForestSettings forest;
  AdaBoostSettings adaboost;
  SvmSettings svm;
  MlpSettings mlp;

  // Throws ArgumentError on non-positive counts or rates.
  void validate() const;
};

struct GaussianNaiveBayes {
  double log_prior_hate = 0.0;
  double log_prior_normal = 0.0;
  std::vector<double> mean_hate, var_hate, mean_normal, var_normal;

  // Log-likelihood ratio log p(hate|x) - log p(normal|x).
  double log_odds(std::span<const double> x) const;

  friend bool operator==(const GaussianNaiveBayes&, const GaussianNaiveBayes&) = default;
};

using WeakLearner = std::variant<DecisionTree, GaussianNaiveBayes>;

struct ForestParams {
  std::vector<DecisionTree> trees;
  friend bool operator==(const ForestParams&, const ForestParams&) = default;
};

struct AdaBoostParams {
  std::vector<WeakLearner> learners;
  std::vector<double> alphas;
  // Weighted training error of each kept round.
  std::vector<double> errors;
  friend bool operator==(const AdaBoostParams&, const AdaBoostParams&) = default;
};

struct SvmParams {
  std::vector<double> weights;
  double bias = 0.0;
  friend bool operator==(const SvmParams&, const SvmParams&) = default;
};

struct Standardization {
  std::vector<double> means;
  std::vector<double> scales;
  friend bool operator==(const Standardization&, const Standardization&) = default;
};

struct TrainingMetadata {
  std::vector<std::string> columns;
  std::optional<Standardization> standardization;
  std::uint64_t seed = 0;
  friend bool operator==(const TrainingMetadata&, const TrainingMetadata&) = default;
};

using LearnedParameters = std::variant<DecisionTree, ForestParams, AdaBoostParams, SvmParams, MlpParams>;

struct Model {
  ModelKind kind = ModelKind::tree;
  TrainConfig config;
  TrainingMetadata metadata;
  LearnedParameters params;
};

// 1 = hate, 0 = normal; throws ArgumentError on unlabeled rows.
std::vector<int> binary_labels(std::span<const Label> labels);

// Forest trees are trained in parallel, each from seed ^ tree_index.
Model train(const FeatureMatrix& matrix, std::span<const int> labels, const TrainConfig& config);
// Reference path with every loop serial; produces the same model as train().
Model train_serial(const FeatureMatrix& matrix, std::span<const int> labels, const TrainConfig& config);

// Scores in [0, 1], higher is more hateful. Throws ColumnMismatchError when the
// matrix columns differ from the training columns.
std::vector<double> predict_scores(const Model& model, const FeatureMatrix& matrix);
std::vector<Label> predict_labels(const Model& model, const FeatureMatrix& matrix, double threshold = 0.5);
std::vector<Label> labels_from_scores(std::span<const double> scores, double threshold = 0.5);

// Score of a single already-validated row.
double score_row(const Model& model, std::span<const double> raw);

inline constexpr int kModelFormatVersion = 1;

// Compact JSON of the settings relevant to config.kind.
std::string hyperparameters_json(const TrainConfig& config);

std::string model_to_json(const Model& model);
Model model_from_json(std::string_view document);
void save_model(const Model& model, const std::filesystem::path& path);
// Throws CorruptFileError on unparsable or incomplete files and VersionError
// on an unknown format_version or kind.
Model load_model(const std::filesystem::path& path);

}  // namespace hatepol
