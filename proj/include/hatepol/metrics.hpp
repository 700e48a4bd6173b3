#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hatepol/corpus.hpp"

namespace hatepol {

// Mann-Whitney AUC: P(score_pos > score_neg) + 0.5 P(tie). `labels` are
// 1 for hate, 0 for normal. Throws SingleClassError when a class is absent.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

struct ConfusionMatrix {
  // Hate is the positive class.
  std::size_t true_hate = 0;
  std::size_t false_hate = 0;
  std::size_t false_normal = 0;
  std::size_t true_normal = 0;

  std::size_t total() const noexcept { return true_hate + false_hate + false_normal + true_normal; }
  friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct PerClassReport {
  ClassMetrics hate;
  ClassMetrics normal;
  ConfusionMatrix confusion;
};

ConfusionMatrix confusion_matrix(std::span<const Label> predicted, std::span<const Label> truth);
// Precision is 0 when a class is never predicted, recall 0 when it has no
// support, and f1 0 when both are 0.
PerClassReport per_class_report(std::span<const Label> predicted, std::span<const Label> truth);
double weighted_f1(std::span<const Label> predicted, std::span<const Label> truth);

struct RunMetadata {
  std::string train_corpus;
  std::string test_corpus;
  std::string feature_config;
  std::string model_config;
  std::uint64_t seed = 0;
};

struct EvalReport {
  double roc_auc = 0.5;
  double weighted_f1 = 0.0;
  PerClassReport per_class;
  RunMetadata run;
};

EvalReport evaluate(std::span<const double> scores, std::span<const Label> truth, double threshold = 0.5);

// Predicts the train-majority class (normal on a tie) with constant score 0.5.
EvalReport majority_baseline(std::span<const Label> train_labels, std::span<const Label> test_labels);

// Key-sorted, two-space-indented JSON.
std::string report_to_json(const EvalReport& report);

}  // namespace hatepol
