#include "hatepol/metrics.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "hatepol/error.hpp"

namespace hatepol {

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw ArgumentError("scores and labels differ in length");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Twice the midrank of each tie group keeps the rank sum integral.
  double pos = 0, rank_sum2 = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double twice_midrank = static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]]) {
        pos += 1;
        rank_sum2 += twice_midrank;
      }
    }
    i = j;
  }
  const double neg = static_cast<double>(n) - pos;
  if (pos == 0 || neg == 0) throw SingleClassError("ROC AUC needs both classes");
  const double u = 0.5 * (rank_sum2 - pos * (pos + 1));
  return u / (pos * neg);
}

ConfusionMatrix confusion_matrix(std::span<const Label> predicted, std::span<const Label> truth) {
  if (predicted.size() != truth.size())
    throw ArgumentError("predictions (" + std::to_string(predicted.size()) + ") and truth (" +
                        std::to_string(truth.size()) + ") differ in length");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] == Label::unlabeled || predicted[i] == Label::unlabeled)
      throw ArgumentError("row " + std::to_string(i) + " is unlabeled");
    const bool p = predicted[i] == Label::hate, t = truth[i] == Label::hate;
    if (p && t) ++cm.true_hate;
    if (p && !t) ++cm.false_hate;
    if (!p && t) ++cm.false_normal;
    if (!p && !t) ++cm.true_normal;
  }
  return cm;
}

namespace {

ClassMetrics class_metrics(std::size_t correct, std::size_t predicted, std::size_t support) {
  ClassMetrics m;
  m.support = support;
  m.precision = predicted > 0 ? static_cast<double>(correct) / static_cast<double>(predicted) : 0.0;
  m.recall = support > 0 ? static_cast<double>(correct) / static_cast<double>(support) : 0.0;
  m.f1 = (m.precision + m.recall) > 0 ? 2.0 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
  return m;
}

double weighted(const PerClassReport& r) {
  const double n = static_cast<double>(r.hate.support + r.normal.support);
  if (n == 0) return 0.0;
  return (static_cast<double>(r.hate.support) * r.hate.f1 + static_cast<double>(r.normal.support) * r.normal.f1) / n;
}

nlohmann::json class_json(const ClassMetrics& m) {
  return {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"support", m.support}};
}

}  // namespace

PerClassReport per_class_report(std::span<const Label> predicted, std::span<const Label> truth) {
  PerClassReport r;
  r.confusion = confusion_matrix(predicted, truth);
  const auto& c = r.confusion;
  r.hate = class_metrics(c.true_hate, c.true_hate + c.false_hate, c.true_hate + c.false_normal);
  r.normal = class_metrics(c.true_normal, c.true_normal + c.false_normal, c.true_normal + c.false_hate);
  return r;
}

double weighted_f1(std::span<const Label> predicted, std::span<const Label> truth) {
  if (truth.empty()) throw ArgumentError("weighted_f1 needs at least one row");
  return weighted(per_class_report(predicted, truth));
}

EvalReport evaluate(std::span<const double> scores, std::span<const Label> truth, double threshold) {
  if (scores.size() != truth.size()) throw ArgumentError("scores and truth differ in length");
  std::vector<Label> pred;
  std::vector<int> y;
  pred.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    pred.push_back(scores[i] >= threshold ? Label::hate : Label::normal);
    y.push_back(truth[i] == Label::hate ? 1 : 0);
  }
  EvalReport r;
  r.per_class = per_class_report(pred, truth);
  r.weighted_f1 = weighted(r.per_class);
  r.roc_auc = roc_auc(scores, y);
  return r;
}

EvalReport majority_baseline(std::span<const Label> train_labels, std::span<const Label> test_labels) {
  if (train_labels.empty()) throw ArgumentError("majority baseline needs training labels");
  std::size_t hate = 0, normal = 0;
  for (auto l : train_labels) {
    hate += l == Label::hate;
    normal += l == Label::normal;
  }
  const Label majority = hate > normal ? Label::hate : Label::normal;
  std::vector<Label> pred(test_labels.size(), majority);
  EvalReport r;
  r.per_class = per_class_report(pred, test_labels);
  r.weighted_f1 = weighted(r.per_class);
  r.roc_auc = 0.5;
  return r;
}

std::string report_to_json(const EvalReport& r) {
  nlohmann::json j;
  j["roc_auc"] = r.roc_auc;
  j["weighted_f1"] = r.weighted_f1;
  j["per_class"] = {{"hate", class_json(r.per_class.hate)}, {"normal", class_json(r.per_class.normal)}};
  const auto& c = r.per_class.confusion;
  j["confusion"] = {{"true_hate", c.true_hate},
                    {"false_hate", c.false_hate},
                    {"false_normal", c.false_normal},
                    {"true_normal", c.true_normal}};
  j["run_metadata"] = {{"train_corpus", r.run.train_corpus},
                       {"test_corpus", r.run.test_corpus},
                       {"feature_config", r.run.feature_config},
                       {"model_config", r.run.model_config},
                       {"seed", r.run.seed}};
  return j.dump(2) + "\n";
}

}  // namespace hatepol
