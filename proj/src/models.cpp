#include "hatepol/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "hatepol/error.hpp"

namespace hatepol {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::tree: return "tree";
    case ModelKind::forest: return "forest";
    case ModelKind::adaboost: return "adaboost";
    case ModelKind::svm: return "svm";
    case ModelKind::mlp: return "mlp";
  }
  return "tree";
}

std::optional<ModelKind> parse_model_kind(std::string_view text) {
  for (auto k : {ModelKind::tree, ModelKind::forest, ModelKind::adaboost, ModelKind::svm, ModelKind::mlp}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

std::string_view to_string(BaseLearner base) { return base == BaseLearner::stump ? "stump" : "gaussian_nb"; }

std::optional<BaseLearner> parse_base_learner(std::string_view text) {
  if (text == "stump") return BaseLearner::stump;
  if (text == "gaussian_nb") return BaseLearner::gaussian_nb;
  return std::nullopt;
}

void TrainConfig::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ArgumentError(std::string("invalid training configuration: ") + what);
  };
  require(tree.min_leaf > 0, "min_leaf must be positive");
  require(tree.max_depth != 0, "max_depth must be positive (or negative for unlimited)");
  require(forest.n_trees > 0, "n_trees must be positive");
  require(adaboost.n_rounds > 0, "n_rounds must be positive");
  require(svm.lambda > 0 && std::isfinite(svm.lambda), "lambda must be positive");
  require(svm.epochs > 0, "svm epochs must be positive");
  require(mlp.hidden_width > 0, "hidden_width must be positive");
  require(mlp.learning_rate > 0 && std::isfinite(mlp.learning_rate), "learning_rate must be positive");
  require(mlp.epochs > 0, "mlp epochs must be positive");
  require(mlp.batch_size > 0, "batch_size must be positive");
  require(mlp.momentum >= 0 && mlp.momentum < 1, "momentum must lie in [0, 1)");
}

double GaussianNaiveBayes::log_odds(std::span<const double> x) const {
  double s = log_prior_hate - log_prior_normal;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dh = x[i] - mean_hate[i], dn = x[i] - mean_normal[i];
    s += -0.5 * (std::log(var_hate[i]) + dh * dh / var_hate[i]);
    s -= -0.5 * (std::log(var_normal[i]) + dn * dn / var_normal[i]);
  }
  return s;
}

std::vector<int> binary_labels(std::span<const Label> labels) {
  std::vector<int> out;
  out.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == Label::unlabeled) throw ArgumentError("row " + std::to_string(i) + " is unlabeled");
    out.push_back(labels[i] == Label::hate ? 1 : 0);
  }
  return out;
}

namespace {

double logistic(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

void check_training_input(const FeatureMatrix& m, std::span<const int> labels) {
  if (labels.size() != m.rows())
    throw ArgumentError("labels (" + std::to_string(labels.size()) + ") do not align with rows (" +
                        std::to_string(m.rows()) + ")");
  if (m.rows() < 2) throw ArgumentError("training needs at least 2 rows");
  if (m.cols() == 0) throw ArgumentError("training needs at least 1 column");
  std::size_t hate = 0;
  for (int y : labels) {
    if (y != 0 && y != 1) throw ArgumentError("labels must be 0 or 1");
    hate += static_cast<std::size_t>(y);
  }
  if (hate == 0 || hate == labels.size()) throw SingleClassError("training labels contain a single class");
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (!std::isfinite(m.at(r, c))) throw NonFiniteError("non-finite feature in column '" + m.column_names()[c] + "'");
    }
  }
}

Standardization fit_standardization(const FeatureMatrix& m) {
  Standardization s;
  const auto n = static_cast<double>(m.rows());
  s.means.assign(m.cols(), 0.0);
  s.scales.assign(m.cols(), 0.0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) s.means[c] += m.at(r, c);
  }
  for (auto& v : s.means) v /= n;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      const double d = m.at(r, c) - s.means[c];
      s.scales[c] += d * d;
    }
  }
  for (auto& v : s.scales) {
    v = std::sqrt(v / n);
    if (!(v > 0)) v = 1.0;
  }
  return s;
}

std::vector<double> standardize(const FeatureMatrix& m, const Standardization& s) {
  std::vector<double> out(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) out[r * m.cols() + c] = (m.at(r, c) - s.means[c]) / s.scales[c];
  }
  return out;
}

void standardize_row(std::span<const double> raw, const Standardization& s, std::span<double> out) {
  for (std::size_t c = 0; c < raw.size(); ++c) out[c] = (raw[c] - s.means[c]) / s.scales[c];
}

TreeBuildOptions tree_options(const TrainConfig& cfg) {
  TreeBuildOptions o;
  o.max_depth = cfg.tree.max_depth;
  o.min_leaf = cfg.tree.min_leaf;
  return o;
}

DecisionTree train_single_tree(const MatrixView& x, std::span<const int> y, const TrainConfig& cfg) {
  std::vector<std::size_t> rows(x.rows);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::vector<double> w(x.rows, 1.0);
  return build_tree(x, y, rows, w, tree_options(cfg));
}

DecisionTree train_forest_tree(const MatrixView& x, std::span<const int> y, const TrainConfig& cfg,
                               std::size_t index) {
  Rng rng(cfg.seed ^ static_cast<std::uint64_t>(index));
  std::vector<std::size_t> rows(x.rows);
  for (auto& r : rows) r = rng.below(x.rows);
  std::vector<double> w(x.rows, 1.0);
  auto opt = tree_options(cfg);
  opt.features_per_split = cfg.forest.features_per_split > 0
                               ? cfg.forest.features_per_split
                               : std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(x.cols))));
  return build_tree(x, y, rows, w, opt, &rng);
}

ForestParams train_forest(const MatrixView& x, std::span<const int> y, const TrainConfig& cfg, bool parallel) {
  ForestParams p;
  p.trees.resize(cfg.forest.n_trees);
  const auto n = static_cast<std::ptrdiff_t>(cfg.forest.n_trees);
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) p.trees[i] = train_forest_tree(x, y, cfg, static_cast<std::size_t>(i));
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) p.trees[i] = train_forest_tree(x, y, cfg, static_cast<std::size_t>(i));
  }
  return p;
}

GaussianNaiveBayes fit_gaussian_nb(const MatrixView& x, std::span<const int> y, std::span<const double> w) {
  GaussianNaiveBayes nb;
  const std::size_t m = x.cols;
  nb.mean_hate.assign(m, 0.0);
  nb.mean_normal.assign(m, 0.0);
  nb.var_hate.assign(m, 0.0);
  nb.var_normal.assign(m, 0.0);
  double wh = 0, wn = 0;
  for (std::size_t r = 0; r < x.rows; ++r) {
    auto& mean = y[r] ? nb.mean_hate : nb.mean_normal;
    (y[r] ? wh : wn) += w[r];
    for (std::size_t c = 0; c < m; ++c) mean[c] += w[r] * x.at(r, c);
  }
  for (std::size_t c = 0; c < m; ++c) {
    nb.mean_hate[c] /= wh;
    nb.mean_normal[c] /= wn;
  }
  double max_var = 0;
  for (std::size_t r = 0; r < x.rows; ++r) {
    auto& mean = y[r] ? nb.mean_hate : nb.mean_normal;
    auto& var = y[r] ? nb.var_hate : nb.var_normal;
    for (std::size_t c = 0; c < m; ++c) {
      const double d = x.at(r, c) - mean[c];
      var[c] += w[r] * d * d;
    }
  }
  for (std::size_t c = 0; c < m; ++c) {
    nb.var_hate[c] /= wh;
    nb.var_normal[c] /= wn;
    max_var = std::max({max_var, nb.var_hate[c], nb.var_normal[c]});
  }
  // Variance floor relative to the widest feature keeps degenerate columns finite.
  const double floor = 1e-9 * std::max(max_var, 1.0);
  for (std::size_t c = 0; c < m; ++c) {
    nb.var_hate[c] += floor;
    nb.var_normal[c] += floor;
  }
  const double total = wh + wn;
  nb.log_prior_hate = std::log(wh / total);
  nb.log_prior_normal = std::log(wn / total);
  return nb;
}

int weak_predict(const WeakLearner& h, std::span<const double> x) {
  if (const auto* tree = std::get_if<DecisionTree>(&h)) return tree->score(x) >= 0.5 ? 1 : -1;
  return std::get<GaussianNaiveBayes>(h).log_odds(x) >= 0.0 ? 1 : -1;
}

AdaBoostParams train_adaboost(const MatrixView& x, std::span<const int> y, const TrainConfig& cfg) {
  AdaBoostParams p;
  const std::size_t n = x.rows;
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::vector<int> pred(n);
  TreeBuildOptions stump;
  stump.max_depth = 1;
  stump.min_leaf = 1;
  // Caps alpha for a perfect learner at ~11.5.
  constexpr double kMinError = 1e-10;

  for (std::size_t t = 0; t < cfg.adaboost.n_rounds; ++t) {
    WeakLearner h = cfg.adaboost.base == BaseLearner::stump ? WeakLearner(build_tree(x, y, rows, w, stump))
                                                            : WeakLearner(fit_gaussian_nb(x, y, w));
    double err = 0;
    for (std::size_t r = 0; r < n; ++r) {
      pred[r] = weak_predict(h, x.row(r));
      if ((pred[r] == 1) != (y[r] == 1)) err += w[r];
    }
    if (err >= 0.5) break;
    const double eps = std::max(err, kMinError);
    const double alpha = 0.5 * std::log((1.0 - eps) / eps);
    p.learners.push_back(std::move(h));
    p.alphas.push_back(alpha);
    p.errors.push_back(err);
    if (err <= 0.0) break;
    double z = 0;
    for (std::size_t r = 0; r < n; ++r) {
      const double yr = y[r] ? 1.0 : -1.0;
      w[r] *= std::exp(-alpha * yr * pred[r]);
      z += w[r];
    }
    for (auto& v : w) v /= z;
  }
  return p;
}

SvmParams train_svm(const MatrixView& x, std::span<const int> y, const TrainConfig& cfg) {
  // Pegasos on the hinge-loss primal, step 1/(lambda t), with the bias as an
  // extra (regularized) weight on a constant feature and projection onto the
  // ball of radius 1/sqrt(lambda).
  const std::size_t m = x.cols;
  const double lambda = cfg.svm.lambda;
  std::vector<double> w(m + 1, 0.0);
  std::vector<std::size_t> order(x.rows);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(cfg.seed);
  const double radius = 1.0 / std::sqrt(lambda);
  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < cfg.svm.epochs; ++epoch) {
    rng.shuffle(std::span(order));
    for (auto r : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const auto xr = x.row(r);
      const double yr = y[r] ? 1.0 : -1.0;
      double margin = w[m];
      for (std::size_t c = 0; c < m; ++c) margin += w[c] * xr[c];
      const double shrink = 1.0 - eta * lambda;
      for (auto& v : w) v *= shrink;
      if (yr * margin < 1.0) {
        for (std::size_t c = 0; c < m; ++c) w[c] += eta * yr * xr[c];
        w[m] += eta * yr;
      }
      double norm = 0;
      for (double v : w) norm += v * v;
      norm = std::sqrt(norm);
      if (norm > radius) {
        for (auto& v : w) v *= radius / norm;
      }
    }
  }
  SvmParams p;
  p.bias = w[m];
  w.pop_back();
  p.weights = std::move(w);
  return p;
}

Model train_impl(const FeatureMatrix& matrix, std::span<const int> labels, const TrainConfig& config, bool parallel) {
  config.validate();
  check_training_input(matrix, labels);
  Model model;
  model.kind = config.kind;
  model.config = config;
  model.metadata.columns = matrix.column_names();
  model.metadata.seed = config.seed;
  const MatrixView raw{matrix.values(), matrix.rows(), matrix.cols()};

  switch (config.kind) {
    case ModelKind::tree:
      model.params = train_single_tree(raw, labels, config);
      break;
    case ModelKind::forest:
      model.params = train_forest(raw, labels, config, parallel);
      break;
    case ModelKind::adaboost:
      model.params = train_adaboost(raw, labels, config);
      break;
    case ModelKind::svm:
    case ModelKind::mlp: {
      auto s = fit_standardization(matrix);
      const auto z = standardize(matrix, s);
      const MatrixView view{z, matrix.rows(), matrix.cols()};
      model.metadata.standardization = std::move(s);
      if (config.kind == ModelKind::svm) {
        model.params = train_svm(view, labels, config);
      } else {
        Rng rng(config.seed);
        auto p = init_mlp(matrix.cols(), config.mlp.hidden_width, rng);
        MlpTrainOptions opt;
        opt.learning_rate = config.mlp.learning_rate;
        opt.momentum = config.mlp.momentum;
        opt.epochs = config.mlp.epochs;
        opt.batch_size = config.mlp.batch_size;
        train_mlp(p, view, labels, opt, rng);
        model.params = std::move(p);
      }
      break;
    }
  }
  return model;
}

}  // namespace

Model train(const FeatureMatrix& matrix, std::span<const int> labels, const TrainConfig& config) {
  return train_impl(matrix, labels, config, true);
}

Model train_serial(const FeatureMatrix& matrix, std::span<const int> labels, const TrainConfig& config) {
  return train_impl(matrix, labels, config, false);
}

double score_row(const Model& model, std::span<const double> raw) {
  std::vector<double> buf;
  std::span<const double> x = raw;
  if (model.metadata.standardization) {
    buf.resize(raw.size());
    standardize_row(raw, *model.metadata.standardization, buf);
    x = buf;
  }
  return std::visit(
      [&](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, DecisionTree>) {
          return p.score(x);
        } else if constexpr (std::is_same_v<T, ForestParams>) {
          std::size_t votes = 0;
          for (const auto& tree : p.trees) votes += tree.score(x) >= 0.5;
          return p.trees.empty() ? 0.5 : static_cast<double>(votes) / static_cast<double>(p.trees.size());
        } else if constexpr (std::is_same_v<T, AdaBoostParams>) {
          double s = 0;
          for (std::size_t t = 0; t < p.learners.size(); ++t) s += p.alphas[t] * weak_predict(p.learners[t], x);
          return logistic(s);
        } else if constexpr (std::is_same_v<T, SvmParams>) {
          double z = p.bias;
          for (std::size_t c = 0; c < x.size(); ++c) z += p.weights[c] * x[c];
          return logistic(z);
        } else {
          return mlp_output(p, x);
        }
      },
      model.params);
}

std::vector<double> predict_scores(const Model& model, const FeatureMatrix& matrix) {
  const auto& want = model.metadata.columns;
  const auto& have = matrix.column_names();
  if (want != have) {
    std::set<std::string> a(want.begin(), want.end()), b(have.begin(), have.end());
    std::string diff;
    for (const auto& c : a) {
      if (!b.contains(c)) diff += (diff.empty() ? "" : ", ") + std::string("-") + c;
    }
    for (const auto& c : b) {
      if (!a.contains(c)) diff += (diff.empty() ? "" : ", ") + std::string("+") + c;
    }
    if (diff.empty()) diff = "same columns in a different order";
    throw ColumnMismatchError("matrix columns differ from training columns: " + diff);
  }
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    for (std::size_t c = 0; c < matrix.cols(); ++c) {
      if (!std::isfinite(matrix.at(r, c))) throw NonFiniteError("non-finite feature in column '" + have[c] + "'");
    }
  }
  std::vector<double> scores(matrix.rows());
  const auto n = static_cast<std::ptrdiff_t>(matrix.rows());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t r = 0; r < n; ++r) scores[r] = score_row(model, matrix.row(static_cast<std::size_t>(r)));
  return scores;
}

std::vector<Label> labels_from_scores(std::span<const double> scores, double threshold) {
  std::vector<Label> out;
  out.reserve(scores.size());
  for (double s : scores) out.push_back(s >= threshold ? Label::hate : Label::normal);
  return out;
}

std::vector<Label> predict_labels(const Model& model, const FeatureMatrix& matrix, double threshold) {
  return labels_from_scores(predict_scores(model, matrix), threshold);
}

}  // namespace hatepol
