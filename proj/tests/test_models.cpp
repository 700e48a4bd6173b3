#include <doctest.h>

#include <cmath>
#include <json.hpp>

#include "hatepol/error.hpp"
#include "hatepol/metrics.hpp"
#include "hatepol/mlp.hpp"
#include "hatepol/models.hpp"
#include "hatepol/tree.hpp"
#include "support.hpp"

using namespace hatepol;

namespace {

TrainConfig config(ModelKind kind, std::uint64_t seed = 42) {
  TrainConfig c;
  c.kind = kind;
  c.seed = seed;
  c.forest.n_trees = 25;
  return c;
}

double accuracy(const Model& m, const testing::Dataset& d) {
  const auto s = predict_scores(m, d.matrix);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < s.size(); ++i) ok += (s[i] >= 0.5 ? 1 : 0) == d.labels[i];
  return static_cast<double>(ok) / static_cast<double>(s.size());
}

FeatureMatrix scaled(const FeatureMatrix& m, double k) {
  FeatureMatrix out(m.column_names(), {});
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<double> row(m.row(r).begin(), m.row(r).end());
    for (auto& v : row) v *= k;
    out.append_row(m.row_ids()[r], row);
  }
  return out;
}

testing::Dataset random_dataset(std::size_t n, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> cols;
  for (std::size_t c = 0; c < m; ++c) cols.push_back("f" + std::to_string(c));
  testing::Dataset d{FeatureMatrix(cols, {}), {}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row(m);
    double s = 0;
    for (std::size_t c = 0; c < m; ++c) {
      row[c] = rng.normal();
      s += (c % 2 ? -1.0 : 1.0) * row[c];
    }
    d.matrix.append_row("r" + std::to_string(i), row);
    d.labels.push_back(s + 0.8 * rng.normal() > 0 ? 1 : 0);
  }
  return d;
}

}  // namespace

TEST_CASE("svm separates separable data") {
  const auto d = testing::separable_2d(200, 1);
  const auto m = train(d.matrix, d.labels, config(ModelKind::svm));
  CHECK(accuracy(m, d) >= 0.99);
}

TEST_CASE("every kind trains, scores in [0,1] and beats chance") {
  const auto d = random_dataset(160, 6, 2);
  for (auto kind : {ModelKind::tree, ModelKind::forest, ModelKind::adaboost, ModelKind::svm, ModelKind::mlp}) {
    const auto m = train(d.matrix, d.labels, config(kind));
    const auto s = predict_scores(m, d.matrix);
    for (double v : s) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
    CHECK_MESSAGE(roc_auc(s, d.labels) > 0.8, to_string(kind));
  }
  auto nb = config(ModelKind::adaboost);
  nb.adaboost.base = BaseLearner::gaussian_nb;
  const auto m = train(d.matrix, d.labels, nb);
  CHECK(roc_auc(predict_scores(m, d.matrix), d.labels) > 0.8);
}

TEST_CASE("training input errors") {
  auto d = testing::separable_2d(20, 3);
  std::vector<int> ones(d.labels.size(), 1);
  CHECK_THROWS_AS(train(d.matrix, ones, config(ModelKind::forest)), SingleClassError);

  d.matrix.at(4, 1) = std::nan("");
  try {
    train(d.matrix, d.labels, config(ModelKind::svm));
    FAIL("expected a non-finite error");
  } catch (const NonFiniteError& e) {
    CHECK(std::string(e.what()).find("'y'") != std::string::npos);
  }

  auto bad = config(ModelKind::svm);
  bad.svm.lambda = 0;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
  bad = config(ModelKind::forest);
  bad.forest.n_trees = 0;
  CHECK_THROWS_AS(bad.validate(), ArgumentError);
}

TEST_CASE("forest determinism, parallel agreement and tree-order invariance") {
  const auto d = random_dataset(120, 9, 4);
  const auto a = train(d.matrix, d.labels, config(ModelKind::forest, 7));
  const auto b = train(d.matrix, d.labels, config(ModelKind::forest, 7));
  const auto serial = train_serial(d.matrix, d.labels, config(ModelKind::forest, 7));
  CHECK(std::get<ForestParams>(a.params) == std::get<ForestParams>(b.params));
  CHECK(std::get<ForestParams>(a.params) == std::get<ForestParams>(serial.params));
  CHECK(std::get<ForestParams>(a.params).trees.size() == 25);
  const auto other = train(d.matrix, d.labels, config(ModelKind::forest, 8));
  CHECK_FALSE(std::get<ForestParams>(a.params) == std::get<ForestParams>(other.params));

  const auto base = predict_scores(a, d.matrix);
  Rng rng(1);
  for (int trial = 0; trial < 10; ++trial) {
    auto perm = a;
    auto& trees = std::get<ForestParams>(perm.params).trees;
    rng.shuffle(std::span<DecisionTree>(trees));
    CHECK(predict_scores(perm, d.matrix) == base);
  }
}

TEST_CASE("forest where every tree votes hate scores 1") {
  Model m;
  m.kind = ModelKind::forest;
  m.config = config(ModelKind::forest);
  m.metadata.columns = {"a"};
  ForestParams fp;
  for (int i = 0; i < 5; ++i) {
    DecisionTree t;
    TreeNode leaf;
    leaf.hate_fraction = 0.8;
    t.nodes.push_back(leaf);
    fp.trees.push_back(t);
  }
  m.params = fp;
  FeatureMatrix x({"a"}, {});
  const double v[1] = {3.0};
  x.append_row("r", v);
  CHECK(predict_scores(m, x) == std::vector<double>{1.0});
}

TEST_CASE("svm with zero weights scores one half") {
  Model m;
  m.kind = ModelKind::svm;
  m.config = config(ModelKind::svm);
  m.metadata.columns = {"a", "b"};
  m.params = SvmParams{{0.0, 0.0}, 0.0};
  const auto d = testing::separable_2d(10, 2);
  FeatureMatrix x({"a", "b"}, {});
  for (std::size_t r = 0; r < d.matrix.rows(); ++r) x.append_row(d.matrix.row_ids()[r], d.matrix.row(r));
  for (double s : predict_scores(m, x)) CHECK(s == 0.5);
}

TEST_CASE("column mismatch lists the symmetric difference") {
  const auto d = testing::separable_2d(30, 5);
  const auto m = train(d.matrix, d.labels, config(ModelKind::tree));
  FeatureMatrix renamed({"x", "z"}, {});
  for (std::size_t r = 0; r < d.matrix.rows(); ++r) renamed.append_row(d.matrix.row_ids()[r], d.matrix.row(r));
  try {
    predict_scores(m, renamed);
    FAIL("expected a column mismatch");
  } catch (const ColumnMismatchError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("y") != std::string::npos);
    CHECK(msg.find("z") != std::string::npos);
  }
  FeatureMatrix swapped({"y", "x"}, {});
  for (std::size_t r = 0; r < d.matrix.rows(); ++r) swapped.append_row(d.matrix.row_ids()[r], d.matrix.row(r));
  CHECK_THROWS_AS(predict_scores(m, swapped), ColumnMismatchError);
}

TEST_CASE("label thresholds") {
  const std::vector<double> s{0.9, 0.1};
  CHECK(labels_from_scores(s, 0.5) == std::vector<Label>{Label::hate, Label::normal});
  CHECK(labels_from_scores(s, 0.0) == std::vector<Label>{Label::hate, Label::hate});
  CHECK(labels_from_scores(s, 1.01) == std::vector<Label>{Label::normal, Label::normal});
}

TEST_CASE("tree honours max_depth and min_leaf") {
  const auto d = random_dataset(150, 5, 6);
  auto zero = config(ModelKind::tree);
  zero.tree.max_depth = 0;
  CHECK_THROWS_AS(zero.validate(), ArgumentError);
  for (int depth : {1, 2, 4, 7}) {
    for (std::size_t leaf : {1u, 3u, 10u}) {
      auto c = config(ModelKind::tree);
      c.tree.max_depth = depth;
      c.tree.min_leaf = leaf;
      const auto m = train(d.matrix, d.labels, c);
      const auto& tree = std::get<DecisionTree>(m.params);
      CHECK(tree.depth() <= depth);
      for (const auto& node : tree.nodes) {
        CHECK(node.depth <= depth);
        if (node.is_leaf()) CHECK(node.samples >= leaf);
      }
    }
  }
}

TEST_CASE("tree split tie-break prefers the lowest column") {
  // Columns 0 and 1 are identical, so every split ties on gain.
  FeatureMatrix m({"a", "b"}, {});
  std::vector<int> y;
  for (int i = 0; i < 10; ++i) {
    const double v[2] = {static_cast<double>(i), static_cast<double>(i)};
    m.append_row("r" + std::to_string(i), v);
    y.push_back(i >= 5);
  }
  auto c = config(ModelKind::tree);
  const auto model = train(m, y, c);
  const auto& root = std::get<DecisionTree>(model.params).nodes[0];
  CHECK(root.feature == 0);
  CHECK(root.threshold == 4.5);
}

TEST_CASE("adaboost training error stays under the exponential bound") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto d = random_dataset(120, 4, 100 + seed);
    auto c = config(ModelKind::adaboost);
    c.adaboost.n_rounds = 30;
    const auto m = train(d.matrix, d.labels, c);
    const auto& p = std::get<AdaBoostParams>(m.params);
    REQUIRE(!p.errors.empty());
    double bound = 1.0, previous = 1.0;
    for (std::size_t t = 0; t < p.learners.size(); ++t) {
      CHECK(p.errors[t] < 0.5);
      CHECK(std::isfinite(p.alphas[t]));
      CHECK(p.alphas[t] == doctest::Approx(0.5 * std::log((1 - p.errors[t]) / p.errors[t])));
      bound *= 2.0 * std::sqrt(p.errors[t] * (1.0 - p.errors[t]));
      CHECK(bound <= previous + 1e-15);
      previous = bound;

      Model prefix = m;
      auto& pp = std::get<AdaBoostParams>(prefix.params);
      pp.learners.resize(t + 1);
      pp.alphas.resize(t + 1);
      pp.errors.resize(t + 1);
      const auto s = predict_scores(prefix, d.matrix);
      std::size_t wrong = 0;
      for (std::size_t i = 0; i < s.size(); ++i) wrong += (s[i] > 0.5 ? 1 : 0) != d.labels[i];
      CHECK(static_cast<double>(wrong) / static_cast<double>(s.size()) <= bound + 1e-12);
    }
  }
}

TEST_CASE("adaboost stops on a perfect learner") {
  const auto d = testing::separable_2d(60, 9);
  auto c = config(ModelKind::adaboost);
  c.adaboost.n_rounds = 10;
  const auto m = train(d.matrix, d.labels, c);
  const auto& p = std::get<AdaBoostParams>(m.params);
  if (p.errors.front() == 0.0 || p.errors.front() <= 1e-10) CHECK(p.learners.size() == 1);
  CHECK(accuracy(m, d) == 1.0);
}

TEST_CASE("svm labels survive uniform positive rescaling") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto d = random_dataset(100, 5, 200 + seed);
    const auto base = train(d.matrix, d.labels, config(ModelKind::svm, seed));
    const auto ref = predict_labels(base, d.matrix);
    for (double k : {1e-3, 0.5, 7.0, 1e3}) {
      const auto xs = scaled(d.matrix, k);
      const auto m = train(xs, d.labels, config(ModelKind::svm, seed));
      CHECK(predict_labels(m, xs) == ref);
    }
  }
}

TEST_CASE("mlp gradients match central differences") {
  Rng rng(17);
  for (int net = 0; net < 20; ++net) {
    auto p = init_mlp(5, 4, rng);
    std::vector<double> xs(8 * 5);
    std::vector<int> ys(8);
    for (auto& v : xs) v = rng.normal();
    for (auto& y : ys) y = static_cast<int>(rng.below(2));
    MatrixView x{xs, 8, 5};
    std::vector<std::size_t> batch{0, 1, 2, 3, 4, 5, 6, 7};
    const auto analytic = mlp_loss_gradient(p, x, ys, batch).gradient.flatten();
    auto flat = p.flatten();
    REQUIRE(flat.size() == 29);
    double num2 = 0, den2 = 0;
    for (std::size_t k = 0; k < flat.size(); ++k) {
      const double h = 1e-6;
      auto plus = flat, minus = flat;
      plus[k] += h;
      minus[k] -= h;
      MlpParams a = p, b = p;
      a.assign(plus);
      b.assign(minus);
      const double fd =
          (mlp_loss_gradient(a, x, ys, batch).loss - mlp_loss_gradient(b, x, ys, batch).loss) / (2 * h);
      num2 += (fd - analytic[k]) * (fd - analytic[k]);
      den2 += fd * fd + analytic[k] * analytic[k];
    }
    CHECK(std::sqrt(num2) / std::sqrt(den2) < 1e-4);
  }
}

TEST_CASE("model files round trip bit-identically") {
  const auto dir = testing::scratch_dir("models");
  const auto d = random_dataset(80, 4, 31);
  for (auto kind : {ModelKind::tree, ModelKind::forest, ModelKind::adaboost, ModelKind::svm, ModelKind::mlp}) {
    auto c = config(kind);
    if (kind == ModelKind::mlp) c.mlp.epochs = 5;
    const auto m = train(d.matrix, d.labels, c);
    const auto path = dir / (std::string(to_string(kind)) + ".json");
    save_model(m, path);
    const auto back = load_model(path);
    CHECK(predict_scores(back, d.matrix) == predict_scores(m, d.matrix));
    CHECK(model_to_json(back) == model_to_json(m));
  }
  auto c = config(ModelKind::adaboost);
  c.adaboost.base = BaseLearner::gaussian_nb;
  const auto m = train(d.matrix, d.labels, c);
  CHECK(predict_scores(model_from_json(model_to_json(m)), d.matrix) == predict_scores(m, d.matrix));
}

TEST_CASE("corrupt and unknown model files") {
  const auto dir = testing::scratch_dir("models_bad");
  const auto d = random_dataset(40, 3, 32);
  const auto text = model_to_json(train(d.matrix, d.labels, config(ModelKind::forest)));

  testing::spit(dir / "trunc.json", text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(load_model(dir / "trunc.json"), CorruptFileError);

  auto doc = nlohmann::json::parse(text);
  doc["kind"] = "bayesnet";
  testing::spit(dir / "kind.json", doc.dump());
  CHECK_THROWS_AS(load_model(dir / "kind.json"), VersionError);

  doc = nlohmann::json::parse(text);
  doc["format_version"] = 99;
  testing::spit(dir / "ver.json", doc.dump());
  CHECK_THROWS_AS(load_model(dir / "ver.json"), VersionError);

  doc = nlohmann::json::parse(text);
  doc["learned_parameters"].erase("trees");
  testing::spit(dir / "miss.json", doc.dump());
  CHECK_THROWS_AS(load_model(dir / "miss.json"), CorruptFileError);
}
