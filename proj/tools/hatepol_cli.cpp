// hatepol: command-line front end for the corpus, features, models, eval,
// analysis and network modules.

#include <omp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "hatepol/analysis.hpp"
#include "hatepol/corpus.hpp"
#include "hatepol/csv.hpp"
#include "hatepol/error.hpp"
#include "hatepol/experiment.hpp"
#include "hatepol/features.hpp"
#include "hatepol/graph_export.hpp"
#include "hatepol/hashtag_graph.hpp"
#include "hatepol/layout.hpp"
#include "hatepol/lexicon.hpp"
#include "hatepol/metrics.hpp"
#include "hatepol/models.hpp"
#include "hatepol/sampling.hpp"

namespace fs = std::filesystem;
using namespace hatepol;

namespace {

struct Common {
  std::uint64_t seed = 42;
  int jobs = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "Seed for every random choice")->capture_default_str();
  cmd->add_option("--jobs", c.jobs, "Worker threads (default: all cores)")->check(CLI::PositiveNumber);
}

void require_file(const fs::path& p, std::string_view what) {
  if (!fs::is_regular_file(p)) throw Error(std::string(what) + " not found: " + p.string());
}

void write_file(const fs::path& p, std::string_view body) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << body;
  if (!out.flush()) throw Error("cannot write " + p.string());
}

struct ModelFlags {
  std::string kind = "forest";
  std::optional<int> max_depth;
  std::optional<std::size_t> min_leaf, n_trees, features_per_split, rounds, epochs, hidden, batch_size;
  std::optional<std::string> base;
  std::optional<double> lambda, learning_rate, momentum;
};

void add_model_flags(CLI::App* cmd, ModelFlags& m, bool required_kind) {
  auto* opt = cmd->add_option("--model", m.kind, "Classifier: tree, forest, adaboost, svm or mlp");
  opt->check(CLI::IsMember({"tree", "forest", "adaboost", "svm", "mlp"}));
  if (required_kind) opt->required();
  cmd->add_option("--max-depth", m.max_depth, "tree/forest: maximum depth (-1 = unlimited)");
  cmd->add_option("--min-leaf", m.min_leaf, "tree/forest: minimum samples per leaf");
  cmd->add_option("--n-trees", m.n_trees, "forest: number of trees");
  cmd->add_option("--features-per-split", m.features_per_split, "forest: candidate features per split (0 = sqrt)");
  cmd->add_option("--rounds", m.rounds, "adaboost: boosting rounds");
  cmd->add_option("--base", m.base, "adaboost: base learner (stump or gaussian_nb)")
      ->check(CLI::IsMember({"stump", "gaussian_nb"}));
  cmd->add_option("--lambda", m.lambda, "svm: regularization strength");
  cmd->add_option("--epochs", m.epochs, "svm/mlp: training epochs");
  cmd->add_option("--hidden", m.hidden, "mlp: hidden layer width");
  cmd->add_option("--learning-rate", m.learning_rate, "mlp: SGD learning rate");
  cmd->add_option("--momentum", m.momentum, "mlp: SGD momentum");
  cmd->add_option("--batch-size", m.batch_size, "mlp: minibatch size");
}

TrainConfig config_from(const ModelFlags& m, std::uint64_t seed) {
  TrainConfig c;
  c.kind = *parse_model_kind(m.kind);
  c.seed = seed;
  if (m.max_depth) c.tree.max_depth = *m.max_depth;
  if (m.min_leaf) c.tree.min_leaf = *m.min_leaf;
  if (m.n_trees) c.forest.n_trees = *m.n_trees;
  if (m.features_per_split) c.forest.features_per_split = *m.features_per_split;
  if (m.rounds) c.adaboost.n_rounds = *m.rounds;
  if (m.base) c.adaboost.base = *parse_base_learner(*m.base);
  if (m.lambda) c.svm.lambda = *m.lambda;
  if (m.epochs) {
    c.svm.epochs = *m.epochs;
    c.mlp.epochs = *m.epochs;
  }
  if (m.hidden) c.mlp.hidden_width = *m.hidden;
  if (m.learning_rate) c.mlp.learning_rate = *m.learning_rate;
  if (m.momentum) c.mlp.momentum = *m.momentum;
  if (m.batch_size) c.mlp.batch_size = *m.batch_size;
  c.validate();
  return c;
}

// Features plus labels, from --labels-from when given, otherwise from the
// matrix file's label column. Unlabeled rows are dropped.
struct Supervised {
  FeatureMatrix matrix;
  std::vector<Label> labels;
};

Supervised load_supervised(const fs::path& features, const std::optional<fs::path>& labels_from) {
  require_file(features, "feature matrix");
  LabeledMatrix lm = load_matrix_csv(features);
  std::vector<Label> labels;
  if (labels_from) {
    require_file(*labels_from, "label corpus");
    labels = labels_for(lm.matrix, load_corpus(*labels_from));
  } else if (lm.labels) {
    labels = *lm.labels;
  } else {
    throw ArgumentError("no labels: pass --labels-from or a matrix with a label column");
  }
  std::vector<std::string> keep;
  std::vector<Label> kept_labels;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == Label::unlabeled) continue;
    keep.push_back(lm.matrix.row_ids()[i]);
    kept_labels.push_back(labels[i]);
  }
  if (keep.empty()) throw Error("no labeled rows in " + features.string());
  return {keep.size() == labels.size() ? std::move(lm.matrix) : lm.matrix.select_rows(keep), std::move(kept_labels)};
}

void print_stats(const Corpus& c) {
  const auto s = stats(c);
  std::cout << s.total << " tweets: " << s.n_hate << " hate, " << s.n_normal << " normal, " << s.n_unlabeled
            << " unlabeled, " << s.distinct_hashtags << " hashtags\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hate-speech corpus analysis toolkit", "hatepol"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hatepol 1.0");
  Common common;

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Validate, optionally clean and split a corpus");
  fs::path ingest_in, ingest_out;
  bool ingest_clean = false, ingest_stratified = false;
  std::optional<double> ingest_split;
  ingest->add_option("--input", ingest_in, "Raw corpus (.jsonl or .csv)")->required();
  ingest->add_flag("--clean", ingest_clean, "Drop retweets, hashtag/URL-only tweets and duplicates");
  ingest->add_option("--split", ingest_split, "Assign a train/test split with this train fraction");
  ingest->add_flag("--stratified", ingest_stratified, "Stratify the split by label");
  ingest->add_option("--out", ingest_out, "Output corpus (.jsonl)")->required();
  add_common(ingest, common);

  // sample
  auto* sample = app.add_subcommand("sample", "Snowball-sample tweets from an offline stream by hashtag");
  fs::path sample_seeds, sample_stream, sample_out;
  std::size_t sample_rounds = 2, sample_max = 1000;
  sample->add_option("--seeds", sample_seeds, "Seed hashtags, one per line")->required();
  sample->add_option("--stream", sample_stream, "Tweet stream (.jsonl)")->required();
  sample->add_option("--rounds", sample_rounds, "Expansion rounds")->capture_default_str();
  sample->add_option("--max-per-round", sample_max, "Tweet cap per round")->capture_default_str()->check(
      CLI::PositiveNumber);
  sample->add_option("--out", sample_out, "Sampled corpus (.jsonl)")->required();
  add_common(sample, common);

  // featurize
  auto* featurize_cmd = app.add_subcommand("featurize", "Extract the lexicon and stylometric feature matrix");
  fs::path feat_corpus, feat_liwc, feat_nrc, feat_out;
  std::optional<fs::path> feat_embeddings;
  bool feat_nonstandard = false;
  featurize_cmd->add_option("--corpus", feat_corpus, "Corpus (.jsonl or .csv)")->required();
  featurize_cmd->add_option("--liwc", feat_liwc, "LIWC-style .dic lexicon")->required();
  featurize_cmd->add_option("--nrc", feat_nrc, "NRC-style emotion lexicon (.tsv)")->required();
  featurize_cmd->add_option("--embeddings", feat_embeddings, "Precomputed embeddings appended as extra columns");
  featurize_cmd->add_flag("--allow-nonstandard", feat_nonstandard, "Accept lexicons without 68/10 categories");
  featurize_cmd->add_option("--out", feat_out, "Feature matrix (.csv)")->required();
  add_common(featurize_cmd, common);

  // train
  auto* train_cmd = app.add_subcommand("train", "Train a classifier on a feature matrix");
  fs::path train_features, train_out;
  std::optional<fs::path> train_labels;
  ModelFlags train_model;
  train_cmd->add_option("--features", train_features, "Feature matrix (.csv)")->required();
  train_cmd->add_option("--labels-from", train_labels, "Corpus providing labels by id");
  add_model_flags(train_cmd, train_model, true);
  train_cmd->add_option("--out", train_out, "Model file (.json)")->required();
  add_common(train_cmd, common);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Score a trained model on a labeled feature matrix");
  fs::path eval_model, eval_features, eval_report;
  std::optional<fs::path> eval_labels;
  double eval_threshold = 0.5;
  eval_cmd->add_option("--model", eval_model, "Model file (.json)")->required();
  eval_cmd->add_option("--features", eval_features, "Feature matrix (.csv)")->required();
  eval_cmd->add_option("--labels-from", eval_labels, "Corpus providing labels by id");
  eval_cmd->add_option("--threshold", eval_threshold, "Score threshold for the hate class")->capture_default_str();
  eval_cmd->add_option("--report,--out", eval_report, "Report (.json)")->required();
  add_common(eval_cmd, common);

  // backtest
  auto* backtest = app.add_subcommand("backtest", "Train on one corpus and evaluate on another");
  std::optional<fs::path> bt_spec, bt_train, bt_test, bt_liwc, bt_nrc;
  std::string bt_train_split = "auto", bt_test_split = "auto";
  double bt_threshold = 0.5;
  bool bt_nonstandard = false;
  fs::path bt_report;
  ModelFlags bt_model;
  backtest->add_option("--spec", bt_spec, "Experiment spec (.json); the flags below override it");
  backtest->add_option("--train-corpus", bt_train, "Training corpus");
  backtest->add_option("--test-corpus", bt_test, "Test corpus");
  backtest->add_option("--train-split", bt_train_split, "Rows of the training corpus: all, train, test or auto")
      ->check(CLI::IsMember({"all", "train", "test", "auto"}));
  backtest->add_option("--test-split", bt_test_split, "Rows of the test corpus: all, train, test or auto")
      ->check(CLI::IsMember({"all", "train", "test", "auto"}));
  backtest->add_option("--liwc", bt_liwc, "LIWC-style .dic lexicon");
  backtest->add_option("--nrc", bt_nrc, "NRC-style emotion lexicon (.tsv)");
  backtest->add_flag("--allow-nonstandard", bt_nonstandard, "Accept lexicons without 68/10 categories");
  backtest->add_option("--threshold", bt_threshold, "Score threshold for the hate class")->capture_default_str();
  add_model_flags(backtest, bt_model, false);
  backtest->add_option("--report,--out", bt_report, "Report (.json)")->required();
  add_common(backtest, common);

  // correlate
  auto* correlate = app.add_subcommand("correlate", "Rank features by Pearson correlation with the hate label");
  fs::path corr_features, corr_out;
  std::optional<fs::path> corr_labels;
  correlate->add_option("--features", corr_features, "Feature matrix (.csv)")->required();
  correlate->add_option("--labels-from", corr_labels, "Corpus providing labels by id");
  correlate->add_option("--out", corr_out, "Ranking (.csv)")->required();
  add_common(correlate, common);

  // salience
  auto* salience = app.add_subcommand("salience", "Most class-distinctive words and hashtags");
  fs::path sal_corpus, sal_out;
  std::size_t sal_k = 20;
  salience->add_option("--corpus", sal_corpus, "Labeled corpus")->required();
  salience->add_option("--top-k", sal_k, "Tokens per class")->capture_default_str()->check(CLI::PositiveNumber);
  salience->add_option("--out", sal_out, "Salience table (.csv)")->required();
  add_common(salience, common);

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "Lay out and draw the class-anchored hashtag network");
  fs::path graph_corpus, graph_out;
  std::size_t graph_min = 1;
  bool graph_co = false;
  std::string graph_format;
  LayoutParams lp;
  graph_cmd->add_option("--corpus", graph_corpus, "Labeled corpus")->required();
  graph_cmd->add_option("--min-count", graph_min, "Drop hashtags seen in fewer tweets")->capture_default_str();
  graph_cmd->add_flag("--cooccurrence", graph_co, "Add hashtag co-occurrence edges");
  graph_cmd->add_option("--format", graph_format, "svg, graphml or dot (default: from --out extension)")
      ->check(CLI::IsMember({"svg", "graphml", "dot"}));
  graph_cmd->add_option("--K", lp.K, "Natural edge length")->capture_default_str();
  graph_cmd->add_option("--C", lp.C, "Repulsion strength")->capture_default_str();
  graph_cmd->add_option("--theta", lp.theta, "Quadtree opening angle")->capture_default_str();
  graph_cmd->add_option("--tol", lp.tol, "Convergence tolerance (fraction of K)")->capture_default_str();
  graph_cmd->add_option("--max-iter", lp.max_iter, "Iteration cap per level")->capture_default_str();
  graph_cmd->add_option("--out", graph_out, "Drawing file")->required();
  add_common(graph_cmd, common);

  // kappa
  auto* kappa = app.add_subcommand("kappa", "Cohen's kappa between two annotators' labels");
  fs::path kappa_a, kappa_b;
  std::optional<fs::path> kappa_out;
  kappa->add_option("--a", kappa_a, "First annotator's corpus")->required();
  kappa->add_option("--b", kappa_b, "Second annotator's corpus")->required();
  kappa->add_option("--out", kappa_out, "Also write the result as JSON");
  add_common(kappa, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (common.jobs > 0) omp_set_num_threads(common.jobs);

    if (*ingest) {
      require_file(ingest_in, "input corpus");
      Corpus c = load_corpus(ingest_in);
      if (ingest_clean) c = clean(c);
      if (ingest_split) c = split(c, *ingest_split, common.seed, ingest_stratified);
      save_corpus(c, ingest_out);
      print_stats(c);
    } else if (*sample) {
      require_file(sample_seeds, "seed file");
      require_file(sample_stream, "stream file");
      StreamFileFetcher fetcher(sample_stream);
      const auto result = snowball_sample(load_seeds(sample_seeds), fetcher, sample_rounds, sample_max);
      save_corpus(result.corpus, sample_out);
      std::cout << result.corpus.tweets.size() << " tweets, " << result.expanded_seeds.size() << " hashtags queried\n";
    } else if (*featurize_cmd) {
      require_file(feat_corpus, "corpus");
      require_file(feat_liwc, "LIWC lexicon");
      require_file(feat_nrc, "emotion lexicon");
      const Corpus c = load_corpus(feat_corpus);
      const Lexicon liwc = load_lexicon(feat_liwc, LexiconFormat::liwc_dic);
      const Lexicon emo = load_lexicon(feat_nrc, LexiconFormat::emolex_tsv);
      FeatureMatrix m = featurize(c, liwc, emo, {feat_nonstandard});
      if (feat_embeddings) {
        require_file(*feat_embeddings, "embeddings");
        m = m.hstack(join_to_corpus(load_embeddings(*feat_embeddings), c));
      }
      const auto labels = labels_for(m, c);
      save_matrix_csv(m, feat_out, &labels);
      std::cout << m.rows() << " rows x " << m.cols() << " columns\n";
    } else if (*train_cmd) {
      const TrainConfig config = config_from(train_model, common.seed);
      const auto data = load_supervised(train_features, train_labels);
      const Model model = train(data.matrix, binary_labels(data.labels), config);
      save_model(model, train_out);
    } else if (*eval_cmd) {
      require_file(eval_model, "model");
      const Model model = load_model(eval_model);
      const auto data = load_supervised(eval_features, eval_labels);
      const auto scores = predict_scores(model, data.matrix);
      EvalReport report = evaluate(scores, data.labels, eval_threshold);
      report.run.test_corpus = eval_features.stem().string();
      report.run.model_config = hyperparameters_json(model.config);
      report.run.seed = model.config.seed;
      write_file(eval_report, report_to_json(report));
      std::cout << "roc_auc " << csv::format_real(report.roc_auc) << ", weighted_f1 "
                << csv::format_real(report.weighted_f1) << '\n';
    } else if (*backtest) {
      ExperimentSpec spec;
      if (bt_spec) {
        require_file(*bt_spec, "experiment spec");
        spec = load_experiment_spec(*bt_spec);
      }
      if (bt_train) spec.train_corpus = *bt_train;
      if (bt_test) spec.test_corpus = *bt_test;
      if (bt_liwc) spec.liwc = *bt_liwc;
      if (bt_nrc) spec.nrc = *bt_nrc;
      if (!bt_spec || backtest->count("--train-split")) spec.train_split = *parse_split_selector(bt_train_split);
      if (!bt_spec || backtest->count("--test-split")) spec.test_split = *parse_split_selector(bt_test_split);
      if (bt_nonstandard) spec.allow_nonstandard_lexicons = true;
      if (!bt_spec || backtest->count("--threshold")) spec.threshold = bt_threshold;
      if (!bt_spec || backtest->count("--model")) spec.train = config_from(bt_model, common.seed);
      if (!bt_spec || backtest->count("--seed")) spec.train.seed = common.seed;
      for (auto [path, flag] : {std::pair{&spec.train_corpus, "--train-corpus"}, std::pair{&spec.test_corpus, "--test-corpus"},
                                std::pair{&spec.liwc, "--liwc"}, std::pair{&spec.nrc, "--nrc"}}) {
        if (path->empty()) throw ArgumentError(std::string(flag) + " is required (or give it in --spec)");
        require_file(*path, std::string(flag).substr(2));
      }
      const EvalReport report = run_experiment(spec);
      write_file(bt_report, report_to_json(report));
      std::cout << "roc_auc " << csv::format_real(report.roc_auc) << ", weighted_f1 "
                << csv::format_real(report.weighted_f1) << '\n';
    } else if (*correlate) {
      const auto data = load_supervised(corr_features, corr_labels);
      const auto ranking = correlation_ranking(data.matrix, binary_labels(data.labels));
      write_file(corr_out, ranking_to_csv(ranking));
    } else if (*salience) {
      require_file(sal_corpus, "corpus");
      write_file(sal_out, salience_to_csv(token_salience(load_corpus(sal_corpus)), sal_k));
    } else if (*graph_cmd) {
      require_file(graph_corpus, "corpus");
      GraphFormat format;
      if (!graph_format.empty()) {
        format = parse_graph_format(graph_format);
      } else {
        const auto ext = graph_out.extension().string();
        if (ext.size() < 2) throw ArgumentError("pass --format or an --out path ending in .svg, .graphml or .dot");
        format = parse_graph_format(ext.substr(1));
      }
      lp.seed = common.seed;
      const HashtagGraph g = build_hashtag_graph(load_corpus(graph_corpus), graph_min, graph_co);
      const Layout layout = yifan_hu_layout(g, lp);
      const auto partition = partition_hashtags(g);
      export_graph(g, layout, partition, format, graph_out);
      std::cout << g.size() << " nodes, " << g.edges.size() << " edges; hate_only " << partition.hate_only.size()
                << ", normal_only " << partition.normal_only.size() << ", both " << partition.both.size() << '\n';
    } else if (*kappa) {
      require_file(kappa_a, "annotation corpus");
      require_file(kappa_b, "annotation corpus");
      const auto pairs = pair_annotations(load_corpus(kappa_a), load_corpus(kappa_b));
      const double k = cohen_kappa(pairs);
      std::cout << "kappa " << csv::format_real(k) << " over " << pairs.items.size() << " items\n";
      if (kappa_out) {
        nlohmann::json j{{"kappa", k}, {"items", pairs.items.size()}};
        write_file(*kappa_out, j.dump(2) + "\n");
      }
    }
  } catch (const ArgumentError& e) {
    std::cerr << "hatepol: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "hatepol: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
