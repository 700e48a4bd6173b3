#include <doctest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <json.hpp>

#include "hatepol/corpus.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using testing::data_dir;
using testing::slurp;

namespace {

std::string quote(const std::string& s) { return "'" + s + "'"; }

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string& args, const fs::path& dir) {
  const auto out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = quote(HATEPOL_CLI) + " " + args + " >" + quote(out) + " 2>" + quote(err);
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return {WEXITSTATUS(status), slurp(out), slurp(err)};
}

std::string fixture(const std::string& name) { return quote((data_dir() / "fixtures" / name).string()); }
std::string lexicons() {
  return "--liwc " + quote((data_dir() / "sample_liwc.dic").string()) + " --nrc " +
         quote((data_dir() / "sample_nrc.tsv").string());
}

// Runs every subcommand with fixed inputs into `dir`; returns the primary outputs.
std::vector<fs::path> full_pipeline(const fs::path& dir) {
  auto at = [&](const std::string& f) { return quote((dir / f).string()); };
  const std::vector<std::string> cmds = {
      "ingest --input " + fixture("raw_policy.jsonl") + " --clean --split 0.8 --stratified --out " + at("clean.jsonl"),
      "sample --seeds " + fixture("seeds.txt") + " --stream " + fixture("stream.jsonl") + " --rounds 2 --out " +
          at("sampled.jsonl"),
      "featurize --corpus " + fixture("policy.jsonl") + " " + lexicons() + " --out " + at("policy.csv"),
      "train --model forest --features " + at("policy.csv") + " --labels-from " + fixture("policy.jsonl") +
          " --out " + at("forest.json"),
      "train --model mlp --epochs 5 --features " + at("policy.csv") + " --out " + at("mlp.json"),
      "train --model adaboost --rounds 10 --features " + at("policy.csv") + " --out " + at("ada.json"),
      "eval --model " + at("forest.json") + " --features " + at("policy.csv") + " --report " + at("eval.json"),
      "backtest --train-corpus " + fixture("immigration.jsonl") + " --test-corpus " + fixture("policy.jsonl") + " " +
          lexicons() + " --model svm --report " + at("backtest.json"),
      "correlate --features " + at("policy.csv") + " --out " + at("corr.csv"),
      "salience --corpus " + fixture("policy.jsonl") + " --top-k 5 --out " + at("salience.csv"),
      "graph --corpus " + fixture("policy.jsonl") + " --cooccurrence --out " + at("g.svg"),
      "graph --corpus " + fixture("policy.jsonl") + " --out " + at("g.graphml"),
      "graph --corpus " + fixture("policy.jsonl") + " --format dot --out " + at("g.txt"),
      "kappa --a " + fixture("annotator_a.jsonl") + " --b " + fixture("annotator_b.jsonl") + " --out " +
          at("kappa.json"),
  };
  for (const auto& c : cmds) {
    const auto r = run(c, dir);
    CHECK_MESSAGE(r.code == 0, c, "\n", r.err);
  }
  std::vector<fs::path> outputs;
  for (const char* f : {"clean.jsonl", "sampled.jsonl", "policy.csv", "forest.json", "mlp.json", "ada.json",
                        "eval.json", "backtest.json", "corr.csv", "salience.csv", "g.svg", "g.graphml", "g.txt",
                        "kappa.json"})
    outputs.push_back(dir / f);
  return outputs;
}

}  // namespace

TEST_CASE("exit codes") {
  const auto dir = testing::scratch_dir("cli_codes");
  CHECK(run("", dir).code == 1);
  CHECK(run("frobnicate", dir).code == 1);
  const auto usage = run("train --model svm --out " + quote((dir / "m.json").string()), dir);
  CHECK(usage.code == 1);
  CHECK_FALSE(usage.err.empty());
  CHECK(run("train --model perceptron --features x.csv --out m.json", dir).code == 1);
  CHECK(run("graph --corpus " + fixture("policy.jsonl") + " --out g.png", dir).code == 1);

  const auto missing = run("featurize --corpus " + quote((dir / "nope.jsonl").string()) + " " + lexicons() +
                               " --out " + quote((dir / "f.csv").string()),
                           dir);
  CHECK(missing.code == 2);
  CHECK(missing.err.find("nope.jsonl") != std::string::npos);
  CHECK_FALSE(fs::exists(dir / "f.csv"));

  testing::spit(dir / "bad.jsonl", "{\"id\": \"1\", \"text\": \n");
  CHECK(run("ingest --input " + quote((dir / "bad.jsonl").string()) + " --out " + quote((dir / "o.jsonl").string()),
            dir)
            .code == 2);
}

TEST_CASE("help documents every flag") {
  const auto dir = testing::scratch_dir("cli_help");
  const std::vector<std::string> common{"--seed", "--jobs", "--help"};
  const std::vector<std::string> model{"--model",  "--max-depth", "--min-leaf", "--n-trees",       "--features-per-split",
                                       "--rounds", "--base",      "--lambda",   "--epochs",        "--hidden",
                                       "--learning-rate", "--momentum", "--batch-size"};
  std::map<std::string, std::vector<std::string>> flags{
      {"ingest", {"--input", "--clean", "--split", "--stratified", "--out"}},
      {"sample", {"--seeds", "--stream", "--rounds", "--max-per-round", "--out"}},
      {"featurize", {"--corpus", "--liwc", "--nrc", "--embeddings", "--allow-nonstandard", "--out"}},
      {"train", {"--features", "--labels-from", "--out"}},
      {"eval", {"--model", "--features", "--labels-from", "--threshold", "--report"}},
      {"backtest",
       {"--spec", "--train-corpus", "--test-corpus", "--train-split", "--test-split", "--liwc", "--nrc",
        "--allow-nonstandard", "--threshold", "--report"}},
      {"correlate", {"--features", "--labels-from", "--out"}},
      {"salience", {"--corpus", "--top-k", "--out"}},
      {"graph", {"--corpus", "--min-count", "--cooccurrence", "--format", "--K", "--C", "--theta", "--tol",
                 "--max-iter", "--out"}},
      {"kappa", {"--a", "--b", "--out"}},
  };
  for (const auto& f : model) {
    flags["train"].push_back(f);
    flags["backtest"].push_back(f);
  }
  for (const auto& [cmd, list] : flags) {
    const auto r = run(cmd + " --help", dir);
    CHECK_MESSAGE(r.code == 0, cmd);
    for (const auto& f : list) CHECK_MESSAGE(r.out.find(f) != std::string::npos, cmd, " ", f);
    for (const auto& f : common) CHECK_MESSAGE(r.out.find(f) != std::string::npos, cmd, " ", f);
  }
  const auto top = run("--help", dir);
  CHECK(top.code == 0);
  for (const auto& [cmd, list] : flags) CHECK(top.out.find(cmd) != std::string::npos);
}

TEST_CASE("ingest cleans the raw fixture") {
  const auto dir = testing::scratch_dir("cli_ingest");
  const auto out = dir / "corpus.jsonl";
  const auto r = run("ingest --input " + fixture("raw_policy.jsonl") + " --clean --out " + quote(out.string()), dir);
  REQUIRE(r.code == 0);
  const auto raw = hatepol::load_corpus(data_dir() / "fixtures" / "raw_policy.jsonl");
  const auto clean = hatepol::load_corpus(out);
  CHECK(clean.size() < raw.size());
  CHECK(clean.size() == hatepol::clean(raw).size());
  for (const auto& t : clean.tweets) CHECK_FALSE(hatepol::is_retweet(t.text));
}

TEST_CASE("primary outputs are byte-identical across runs") {
  const auto a = full_pipeline(testing::scratch_dir("cli_run_a"));
  const auto b = full_pipeline(testing::scratch_dir("cli_run_b"));
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE_MESSAGE(fs::exists(a[i]), a[i].string());
    CHECK_MESSAGE(slurp(a[i]) == slurp(b[i]), a[i].filename().string());
    CHECK_FALSE(slurp(a[i]).empty());
  }
  const auto dot = slurp(a[12]);
  testing::DotChecker checker(dot);
  CHECK_MESSAGE(checker.valid(), checker.error);
  const auto kappa = nlohmann::json::parse(slurp(a[13]));
  CHECK(kappa.contains("kappa"));
}

TEST_CASE("backtest swap and spec file") {
  const auto dir = testing::scratch_dir("cli_backtest");
  auto bt = [&](const std::string& train, const std::string& test, const std::string& out) {
    return run("backtest --train-corpus " + fixture(train) + " --test-corpus " + fixture(test) + " " + lexicons() +
                   " --model forest --report " + quote((dir / out).string()),
               dir);
  };
  REQUIRE(bt("immigration.jsonl", "policy.jsonl", "ab.json").code == 0);
  REQUIRE(bt("policy.jsonl", "immigration.jsonl", "ba.json").code == 0);
  const auto ab = slurp(dir / "ab.json"), ba = slurp(dir / "ba.json");
  CHECK(ab != ba);
  for (const auto& s : {ab, ba}) {
    const auto j = nlohmann::json::parse(s);
    CHECK(j.is_object());
  }

  nlohmann::json spec{{"train_corpus", (data_dir() / "fixtures" / "immigration.jsonl").string()},
                      {"test_corpus", (data_dir() / "fixtures" / "policy.jsonl").string()},
                      {"liwc", (data_dir() / "sample_liwc.dic").string()},
                      {"nrc", (data_dir() / "sample_nrc.tsv").string()},
                      {"model", "forest"},
                      {"seed", 42}};
  testing::spit(dir / "spec.json", spec.dump());
  const auto r = run("backtest --spec " + quote((dir / "spec.json").string()) + " --report " +
                         quote((dir / "spec_report.json").string()),
                     dir);
  CHECK_MESSAGE(r.code == 0, r.err);
  CHECK(slurp(dir / "spec_report.json") == ab);
}

TEST_CASE("kappa prints the coefficient") {
  const auto dir = testing::scratch_dir("cli_kappa");
  const auto r = run("kappa --a " + fixture("annotator_a.jsonl") + " --b " + fixture("annotator_b.jsonl"), dir);
  REQUIRE(r.code == 0);
  // Cohen's κ recomputed from the two files with per-annotator marginals.
  const auto a = hatepol::load_corpus(data_dir() / "fixtures" / "annotator_a.jsonl");
  const auto b = hatepol::load_corpus(data_dir() / "fixtures" / "annotator_b.jsonl");
  std::map<std::string, hatepol::Label> by_id;
  for (const auto& t : b.tweets) by_id[t.id] = t.label;
  double n = 0, agree = 0, a_hate = 0, b_hate = 0;
  for (const auto& t : a.tweets) {
    const auto it = by_id.find(t.id);
    if (it == by_id.end()) continue;
    n += 1;
    agree += t.label == it->second;
    a_hate += t.label == hatepol::Label::hate;
    b_hate += it->second == hatepol::Label::hate;
  }
  const double po = agree / n, pe = (a_hate / n) * (b_hate / n) + (1 - a_hate / n) * (1 - b_hate / n);
  const double value = std::stod(r.out.substr(r.out.find_first_of("-0123456789")));
  CHECK(value == doctest::Approx((po - pe) / (1 - pe)).epsilon(1e-12));
}
