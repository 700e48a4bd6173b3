#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "hatepol/corpus.hpp"
#include "hatepol/lexicon.hpp"
#include "hatepol/metrics.hpp"
#include "hatepol/models.hpp"

namespace hatepol {

// Which rows of a corpus take part: a split, all rows, or "auto" (the train
// split for training and the test split for testing when the corpus carries
// an assignment, otherwise all rows).
enum class SplitSelector { all, train, test, automatic };

std::optional<SplitSelector> parse_split_selector(std::string_view text);
std::string_view to_string(SplitSelector selector);

struct ExperimentSpec {
  std::filesystem::path train_corpus;
  SplitSelector train_split = SplitSelector::automatic;
  std::filesystem::path test_corpus;
  SplitSelector test_split = SplitSelector::automatic;
  std::filesystem::path liwc;
  std::filesystem::path nrc;
  bool allow_nonstandard_lexicons = false;
  TrainConfig train;
  double threshold = 0.5;
};

// JSON object with keys train_corpus, test_corpus, liwc, nrc (paths relative
// to `base_dir`), optional train_split/test_split (all|train|test|auto),
// model, seed, threshold, allow_nonstandard_lexicons and a hyperparameters
// object using the model-file keys.
ExperimentSpec parse_experiment_spec(std::string_view json_text, const std::filesystem::path& base_dir = {});
ExperimentSpec load_experiment_spec(const std::filesystem::path& path);

// Rows of `corpus` taking part in the training (`for_training`) or test side.
Corpus resolve_source(const Corpus& corpus, SplitSelector selector, bool for_training);

// Featurizes both sides with the same lexicons, trains, and evaluates on the
// test side. Upstream errors are rethrown as StageError naming the stage.
EvalReport run_experiment(const ExperimentSpec& spec, const Corpus& train_corpus, const Corpus& test_corpus,
                          const Lexicon& liwc, const Lexicon& emo);

// Loads corpora and lexicons named by the spec, then runs it.
EvalReport run_experiment(const ExperimentSpec& spec);

}  // namespace hatepol
