#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hatepol/corpus.hpp"
#include "hatepol/lexicon.hpp"

namespace hatepol {

// Row-major matrix with named columns and one tweet id per row.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::vector<std::string> column_names, std::vector<std::string> row_ids);

  std::size_t rows() const noexcept { return row_ids_.size(); }
  std::size_t cols() const noexcept { return column_names_.size(); }

  const std::vector<std::string>& column_names() const noexcept { return column_names_; }
  const std::vector<std::string>& row_ids() const noexcept { return row_ids_; }

  double& at(std::size_t r, std::size_t c) { return values_[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const { return values_[r * cols() + c]; }
  std::span<double> row(std::size_t r) { return {values_.data() + r * cols(), cols()}; }
  std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols(), cols()}; }
  std::vector<double> column(std::size_t c) const;
  std::span<const double> values() const noexcept { return values_; }

  void append_row(std::string id, std::span<const double> values);

  // Rows reordered to `ids`; throws IdMismatchError listing ids not present.
  FeatureMatrix select_rows(std::span<const std::string> ids) const;
  // Same rows, columns of `other` appended (row ids must agree).
  FeatureMatrix hstack(const FeatureMatrix& other) const;

  // Throws on ragged rows, duplicate ids or names, and non-finite values.
  void validate() const;

  friend bool operator==(const FeatureMatrix&, const FeatureMatrix&) = default;

 private:
  std::vector<std::string> column_names_;
  std::vector<std::string> row_ids_;
  std::vector<double> values_;
};

struct FeaturizeOptions {
  // Allows lexicons whose category counts differ from 68 and 10.
  bool allow_nonstandard = false;
};

inline constexpr std::size_t kLiwcCategories = 68;
inline constexpr std::size_t kEmotionCategories = 10;

// Column names: "liwc_<cat>", "nrc_<cat>", then the stylometric names.
std::vector<std::string> feature_columns(const Lexicon& liwc, const Lexicon& emo);

std::vector<double> featurize_text(std::string_view text, const Lexicon& liwc, const Lexicon& emo);

// Rows computed in parallel; same result as featurize_serial.
FeatureMatrix featurize(const Corpus& corpus, const Lexicon& liwc, const Lexicon& emo,
                        const FeaturizeOptions& options = {});
FeatureMatrix featurize_serial(const Corpus& corpus, const Lexicon& liwc, const Lexicon& emo,
                               const FeaturizeOptions& options = {});

// CSV "id,e0,e1,..." or JSONL {"id": ..., "vector": [...]} (by extension).
FeatureMatrix load_embeddings(const std::filesystem::path& path);
FeatureMatrix parse_embeddings_csv(std::string_view content);
FeatureMatrix parse_embeddings_jsonl(std::string_view content);

// Rows aligned to corpus order; throws IdMismatchError naming absent ids.
FeatureMatrix join_to_corpus(const FeatureMatrix& matrix, const Corpus& corpus);

// Matrix CSV: header "id,<columns>[,label]". Labels, when given, are
// written as hate/normal/empty.
void save_matrix_csv(const FeatureMatrix& matrix, const std::filesystem::path& path,
                     const std::vector<Label>* labels = nullptr);
std::string to_csv(const FeatureMatrix& matrix, const std::vector<Label>* labels = nullptr);

struct LabeledMatrix {
  FeatureMatrix matrix;
  // Present when the file carries a trailing label column.
  std::optional<std::vector<Label>> labels;
};

LabeledMatrix load_matrix_csv(const std::filesystem::path& path);
LabeledMatrix parse_matrix_csv(std::string_view content);

// Labels of the corpus tweets for each matrix row id.
std::vector<Label> labels_for(const FeatureMatrix& matrix, const Corpus& corpus);

}  // namespace hatepol
