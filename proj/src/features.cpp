#include "hatepol/features.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "hatepol/csv.hpp"
#include "hatepol/error.hpp"
#include "hatepol/stylometry.hpp"
#include "hatepol/text.hpp"

namespace hatepol {

FeatureMatrix::FeatureMatrix(std::vector<std::string> column_names, std::vector<std::string> row_ids)
    : column_names_(std::move(column_names)),
      row_ids_(std::move(row_ids)),
      values_(row_ids_.size() * column_names_.size(), 0.0) {}

std::vector<double> FeatureMatrix::column(std::size_t c) const {
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
  return out;
}

void FeatureMatrix::append_row(std::string id, std::span<const double> values) {
  if (values.size() != cols())
    throw RaggedRowsError("row '" + id + "' has " + std::to_string(values.size()) + " values, expected " +
                          std::to_string(cols()));
  row_ids_.push_back(std::move(id));
  values_.insert(values_.end(), values.begin(), values.end());
}

FeatureMatrix FeatureMatrix::select_rows(std::span<const std::string> ids) const {
  std::unordered_map<std::string_view, std::size_t> index;
  for (std::size_t r = 0; r < rows(); ++r) index.emplace(row_ids_[r], r);
  std::string missing;
  std::size_t n_missing = 0;
  for (const auto& id : ids) {
    if (!index.contains(id)) {
      if (n_missing++ < 20) missing += (missing.empty() ? "" : ", ") + id;
    }
  }
  if (n_missing > 0)
    throw IdMismatchError(std::to_string(n_missing) + " id(s) missing from matrix: " + missing +
                          (n_missing > 20 ? ", ..." : ""));
  FeatureMatrix out(column_names_, {});
  for (const auto& id : ids) out.append_row(id, row(index.at(id)));
  return out;
}

FeatureMatrix FeatureMatrix::hstack(const FeatureMatrix& other) const {
  if (other.row_ids_ != row_ids_) throw IdMismatchError("hstack: row ids differ");
  auto names = column_names_;
  names.insert(names.end(), other.column_names_.begin(), other.column_names_.end());
  FeatureMatrix out(std::move(names), {});
  std::vector<double> buf;
  for (std::size_t r = 0; r < rows(); ++r) {
    buf.assign(row(r).begin(), row(r).end());
    buf.insert(buf.end(), other.row(r).begin(), other.row(r).end());
    out.append_row(row_ids_[r], buf);
  }
  out.validate();
  return out;
}

void FeatureMatrix::validate() const {
  if (values_.size() != rows() * cols()) throw RaggedRowsError("matrix storage does not match its shape");
  std::unordered_set<std::string_view> seen;
  for (const auto& n : column_names_) {
    if (!seen.insert(n).second) throw Error("duplicate column name '" + n + "'");
  }
  seen.clear();
  for (const auto& id : row_ids_) {
    if (!seen.insert(id).second) throw DuplicateIdError(id);
  }
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols(); ++c) {
      if (!std::isfinite(at(r, c)))
        throw NonFiniteError("non-finite value in column '" + column_names_[c] + "' row '" + row_ids_[r] + "'");
    }
  }
}

std::vector<std::string> feature_columns(const Lexicon& liwc, const Lexicon& emo) {
  std::vector<std::string> names;
  for (const auto& c : liwc.categories()) names.push_back("liwc_" + c);
  for (const auto& c : emo.categories()) names.push_back("nrc_" + c);
  for (auto n : stylometric_names()) names.emplace_back(n);
  return names;
}

std::vector<double> featurize_text(std::string_view text, const Lexicon& liwc, const Lexicon& emo) {
  const auto tokens = tokenize(text);
  auto out = lexicon_features(tokens, liwc);
  const auto e = lexicon_features(tokens, emo);
  out.insert(out.end(), e.begin(), e.end());
  const auto s = stylometric_features(text, tokens);
  out.insert(out.end(), s.begin(), s.end());
  return out;
}

namespace {

FeatureMatrix empty_feature_matrix(const Corpus& corpus, const Lexicon& liwc, const Lexicon& emo,
                                   const FeaturizeOptions& options) {
  if (!options.allow_nonstandard &&
      (liwc.categories().size() != kLiwcCategories || emo.categories().size() != kEmotionCategories)) {
    throw ArgumentError("lexicons have " + std::to_string(liwc.categories().size()) + " and " +
                        std::to_string(emo.categories().size()) + " categories; expected " +
                        std::to_string(kLiwcCategories) + " and " + std::to_string(kEmotionCategories) +
                        " (pass allow_nonstandard to override)");
  }
  std::vector<std::string> ids;
  ids.reserve(corpus.size());
  for (const auto& t : corpus.tweets) ids.push_back(t.id);
  return FeatureMatrix(feature_columns(liwc, emo), std::move(ids));
}

}  // namespace

FeatureMatrix featurize(const Corpus& corpus, const Lexicon& liwc, const Lexicon& emo,
                        const FeaturizeOptions& options) {
  auto m = empty_feature_matrix(corpus, liwc, emo, options);
  const auto n = static_cast<std::ptrdiff_t>(corpus.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t r = 0; r < n; ++r) {
    const auto row = featurize_text(corpus.tweets[r].text, liwc, emo);
    std::copy(row.begin(), row.end(), m.row(static_cast<std::size_t>(r)).begin());
  }
  return m;
}

FeatureMatrix featurize_serial(const Corpus& corpus, const Lexicon& liwc, const Lexicon& emo,
                               const FeaturizeOptions& options) {
  auto m = empty_feature_matrix(corpus, liwc, emo, options);
  for (std::size_t r = 0; r < corpus.size(); ++r) {
    const auto row = featurize_text(corpus.tweets[r].text, liwc, emo);
    std::copy(row.begin(), row.end(), m.row(r).begin());
  }
  return m;
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double parse_real(const std::string& field, std::size_t line) {
  const auto t = text::trim(field);
  double v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || ptr != t.data() + t.size()) throw ParseError("not a number: '" + t + "'", line);
  if (!std::isfinite(v)) throw ParseError("non-finite value '" + t + "'", line);
  return v;
}

}  // namespace

FeatureMatrix parse_embeddings_csv(std::string_view content) {
  std::istringstream in{std::string(content)};
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header || header->empty() || text::trim((*header)[0]) != "id")
    throw ParseError("embedding CSV header must start with 'id'", 1);
  std::vector<std::string> names(header->begin() + 1, header->end());
  FeatureMatrix m(names, {});
  std::vector<double> buf;
  while (auto rec = reader.next()) {
    if (rec->size() != header->size())
      throw RaggedRowsError("line " + std::to_string(reader.record_line()) + ": row has " +
                            std::to_string(rec->size() - 1) + " values, expected " + std::to_string(names.size()));
    buf.clear();
    for (std::size_t i = 1; i < rec->size(); ++i) buf.push_back(parse_real((*rec)[i], reader.record_line()));
    m.append_row((*rec)[0], buf);
  }
  m.validate();
  return m;
}

FeatureMatrix parse_embeddings_jsonl(std::string_view content) {
  std::istringstream in{std::string(content)};
  std::string line;
  std::size_t lineno = 0;
  std::optional<FeatureMatrix> m;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(e.what(), lineno);
    }
    if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_string() || !rec.contains("vector") ||
        !rec["vector"].is_array())
      throw ParseError("expected {\"id\": string, \"vector\": [numbers]}", lineno);
    std::vector<double> v;
    for (const auto& x : rec["vector"]) {
      if (!x.is_number()) throw ParseError("vector entries must be numbers", lineno);
      v.push_back(x.get<double>());
    }
    if (!m) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < v.size(); ++i) names.push_back("e" + std::to_string(i));
      m.emplace(std::move(names), std::vector<std::string>{});
    }
    if (v.size() != m->cols())
      throw RaggedRowsError("line " + std::to_string(lineno) + ": row has " + std::to_string(v.size()) +
                            " values, expected " + std::to_string(m->cols()));
    m->append_row(rec["id"].get<std::string>(), v);
  }
  if (!m) return FeatureMatrix();
  m->validate();
  return *m;
}

FeatureMatrix load_embeddings(const std::filesystem::path& path) {
  const auto content = read_file(path);
  return path.extension() == ".jsonl" ? parse_embeddings_jsonl(content) : parse_embeddings_csv(content);
}

FeatureMatrix join_to_corpus(const FeatureMatrix& matrix, const Corpus& corpus) {
  std::vector<std::string> ids;
  ids.reserve(corpus.size());
  for (const auto& t : corpus.tweets) ids.push_back(t.id);
  return matrix.select_rows(ids);
}

std::string to_csv(const FeatureMatrix& matrix, const std::vector<Label>* labels) {
  std::string out = "id";
  for (const auto& n : matrix.column_names()) out += "," + csv::quote(n);
  if (labels) out += ",label";
  out.push_back('\n');
  for (std::size_t r = 0; r < matrix.rows(); ++r) {
    out += csv::quote(matrix.row_ids()[r]);
    for (double v : matrix.row(r)) out += "," + csv::format_real(v);
    if (labels) {
      const auto l = (*labels)[r];
      out += ",";
      if (l != Label::unlabeled) out += to_string(l);
    }
    out.push_back('\n');
  }
  return out;
}

void save_matrix_csv(const FeatureMatrix& matrix, const std::filesystem::path& path,
                     const std::vector<Label>* labels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << to_csv(matrix, labels);
  if (!out) throw Error("write failed: " + path.string());
}

LabeledMatrix parse_matrix_csv(std::string_view content) {
  std::istringstream in{std::string(content)};
  csv::Reader reader(in);
  auto header = reader.next();
  if (!header || header->empty() || text::trim((*header)[0]) != "id")
    throw ParseError("feature CSV header must start with 'id'", 1);
  const bool has_label = header->size() >= 2 && text::trim(header->back()) == "label";
  const std::size_t n_values = header->size() - 1 - (has_label ? 1 : 0);
  std::vector<std::string> names(header->begin() + 1, header->begin() + 1 + static_cast<std::ptrdiff_t>(n_values));
  LabeledMatrix out{FeatureMatrix(names, {}), std::nullopt};
  if (has_label) out.labels.emplace();
  std::vector<double> buf;
  while (auto rec = reader.next()) {
    if (rec->size() != header->size())
      throw RaggedRowsError("line " + std::to_string(reader.record_line()) + ": expected " +
                            std::to_string(header->size()) + " fields");
    buf.clear();
    for (std::size_t i = 1; i <= n_values; ++i) buf.push_back(parse_real((*rec)[i], reader.record_line()));
    out.matrix.append_row((*rec)[0], buf);
    if (has_label) {
      auto l = parse_label(text::trim(rec->back()));
      if (!l) throw ParseError("unknown label '" + rec->back() + "'", reader.record_line());
      out.labels->push_back(*l);
    }
  }
  out.matrix.validate();
  return out;
}

LabeledMatrix load_matrix_csv(const std::filesystem::path& path) { return parse_matrix_csv(read_file(path)); }

std::vector<Label> labels_for(const FeatureMatrix& matrix, const Corpus& corpus) {
  std::unordered_map<std::string_view, Label> by_id;
  for (const auto& t : corpus.tweets) by_id.emplace(t.id, t.label);
  std::vector<Label> out;
  out.reserve(matrix.rows());
  for (const auto& id : matrix.row_ids()) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw IdMismatchError("row id '" + id + "' not found in label corpus");
    out.push_back(it->second);
  }
  return out;
}

}  // namespace hatepol
