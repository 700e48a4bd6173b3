#pragma once
// Independent reference computations and generators shared by the tests.
// Nothing here calls into the library's numeric code.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "hatepol/corpus.hpp"
#include "hatepol/features.hpp"
#include "hatepol/rng.hpp"

namespace testing {

namespace fs = std::filesystem;

inline fs::path data_dir() { return fs::path(HATEPOL_DATA_DIR); }

// Fresh scratch directory under the system temp dir.
inline fs::path scratch_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("hatepol_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void spit(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
}

// ROC AUC by enumerating every (positive, negative) pair; exact rational
// value returned as a double.
inline double roc_pairs(std::span<const double> scores, std::span<const int> labels) {
  std::int64_t twice_wins = 0, pos = 0, neg = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] == 1) ++pos; else ++neg;
  }
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (labels[i] != 1) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j] != 0) continue;
      if (scores[i] > scores[j]) twice_wins += 2;
      else if (scores[i] == scores[j]) twice_wins += 1;
    }
  }
  return static_cast<double>(twice_wins) / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
}

// Pearson r from raw one-pass sums in extended precision.
inline double pearson_direct(std::span<const double> x, std::span<const double> y) {
  long double n = static_cast<long double>(x.size()), sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += static_cast<long double>(x[i]) * x[i];
    syy += static_cast<long double>(y[i]) * y[i];
    sxy += static_cast<long double>(x[i]) * y[i];
  }
  const long double num = n * sxy - sx * sy;
  const long double den = std::sqrt(n * sxx - sx * sx) * std::sqrt(n * syy - sy * sy);
  return static_cast<double>(num / den);
}

// Two-tailed Student-t p-value by composite Simpson integration of the
// density over [|t|, ∞) after the substitution t = |t| + u/(1-u).
inline double t_pvalue_by_quadrature(double t, double df) {
  const double logc = std::lgamma((df + 1) / 2) - std::lgamma(df / 2) - 0.5 * std::log(df * M_PI);
  auto density = [&](double s) { return std::exp(logc - (df + 1) / 2 * std::log1p(s * s / df)); };
  const double a = std::fabs(t);
  auto g = [&](double u) {
    // At u = 1 the integrand tends to c·df^((df+1)/2)·s^(1-df), nonzero only for df = 1.
    if (u >= 1) return df == 1.0 ? std::exp(logc) : 0.0;
    const double s = a + u / (1 - u);
    return density(s) / ((1 - u) * (1 - u));
  };
  const int m = 200000;
  const double h = 1.0 / m;
  double sum = g(0) + g(1);
  for (int k = 1; k < m; ++k) sum += (k % 2 ? 4 : 2) * g(k * h);
  return 2.0 * sum * h / 3.0;
}

// Two-sided permutation p-value of |r| for a binary label vector.
inline double permutation_pvalue(std::span<const double> x, std::vector<int> labels, std::size_t shuffles,
                                 std::uint64_t seed) {
  std::vector<double> y(labels.begin(), labels.end());
  const double observed = std::fabs(pearson_direct(x, y));
  hatepol::Rng rng(seed);
  std::size_t extreme = 0;
  for (std::size_t s = 0; s < shuffles; ++s) {
    rng.shuffle(std::span<double>(y));
    if (std::fabs(pearson_direct(x, y)) >= observed - 1e-12) ++extreme;
  }
  return static_cast<double>(extreme) / static_cast<double>(shuffles);
}

// Weighted F1 of a constant predictor whose class makes up fraction p of
// the truth.
inline double constant_predictor_f1(double p) { return p * 2 * p / (1 + p); }

struct Dataset {
  hatepol::FeatureMatrix matrix;
  std::vector<int> labels;
};

// Two Gaussian clusters in the plane separated by a clear margin around the
// line x + y = 0, optionally with a share of labels flipped.
inline Dataset separable_2d(std::size_t n, std::uint64_t seed, double flip = 0.0) {
  hatepol::Rng rng(seed);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("r" + std::to_string(i));
  Dataset d{hatepol::FeatureMatrix({"x", "y"}, {}), {}};
  for (std::size_t i = 0; i < n; ++i) {
    const int label = i % 2 == 0 ? 1 : 0;
    const double cx = label ? 2.0 : -2.0;
    const double row[2] = {cx + 0.6 * rng.normal(), cx + 0.6 * rng.normal()};
    d.matrix.append_row(ids[i], row);
    d.labels.push_back(rng.uniform() < flip ? 1 - label : label);
  }
  return d;
}

inline hatepol::Corpus random_corpus(std::size_t n, std::uint64_t seed, std::size_t n_tags = 8) {
  hatepol::Rng rng(seed);
  hatepol::Corpus c;
  c.name = "random" + std::to_string(seed);
  static const char* words[] = {"ciao", "governo", "legge", "ladri", "bene", "odio", "oggi", "tasse"};
  for (std::size_t i = 0; i < n; ++i) {
    hatepol::Tweet t;
    t.id = "t" + std::to_string(i);
    const auto r = rng.below(5);
    t.label = r == 0 ? hatepol::Label::unlabeled : (r <= 2 ? hatepol::Label::hate : hatepol::Label::normal);
    std::string text = words[rng.below(8)];
    const auto k = rng.below(4);
    for (std::uint64_t j = 0; j < k; ++j) {
      const std::string tag = "tag" + std::to_string(rng.below(n_tags));
      text += " #" + tag + " " + words[rng.below(8)];
      if (std::find(t.hashtags.begin(), t.hashtags.end(), tag) == t.hashtags.end()) t.hashtags.push_back(tag);
    }
    t.text = text;
    c.tweets.push_back(std::move(t));
  }
  return c;
}

// Minimal recursive-descent checker for the DOT language grammar
// (graph/digraph, node/edge/attr statements, subgraphs, attribute lists).
class DotChecker {
 public:
  explicit DotChecker(std::string src) : s_(std::move(src)) {}

  bool valid() {
    try {
      graph();
      ws();
      return i_ == s_.size();
    } catch (const std::exception& e) {
      error = e.what();
      return false;
    }
  }

  std::string error;
  std::size_t node_statements = 0;
  std::size_t edge_statements = 0;

 private:
  void fail(const std::string& what) { throw std::runtime_error(what + " at offset " + std::to_string(i_)); }

  void ws() {
    for (;;) {
      while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (s_.compare(i_, 2, "//") == 0 || (i_ < s_.size() && s_[i_] == '#')) {
        while (i_ < s_.size() && s_[i_] != '\n') ++i_;
      } else if (s_.compare(i_, 2, "/*") == 0) {
        const auto end = s_.find("*/", i_ + 2);
        if (end == std::string::npos) fail("unterminated comment");
        i_ = end + 2;
      } else {
        return;
      }
    }
  }

  bool peek(char c) {
    ws();
    return i_ < s_.size() && s_[i_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  bool keyword(const std::string& kw) {
    ws();
    if (s_.size() - i_ < kw.size()) return false;
    for (std::size_t k = 0; k < kw.size(); ++k) {
      if (std::tolower(static_cast<unsigned char>(s_[i_ + k])) != kw[k]) return false;
    }
    const std::size_t after = i_ + kw.size();
    if (after < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[after])) || s_[after] == '_')) return false;
    i_ = after;
    return true;
  }

  bool id(std::string* out = nullptr) {
    ws();
    if (i_ >= s_.size()) return false;
    const std::size_t start = i_;
    const char c = s_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || static_cast<unsigned char>(c) >= 0x80) {
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' ||
                                static_cast<unsigned char>(s_[i_]) >= 0x80))
        ++i_;
    } else if (c == '-' || c == '.' || std::isdigit(static_cast<unsigned char>(c))) {
      if (c == '-') ++i_;
      bool digits = false, dot = false;
      while (i_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[i_])) || (s_[i_] == '.' && !dot))) {
        if (s_[i_] == '.') dot = true; else digits = true;
        ++i_;
      }
      if (!digits) {
        i_ = start;
        return false;
      }
    } else if (c == '"') {
      ++i_;
      while (i_ < s_.size() && s_[i_] != '"') {
        if (s_[i_] == '\\') ++i_;
        ++i_;
      }
      if (i_ >= s_.size()) fail("unterminated string");
      ++i_;
    } else {
      return false;
    }
    if (out) *out = s_.substr(start, i_ - start);
    return true;
  }

  void graph() {
    keyword("strict");
    if (keyword("graph")) {
      directed_ = false;
    } else if (keyword("digraph")) {
      directed_ = true;
    } else {
      fail("expected graph or digraph");
    }
    id();
    expect('{');
    stmt_list();
    expect('}');
  }

  void stmt_list() {
    while (!peek('}')) {
      stmt();
      if (peek(';')) ++i_;
    }
  }

  void attr_list() {
    while (peek('[')) {
      ++i_;
      while (!peek(']')) {
        if (!id()) fail("expected attribute name");
        if (peek('=')) {
          ++i_;
          if (!id()) fail("expected attribute value");
        }
        if (peek(',') || peek(';')) ++i_;
      }
      expect(']');
    }
  }

  void subgraph() {
    keyword("subgraph");
    id();
    expect('{');
    stmt_list();
    expect('}');
  }

  void endpoint() {
    ws();
    if (peek('{') || [&] {
          const auto save = i_;
          const bool kw = keyword("subgraph");
          i_ = save;
          return kw;
        }()) {
      subgraph();
      return;
    }
    if (!id()) fail("expected node id");
    if (peek(':')) {
      ++i_;
      if (!id()) fail("expected port");
      if (peek(':')) {
        ++i_;
        if (!id()) fail("expected compass point");
      }
    }
  }

  bool edge_op() {
    ws();
    const char* op = directed_ ? "->" : "--";
    if (s_.compare(i_, 2, op) == 0) {
      i_ += 2;
      return true;
    }
    if (s_.compare(i_, 2, directed_ ? "--" : "->") == 0) fail("wrong edge operator for graph kind");
    return false;
  }

  void stmt() {
    const auto save = i_;
    if (keyword("graph") || keyword("node") || keyword("edge")) {
      if (!peek('[')) fail("expected attribute list");
      attr_list();
      return;
    }
    i_ = save;
    endpoint();
    if (peek('=')) {
      ++i_;
      if (!id()) fail("expected value");
      return;
    }
    if (edge_op()) {
      do {
        endpoint();
      } while (edge_op());
      ++edge_statements;
    } else {
      ++node_statements;
    }
    attr_list();
  }

  std::string s_;
  std::size_t i_ = 0;
  bool directed_ = false;
};

}  // namespace testing
