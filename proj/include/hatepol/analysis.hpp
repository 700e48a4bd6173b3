#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hatepol/corpus.hpp"
#include "hatepol/features.hpp"

namespace hatepol {

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

// Two-tailed p-value of Student's t with `df` degrees of freedom.
double student_t_two_tailed(double t, double df);

struct Correlation {
  double r = 0.0;
  double p_value = 1.0;
};

// Pearson r (point-biserial when y is 0/1) with the exact t-test p-value.
// Throws UndefinedCorrelationError when either side is constant and
// ArgumentError for fewer than 3 points.
Correlation pearson(std::span<const double> x, std::span<const double> y);
Correlation pearson(std::span<const double> x, std::span<const int> labels);

enum class Stars { none, one, two };

// ** below 0.01, * below 0.05.
Stars stars_for(double p_value);
std::string_view to_string(Stars stars);

struct CorrelationEntry {
  std::string feature;
  bool defined = true;  // false for constant columns
  double r = 0.0;
  double p_value = 1.0;
  Stars stars = Stars::none;
};

// Defined entries by r descending (ties by name), then constant columns by name.
// Columns are processed in parallel.
std::vector<CorrelationEntry> correlation_ranking(const FeatureMatrix& matrix, std::span<const int> labels);
std::vector<CorrelationEntry> correlation_ranking_serial(const FeatureMatrix& matrix, std::span<const int> labels);

// CSV "feature,r,p_value,stars"; constant columns carry NA values and
// "undefined" in the stars column.
std::string ranking_to_csv(std::span<const CorrelationEntry> ranking);

struct TokenSalience {
  std::string token;
  double hate_weight = 0.0;
  double normal_weight = 0.0;
};

struct SalienceRanking {
  // All tokens by hate_weight descending.
  std::vector<TokenSalience> hate;
  // All tokens by normal_weight descending.
  std::vector<TokenSalience> normal;
};

// Add-one smoothed log-odds per token (lowercased words and hashtags):
// log((c_hate + 1) / (N_hate + V)) - log((c_normal + 1) / (N_normal + V)).
SalienceRanking token_salience(const Corpus& corpus);

// Top-k hate tokens followed by the top-k normal tokens not already listed.
std::string salience_to_csv(const SalienceRanking& ranking, std::size_t top_k);

}  // namespace hatepol
