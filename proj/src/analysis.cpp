#include "hatepol/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "hatepol/csv.hpp"
#include "hatepol/error.hpp"
#include "hatepol/tokenize.hpp"

namespace hatepol {

namespace {

// Continued fraction for I_x(a, b) by the modified Lentz method.
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 1000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_two_tailed(double t, double df) {
  if (std::isinf(t)) return 0.0;
  return incomplete_beta(0.5 * df, 0.5, df / (df + t * t));
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ArgumentError("pearson: inputs differ in length");
  const std::size_t n = x.size();
  if (n < 3) throw ArgumentError("pearson needs at least 3 points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (!(sxx > 0) || !(syy > 0)) throw UndefinedCorrelationError("correlation undefined for a constant input");
  Correlation c;
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  const double df = static_cast<double>(n - 2);
  const double one_minus = 1.0 - c.r * c.r;
  c.p_value = one_minus <= 0 ? 0.0 : student_t_two_tailed(c.r * std::sqrt(df / one_minus), df);
  return c;
}

Correlation pearson(std::span<const double> x, std::span<const int> labels) {
  std::vector<double> y(labels.begin(), labels.end());
  return pearson(x, std::span<const double>(y));
}

Stars stars_for(double p) {
  if (p < 0.01) return Stars::two;
  if (p < 0.05) return Stars::one;
  return Stars::none;
}

std::string_view to_string(Stars stars) {
  switch (stars) {
    case Stars::none: return "";
    case Stars::one: return "*";
    case Stars::two: return "**";
  }
  return "";
}

namespace {

CorrelationEntry correlate_column(const FeatureMatrix& m, std::size_t c, std::span<const int> labels) {
  CorrelationEntry e;
  e.feature = m.column_names()[c];
  const auto column = m.column(c);
  try {
    const auto corr = pearson(column, labels);
    e.r = corr.r;
    e.p_value = corr.p_value;
    e.stars = stars_for(corr.p_value);
  } catch (const UndefinedCorrelationError&) {
    e.defined = false;
    e.r = std::numeric_limits<double>::quiet_NaN();
    e.p_value = std::numeric_limits<double>::quiet_NaN();
  }
  return e;
}

void check_alignment(const FeatureMatrix& m, std::span<const int> labels) {
  if (labels.size() != m.rows())
    throw ArgumentError("labels (" + std::to_string(labels.size()) + ") do not align with matrix rows (" +
                        std::to_string(m.rows()) + ")");
  std::size_t hate = 0;
  for (int y : labels) hate += y != 0;
  if (hate == 0 || hate == labels.size()) throw UndefinedCorrelationError("labels are constant");
}

void sort_ranking(std::vector<CorrelationEntry>& entries) {
  std::sort(entries.begin(), entries.end(), [](const CorrelationEntry& a, const CorrelationEntry& b) {
    if (a.defined != b.defined) return a.defined;
    if (a.defined && a.r != b.r) return a.r > b.r;
    return a.feature < b.feature;
  });
}

}  // namespace

std::vector<CorrelationEntry> correlation_ranking(const FeatureMatrix& matrix, std::span<const int> labels) {
  check_alignment(matrix, labels);
  std::vector<CorrelationEntry> entries(matrix.cols());
  const auto n = static_cast<std::ptrdiff_t>(matrix.cols());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < n; ++c) entries[c] = correlate_column(matrix, static_cast<std::size_t>(c), labels);
  sort_ranking(entries);
  return entries;
}

std::vector<CorrelationEntry> correlation_ranking_serial(const FeatureMatrix& matrix, std::span<const int> labels) {
  check_alignment(matrix, labels);
  std::vector<CorrelationEntry> entries;
  entries.reserve(matrix.cols());
  for (std::size_t c = 0; c < matrix.cols(); ++c) entries.push_back(correlate_column(matrix, c, labels));
  sort_ranking(entries);
  return entries;
}

std::string ranking_to_csv(std::span<const CorrelationEntry> ranking) {
  std::string out = "feature,r,p_value,stars\n";
  for (const auto& e : ranking) {
    out += csv::quote(e.feature);
    if (e.defined) {
      out += "," + csv::format_real(e.r) + "," + csv::format_real(e.p_value) + "," + std::string(to_string(e.stars));
    } else {
      out += ",NA,NA,undefined";
    }
    out.push_back('\n');
  }
  return out;
}

SalienceRanking token_salience(const Corpus& corpus) {
  std::map<std::string, std::pair<double, double>> counts;
  double n_hate = 0, n_normal = 0;
  std::size_t labeled = 0;
  for (const auto& t : corpus.tweets) {
    if (t.label == Label::unlabeled) continue;
    ++labeled;
    const bool hate = t.label == Label::hate;
    for (const auto& tok : tokenize(t.text)) {
      if (tok.kind != TokenKind::word && tok.kind != TokenKind::hashtag) continue;
      auto& c = counts[tok.normalized];
      (hate ? c.first : c.second) += 1;
      (hate ? n_hate : n_normal) += 1;
    }
  }
  if (labeled == 0) throw Error("token salience needs labeled tweets");
  const double v = static_cast<double>(counts.size());
  SalienceRanking out;
  for (const auto& [token, c] : counts) {
    const double w = std::log((c.first + 1.0) / (n_hate + v)) - std::log((c.second + 1.0) / (n_normal + v));
    out.hate.push_back({token, w, -w});
  }
  out.normal = out.hate;
  std::stable_sort(out.hate.begin(), out.hate.end(),
                   [](const TokenSalience& a, const TokenSalience& b) { return a.hate_weight > b.hate_weight; });
  std::stable_sort(out.normal.begin(), out.normal.end(),
                   [](const TokenSalience& a, const TokenSalience& b) { return a.normal_weight > b.normal_weight; });
  return out;
}

std::string salience_to_csv(const SalienceRanking& ranking, std::size_t top_k) {
  std::string out = "token,hate_weight,normal_weight\n";
  std::set<std::string> written;
  auto emit = [&](const std::vector<TokenSalience>& list) {
    for (std::size_t i = 0; i < std::min(top_k, list.size()); ++i) {
      const auto& s = list[i];
      if (!written.insert(s.token).second) continue;
      out += csv::quote(s.token) + "," + csv::format_real(s.hate_weight) + "," + csv::format_real(s.normal_weight) +
             "\n";
    }
  };
  emit(ranking.hate);
  emit(ranking.normal);
  return out;
}

}  // namespace hatepol
