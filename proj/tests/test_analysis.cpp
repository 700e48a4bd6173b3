#include <doctest.h>

#include <cmath>

#include "hatepol/analysis.hpp"
#include "hatepol/error.hpp"
#include "support.hpp"

using namespace hatepol;

namespace {

Tweet tw(std::string id, std::string text, Label label) {
  Tweet t;
  t.id = std::move(id);
  t.hashtags = extract_hashtags(text);
  t.text = std::move(text);
  t.label = label;
  return t;
}

}  // namespace

TEST_CASE("pearson examples") {
  const std::vector<double> x{1, 2, 3, 4};
  const std::vector<int> y{0, 0, 1, 1};
  CHECK(pearson(x, y).r == doctest::Approx(2 / std::sqrt(5.0)).epsilon(1e-15));
  const std::vector<double> same{0, 0, 1, 1};
  const auto self = pearson(same, y);
  CHECK(self.r == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(self.p_value == 0.0);
  CHECK_THROWS_AS(pearson(std::vector<double>{2, 2, 2, 2}, y), UndefinedCorrelationError);
  CHECK_THROWS_AS(pearson(x, std::vector<int>{1, 1, 1, 1}), UndefinedCorrelationError);
  CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<int>{0, 1}), ArgumentError);
}

TEST_CASE("pearson matches the direct formula") {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto n = 3 + rng.below(198);
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.normal() * 3 + 1;
      y[i] = 0.5 * x[i] + rng.normal();
    }
    CHECK(std::fabs(pearson(x, y).r - testing::pearson_direct(x, y)) <= 1e-10);
  }
}

TEST_CASE("pearson symmetry and affine behaviour") {
  Rng rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = 3 + rng.below(50);
    std::vector<double> x(n), y(n), xa(n), xn(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = rng.normal();
      y[i] = rng.normal() + x[i];
      xa[i] = 3.5 * x[i] - 2;
      xn[i] = -0.25 * x[i] + 9;
    }
    const double r = pearson(x, y).r;
    CHECK(pearson(y, x).r == doctest::Approx(r).epsilon(1e-12));
    CHECK(pearson(xa, y).r == doctest::Approx(r).epsilon(1e-12));
    CHECK(pearson(xn, y).r == doctest::Approx(-r).epsilon(1e-12));
  }
}

TEST_CASE("t-test p-value matches quadrature") {
  for (double df : {1.0, 2.0, 5.0, 17.0, 60.0, 1262.0}) {
    for (double t : {0.0, 0.1, 0.7, 1.5, 2.2, 3.9, 8.0}) {
      const double ref = testing::t_pvalue_by_quadrature(t, df);
      CHECK_MESSAGE(std::fabs(student_t_two_tailed(t, df) - ref) <= 1e-8 * std::max(1.0, ref), "t=", t, " df=", df);
    }
  }
  // |r| = 0.06 at n = 1264 sits just under the 0.05 boundary.
  const double r = 0.06, df = 1262;
  const double t = r * std::sqrt(df / (1 - r * r));
  CHECK(std::fabs(student_t_two_tailed(t, df) - 0.0328) < 0.0015);
}

TEST_CASE("p-value decreases with |r| for fixed n") {
  double previous = 1.0 + 1e-12;
  for (double r = 0.0; r < 0.99; r += 0.03) {
    const double df = 30;
    const double p = student_t_two_tailed(r * std::sqrt(df / (1 - r * r)), df);
    CHECK(p <= previous);
    previous = p;
  }
}

TEST_CASE("p-values agree with a permutation test") {
  Rng rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 20 + 5 * static_cast<std::size_t>(trial);
    std::vector<double> x(n);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = i % 2;
      x[i] = rng.normal() + 0.35 * y[i] * (trial % 3);
    }
    const double p = pearson(x, y).p_value;
    const double perm = testing::permutation_pvalue(x, y, 100000, 1000 + trial);
    CHECK_MESSAGE(std::fabs(p - perm) <= 0.01, "n=", n, " p=", p, " perm=", perm);
  }
}

TEST_CASE("stars thresholds") {
  CHECK(stars_for(0.009) == Stars::two);
  CHECK(stars_for(0.01) == Stars::one);
  CHECK(stars_for(0.049) == Stars::one);
  CHECK(stars_for(0.05) == Stars::none);
  CHECK(to_string(Stars::two) == "**");
}

TEST_CASE("correlation ranking order, constants and column permutation") {
  FeatureMatrix m({"b_neg", "a_pos", "flat", "noise"}, {});
  std::vector<int> y;
  Rng rng(4);
  for (int i = 0; i < 40; ++i) {
    const int l = i % 2;
    const double row[4] = {-static_cast<double>(l), static_cast<double>(l), 1.0, rng.normal()};
    m.append_row("r" + std::to_string(i), row);
    y.push_back(l);
  }
  const auto ranking = correlation_ranking(m, y);
  REQUIRE(ranking.size() == 4);
  CHECK(ranking[0].feature == "a_pos");
  CHECK(ranking[0].r == doctest::Approx(1.0));
  CHECK(ranking[2].feature == "b_neg");
  CHECK(ranking[2].r == doctest::Approx(-1.0));
  CHECK(ranking[3].feature == "flat");
  CHECK_FALSE(ranking[3].defined);

  const auto serial = correlation_ranking_serial(m, y);
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    CHECK(serial[i].feature == ranking[i].feature);
    CHECK(serial[i].defined == ranking[i].defined);
    if (ranking[i].defined) CHECK(serial[i].r == ranking[i].r);
  }

  FeatureMatrix perm({"noise", "flat", "a_pos", "b_neg"}, {});
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const double row[4] = {m.at(r, 3), m.at(r, 2), m.at(r, 1), m.at(r, 0)};
    perm.append_row(m.row_ids()[r], row);
  }
  const auto rp = correlation_ranking(perm, y);
  for (std::size_t i = 0; i < ranking.size(); ++i) CHECK(rp[i].feature == ranking[i].feature);

  const auto csv = ranking_to_csv(ranking);
  CHECK(csv.rfind("feature,r,p_value,stars\n", 0) == 0);
  CHECK(csv.find("flat,NA,NA,undefined") != std::string::npos);
  CHECK_THROWS_AS(correlation_ranking(m, std::vector<int>{1, 0}), Error);
}

TEST_CASE("token salience follows the smoothing formula") {
  Corpus c;
  c.tweets = {tw("1", "odio #ladri", Label::hate), tw("2", "odio tutti", Label::hate), tw("3", "ciao tutti", Label::normal),
              tw("4", "ciao amici", Label::normal)};
  const auto s = token_salience(c);
  // Vocabulary {odio, #ladri, tutti, ciao, amici}; N_hate = N_normal = 4.
  const double V = 5, Nh = 4, Nn = 4;
  auto weight = [&](double ch, double cn) { return std::log((ch + 1) / (Nh + V)) - std::log((cn + 1) / (Nn + V)); };
  std::map<std::string, TokenSalience> by;
  for (const auto& t : s.hate) by[t.token] = t;
  REQUIRE(by.size() == 5);
  CHECK(by.at("odio").hate_weight == doctest::Approx(weight(2, 0)).epsilon(1e-14));
  CHECK(by.at("#ladri").hate_weight == doctest::Approx(weight(1, 0)).epsilon(1e-14));
  CHECK(by.at("tutti").hate_weight == 0.0);
  CHECK(by.at("ciao").hate_weight == doctest::Approx(weight(0, 2)).epsilon(1e-14));
  CHECK(by.at("odio").hate_weight > 0);
  CHECK(s.hate.front().token == "odio");
  CHECK(s.normal.front().token == "ciao");
  for (const auto& t : s.hate) CHECK(t.normal_weight == -t.hate_weight);

  Corpus unl;
  unl.tweets = {tw("1", "x", Label::unlabeled)};
  CHECK_THROWS_AS(token_salience(unl), Error);

  const auto csv = salience_to_csv(s, 2);
  CHECK(csv.rfind("token,hate_weight,normal_weight\n", 0) == 0);
}
