#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "datasets.hpp"
#include "doctest.h"

#include "curate/analytics/csv.hpp"
#include "curate/analytics/mann_whitney.hpp"
#include "curate/analytics/report_json.hpp"
#include "curate/analytics/shapiro_wilk.hpp"
#include "curate/analytics/sus.hpp"

using namespace curate::analytics;
namespace t = curate::testing;

namespace {

SusResponse resp(std::array<int, 10> items) { return {"r", items}; }

SusResponse random_response(std::mt19937& rng) {
  SusResponse r{"x", {}};
  for (int& v : r.items) v = 1 + static_cast<int>(rng() % 5);
  return r;
}

// Exact two-tailed p by listing every n1-subset of the pooled ranks.
struct Enumerated {
  double p = 0;
  double variance_u = 0;
};

Enumerated enumerate_labelings(const std::vector<double>& g1, const std::vector<double>& g2) {
  std::vector<double> all = g1;
  all.insert(all.end(), g2.begin(), g2.end());
  const int N = static_cast<int>(all.size()), n1 = static_cast<int>(g1.size());
  // midranks by counting, independent of the library's sort
  std::vector<double> rank(N);
  for (int i = 0; i < N; ++i) {
    int less = 0, equal = 0;
    for (double v : all) less += v < all[i], equal += v == all[i];
    rank[i] = less + (equal + 1) / 2.0;
  }
  const double obs = std::accumulate(rank.begin(), rank.begin() + n1, 0.0);
  const double mean = n1 * (N + 1) / 2.0;
  std::vector<bool> pick(N, false);
  std::fill(pick.begin(), pick.begin() + n1, true);
  long hit = 0, total = 0;
  double sq = 0;
  do {
    double s = 0;
    for (int i = 0; i < N; ++i)
      if (pick[i]) s += rank[i];
    ++total;
    if (std::abs(s - mean) >= std::abs(obs - mean) - 1e-9) ++hit;
    sq += (s - mean) * (s - mean);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return {double(hit) / double(total), sq / double(total)};
}

std::vector<double> random_group(std::mt19937& rng, int n, int levels) {
  std::vector<double> g(n);
  for (double& v : g) v = static_cast<double>(rng() % levels);
  return g;
}

}  // namespace

// ---- SUS

TEST_CASE("sus_score examples") {
  CHECK(sus_score(resp({5, 1, 5, 1, 5, 1, 5, 1, 5, 1})) == 100);
  CHECK(sus_score(resp({3, 3, 3, 3, 3, 3, 3, 3, 3, 3})) == 50);
  CHECK(sus_score(resp({4, 2, 4, 2, 4, 2, 4, 2, 4, 2})) == 75);
  CHECK(sus_score(resp({1, 5, 1, 5, 1, 5, 1, 5, 1, 5})) == 0);
  CHECK_THROWS_AS(sus_score(resp({0, 3, 3, 3, 3, 3, 3, 3, 3, 3})), AnalyticsError);
  CHECK_THROWS_WITH(sus_score(resp({3, 3, 3, 3, 3, 3, 3, 3, 3, 6})), doctest::Contains("item 10"));
}

TEST_CASE("sus_score is affine in every item") {
  std::mt19937 rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    SusResponse r = random_response(rng);
    const double base = sus_score(r);
    CHECK(base >= 0);
    CHECK(base <= 100);
    const int i = static_cast<int>(rng() % 10);
    if (r.items[i] == 5) continue;
    SusResponse up = r;
    ++up.items[i];
    CHECK(sus_score(up) - base == (i % 2 == 0 ? 2.5 : -2.5));
  }
}

TEST_CASE("single all-threes respondent") {
  const std::vector<SusResponse> one{resp({3, 3, 3, 3, 3, 3, 3, 3, 3, 3})};
  const SusSummary s = sus_summary(one);
  CHECK(s.mean_sus == 50);
  CHECK(s.learnability == 50);
  CHECK(s.usability == 50);
  CHECK(s.adjective == "Poor");
  CHECK_THROWS_AS(sus_summary(std::vector<SusResponse>{}), AnalyticsError);
}

TEST_CASE("subscale identity holds exactly for random panels") {
  std::mt19937 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<SusResponse> rs(1 + rng() % 60);
    for (auto& r : rs) r = random_response(rng);
    const SusSummary s = sus_summary(rs);
    CHECK(std::abs(s.mean_sus - (0.2 * s.learnability + 0.8 * s.usability)) <= 1e-9);
    CHECK(s.learnability >= 0);
    CHECK(s.usability <= 100);
  }
}

TEST_CASE("percentile curve passes the published anchors") {
  CHECK(sus_percentile(77.3) == doctest::Approx(81));
  CHECK(sus_percentile(59.5) == doctest::Approx(30));
  CHECK(sus_percentile(81.5) == doctest::Approx(92));
  CHECK(grade_for_percentile(sus_percentile(77.3)) == "B+");
  CHECK(grade_for_percentile(sus_percentile(59.5)) == "C-");
  CHECK(grade_for_percentile(sus_percentile(81.5)) == "A");
  CHECK(adjective_for_score(77.3) == "Good");
  CHECK(sus_percentile(68) == doctest::Approx(50));
  CHECK(sus_percentile(-3) == 0);
  CHECK(sus_percentile(140) == 100);
}

TEST_CASE("percentile curve is monotone and grades follow it") {
  const std::vector<std::string> order{"F", "D", "C-", "C", "C+", "B-", "B", "B+", "A"};
  double prev = -1;
  int prev_grade = 0;
  for (int i = 0; i <= 1000; ++i) {
    const double s = i / 10.0, p = sus_percentile(s);
    CHECK(p >= prev);
    const auto g = std::find(order.begin(), order.end(), grade_for_percentile(p)) - order.begin();
    CHECK(g >= prev_grade);
    prev = p;
    prev_grade = static_cast<int>(g);
  }
}

TEST_CASE("adjective bands") {
  CHECK(adjective_for_score(51.6) == "Poor");
  CHECK(adjective_for_score(51.7) == "OK");
  CHECK(adjective_for_score(72.8) == "OK");
  CHECK(adjective_for_score(72.9) == "Good");
  CHECK(adjective_for_score(85.5) == "Good");
  CHECK(adjective_for_score(85.6) == "Excellent");
}

TEST_CASE("the 40-respondent panel is as close as integers allow") {
  const auto rs = t::sus_dataset_40();
  REQUIRE(rs.size() == 40);
  const SusSummary s = sus_summary(rs);
  const t::SusTotals best = t::sus_minimax_totals(40);
  CHECK(s.learnability == doctest::Approx(12.5 * best.learnability_raw / 40));
  CHECK(s.usability == doctest::Approx(3.125 * best.usability_raw / 40));
  // Learnability moves in steps of 12.5 / 40 = 0.3125, so no panel of 40
  // lands within 0.05 of 59.5.
  for (int raw = 0; raw <= 320; ++raw) CHECK(std::abs(12.5 * raw / 40 - 59.5) > 0.05);
  CHECK(best.worst_deviation == doctest::Approx(0.140625));
  CHECK(s.grade == "B+");
  CHECK(s.adjective == "Good");
  CHECK(std::abs(s.percentile - 81) <= 1);
}

TEST_CASE("SUS CSV round trip and errors") {
  const auto rs = t::sus_dataset_40();
  const auto back = parse_sus_csv(to_sus_csv(rs));
  REQUIRE(back.size() == rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    CHECK(back[i].respondent_id == rs[i].respondent_id);
    CHECK(back[i].items == rs[i].items);
  }
  CHECK(parse_sus_csv("a,1,2,3,4,5,1,2,3,4,5\r\n\n\"b, c\",3,3,3,3,3,3,3,3,3,3\n").size() == 2);
  CHECK_THROWS_WITH_AS(parse_sus_csv("id,q1,q2,q3,q4,q5,q6,q7,q8,q9,q10\na,1,2,3\n"), doctest::Contains("line 2"),
                       AnalyticsError);
  CHECK_THROWS_WITH_AS(parse_sus_csv("a,1,2,3,4,5,1,2,3,4,5\nb,1,2,3,4,5,1,2,3,4,x\n"), doctest::Contains("line 2"),
                       AnalyticsError);
  CHECK_THROWS_WITH_AS(parse_sus_csv("a,1,2,3,4,5,1,2,3,4,9\n"), doctest::Contains("item 10"), AnalyticsError);
}

TEST_CASE("committed datasets match their construction") {
  const std::string dir = CURATE_DATA_DIR "/analytics/";
  CHECK(read_text_file(dir + "sus_40.csv") == to_sus_csv(t::sus_dataset_40()));
  CHECK(read_text_file(dir + "test_scores_20_20.csv") == to_comparison_csv(t::mwu_dataset_20_20()));
}

// ---- Shapiro-Wilk

TEST_CASE("Shapiro-Wilk on three evenly spaced points") {
  const std::vector<double> x{1, 2, 3};
  const SwReport r = shapiro_wilk(x);
  CHECK(r.w == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.df == 3);
  CHECK(r.p == doctest::Approx(1.0).epsilon(1e-6));
  const auto a = shapiro_wilk_coefficients(3);
  CHECK(a[2] == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("Shapiro-Wilk errors") {
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{1, 2}), AnalyticsError);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>(51, 1.0)), AnalyticsError);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>(10, 4.0)), DegenerateError);
  CHECK_THROWS_AS(shapiro_wilk(std::vector<double>{1, 2, NAN}), AnalyticsError);
}

TEST_CASE("Shapiro-Wilk coefficients are antisymmetric with unit norm") {
  for (int n = kSwMinN; n <= kSwMaxN; ++n) {
    const auto a = shapiro_wilk_coefficients(n);
    double ss = 0;
    for (int i = 0; i < n; ++i) {
      CHECK(a[i] == doctest::Approx(-a[n - 1 - i]));
      ss += a[i] * a[i];
    }
    CHECK(ss == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(a[n - 1] > 0);
  }
}

// Reference values from scipy.stats.shapiro 1.15.3 on the same samples.
TEST_CASE("Shapiro-Wilk agrees with an independent implementation") {
  struct Case {
    std::uint32_t seed;
    int n;
    double mean, sd, w, p;
  };
  const Case cases[] = {
      {20240531, 20, 0, 1, 0.951134453830453, 0.3846392940046201},
      {3, 3, 10, 2, 0.7839865382406536, 0.0768167136281993},
      {4, 4, 10, 2, 0.995868535835089, 0.9852063021928086},
      {5, 5, 10, 2, 0.9914919109207602, 0.9846492199601183},
      {6, 6, 10, 2, 0.9043365887612187, 0.40019724954958985},
      {7, 7, 10, 2, 0.9549914412485407, 0.7747899532252444},
      {11, 11, 10, 2, 0.8775578805066202, 0.09686362697583546},
      {12, 12, 10, 2, 0.971729296683952, 0.928048212724051},
      {30, 30, 10, 2, 0.9825326102654542, 0.8881413413454098},
      {50, 50, 10, 2, 0.9585481910721646, 0.07727603988506897},
  };
  for (const auto& c : cases) {
    CAPTURE(c.n);
    const SwReport r = shapiro_wilk(t::seeded_normal(c.seed, c.n, c.mean, c.sd));
    CHECK(std::abs(r.w - c.w) < 1e-8);
    CHECK(std::abs(r.p - c.p) < 1e-7);
  }
  const SwReport clumped = shapiro_wilk(t::clumped_scores());
  CHECK(std::abs(clumped.w - 0.5435627937132307) < 1e-8);
  CHECK(std::abs(clumped.p - 8.080369646994802e-07) < 1e-9);
}

TEST_CASE("Shapiro-Wilk regimes") {
  const SwReport normal = shapiro_wilk(t::seeded_normal(20240531, 20));
  CHECK(normal.p > 0.05);
  const SwReport clumped = shapiro_wilk(t::clumped_scores());
  CHECK(clumped.w < 0.7);
  CHECK(clumped.p < 0.001);
  CHECK(clumped.df == 20);
}

TEST_CASE("Shapiro-Wilk is invariant under positive affine maps and order") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> scale(0.01, 100), shift(-1000, 1000);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = kSwMinN + static_cast<int>(rng() % (kSwMaxN - kSwMinN + 1));
    std::vector<double> x = t::seeded_normal(rng(), n);
    if (trial % 3 == 0)
      for (double& v : x) v = std::round(v * 2);  // ties
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; })) continue;
    const SwReport base = shapiro_wilk(x);
    const double a = scale(rng), b = shift(rng);
    std::vector<double> y = x;
    for (double& v : y) v = a * v + b;
    std::shuffle(y.begin(), y.end(), rng);
    const SwReport moved = shapiro_wilk(y);
    CHECK(std::abs(moved.w - base.w) < 1e-9);
    CHECK(std::abs(moved.p - base.p) < 1e-9);
    CHECK(base.w > 0);
    CHECK(base.w <= 1);
    CHECK(base.p >= 0);
    CHECK(base.p <= 1);
  }
}

// ---- Mann-Whitney

TEST_CASE("Mann-Whitney hand-ranked example") {
  const std::vector<double> a{1, 3}, b{2, 4};
  const MwuReport r = mann_whitney_u(a, b);
  CHECK(r.rank_sum_1 == 4);
  CHECK(r.rank_sum_2 == 6);
  CHECK(r.U == 1);
  CHECK(r.W == 4);
}

TEST_CASE("complete separation 3 vs 3") {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  const MwuReport r = mann_whitney_u(a, b);
  CHECK(r.U == 0);
  REQUIRE(r.p_exact);
  CHECK(*r.p_exact == 0.1);
  CHECK(r.exact_method == ExactMethod::FullEnumeration);
  CHECK(enumerate_labelings({1, 2, 3}, {4, 5, 6}).p == 0.1);
}

TEST_CASE("Mann-Whitney errors") {
  const std::vector<double> none, one{1};
  CHECK_THROWS_AS(mann_whitney_u(none, one), AnalyticsError);
  CHECK_THROWS_AS(mann_whitney_u(one, none), AnalyticsError);
}

TEST_CASE("midranks share tied positions") {
  const std::vector<double> v{10, 20, 20, 5, 20};
  CHECK(midranks(v) == std::vector<double>{2, 4, 4, 1, 4});
  CHECK(tie_sizes(v) == std::vector<int>{1, 1, 3});
}

TEST_CASE("the 20/20 panel reproduces the published rank statistics") {
  const GroupComparison c = t::mwu_dataset_20_20();
  const MwuReport r = mann_whitney_u(c.group1, c.group2);
  const auto d = to_json(r)["display"];
  CHECK(d["U"] == "72.500");
  CHECK(d["W"] == "282.500");
  CHECK(d["mean_rank_1"] == "26.88");
  CHECK(d["mean_rank_2"] == "14.13");
  CHECK(r.rank_sum_1 + r.rank_sum_2 == 820);
  CHECK(r.exact_method == ExactMethod::MonteCarlo);

  // Tie-corrected sigma from tie counts kept in a map.
  std::map<double, int> counts;
  for (double v : c.group1) ++counts[v];
  for (double v : c.group2) ++counts[v];
  double tsum = 0;
  for (const auto& [v, k] : counts) tsum += double(k) * k * k - k;
  const double sigma = std::sqrt(400.0 / 12 * (41 - tsum / (40.0 * 39)));
  CHECK(std::abs(r.Z - (72.5 - 200) / sigma) < 1e-9);
  CHECK(r.p_asymptotic == doctest::Approx(0.0005148383813314734).epsilon(1e-9));  // scipy, no continuity
  CHECK(r.p_asymptotic_cc == doctest::Approx(0.0005415899172250025).epsilon(1e-9));
}

TEST_CASE("tie-corrected sigma equals the permutation standard deviation") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const int n1 = 1 + rng() % 6, n2 = 1 + rng() % 6;
    const auto g1 = random_group(rng, n1, 4), g2 = random_group(rng, n2, 4);
    std::vector<double> all = g1;
    all.insert(all.end(), g2.begin(), g2.end());
    const MwuReport r = mann_whitney_u(g1, g2);
    CHECK(r.sigma == doctest::Approx(std::sqrt(enumerate_labelings(g1, g2).variance_u)).epsilon(1e-12));
  }
}

TEST_CASE("exact p matches enumeration on small samples") {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 150; ++trial) {
    const int n1 = 1 + rng() % 8, n2 = 1 + rng() % 8;
    const bool tie_free = trial % 2 == 0;
    std::vector<double> g1, g2;
    if (tie_free) {
      std::vector<double> pool(n1 + n2);
      std::iota(pool.begin(), pool.end(), 1.0);
      std::shuffle(pool.begin(), pool.end(), rng);
      g1.assign(pool.begin(), pool.begin() + n1);
      g2.assign(pool.begin() + n1, pool.end());
    } else {
      g1 = random_group(rng, n1, 5);
      g2 = random_group(rng, n2, 5);
    }
    const MwuReport r = mann_whitney_u(g1, g2);
    REQUIRE(r.p_exact);
    CHECK(r.exact_method == ExactMethod::FullEnumeration);
    CHECK(*r.p_exact == doctest::Approx(enumerate_labelings(g1, g2).p).epsilon(1e-12));
  }
}

TEST_CASE("exact and continuity-corrected p agree on tie-free groups up to 8") {
  std::mt19937 rng(34);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 4 + rng() % 5;
    std::vector<double> pool(2 * n);
    std::iota(pool.begin(), pool.end(), 1.0);
    std::shuffle(pool.begin(), pool.end(), rng);
    const std::vector<double> g1(pool.begin(), pool.begin() + n), g2(pool.begin() + n, pool.end());
    const MwuReport r = mann_whitney_u(g1, g2);
    CHECK(std::abs(*r.p_exact - r.p_asymptotic_cc) < 0.05);
  }
}

TEST_CASE("Mann-Whitney symmetry, conservation and shift invariance") {
  std::mt19937 rng(55);
  for (int trial = 0; trial < 200; ++trial) {
    const int n1 = 1 + rng() % 25, n2 = 1 + rng() % 25;
    const auto g1 = random_group(rng, n1, 3 + trial % 30), g2 = random_group(rng, n2, 3 + trial % 30);
    const MwuOptions opt{.draws = 2000};
    const MwuReport r = mann_whitney_u(g1, g2, opt);
    const double N = n1 + n2;
    CHECK(r.rank_sum_1 + r.rank_sum_2 == N * (N + 1) / 2);
    CHECK(r.U == std::min(r.u1, r.u2));
    CHECK(r.u1 + r.u2 == double(n1) * n2);

    const MwuReport s = mann_whitney_u(g2, g1, opt);
    CHECK(s.rank_sum_1 == r.rank_sum_2);
    CHECK(s.u1 == r.u2);
    CHECK(s.U == r.U);
    CHECK(s.W == r.W);
    CHECK(std::abs(s.Z) == doctest::Approx(std::abs(r.Z)));
    CHECK(s.p_asymptotic == doctest::Approx(r.p_asymptotic));
    CHECK(s.p_exact == r.p_exact);

    const double c = static_cast<double>(rng() % 1000) - 500;
    auto h1 = g1, h2 = g2;
    for (double& v : h1) v += c;
    for (double& v : h2) v += c;
    CHECK(to_json(mann_whitney_u(h1, h2, opt)) == to_json(r));
  }
}

TEST_CASE("Monte Carlo p is seeded and lands near the exact value") {
  const std::vector<double> g1{1, 4, 5, 9, 12, 13, 15}, g2{2, 3, 6, 7, 8, 10, 11};
  const MwuReport exact = mann_whitney_u(g1, g2);
  MwuOptions mc{.exact = ExactMode::MonteCarlo, .seed = 42, .draws = 20000};
  const MwuReport a = mann_whitney_u(g1, g2, mc), b = mann_whitney_u(g1, g2, mc);
  CHECK(a.exact_method == ExactMethod::MonteCarlo);
  CHECK(a.p_exact == b.p_exact);
  CHECK(std::abs(*a.p_exact - *exact.p_exact) < 0.02);
  CHECK(a.mc_seed == 42);
  mc.exact = ExactMode::Off;
  CHECK_FALSE(mann_whitney_u(g1, g2, mc).p_exact);
}

TEST_CASE("all values tied") {
  const std::vector<double> g(5, 7.0);
  const MwuReport r = mann_whitney_u(g, g);
  CHECK(r.sigma == 0);
  CHECK(r.Z == 0);
  CHECK(r.p_asymptotic == 1);
  CHECK(*r.p_exact == 1);
}

// ---- CSV and JSON

TEST_CASE("comparison CSV") {
  const GroupComparison c = parse_comparison_csv("group,score\nA,3\nB,4.5\nA,1\n");
  CHECK(c.label1 == "A");
  CHECK(c.group1 == std::vector<double>{3, 1});
  CHECK(c.group2 == std::vector<double>{4.5});
  const auto again = parse_comparison_csv(to_comparison_csv(t::mwu_dataset_20_20()));
  CHECK(again.group1 == t::mwu_dataset_20_20().group1);
  CHECK_THROWS_WITH_AS(parse_comparison_csv("A,1\nB,2\nC,3\n"), doctest::Contains("line 3"), AnalyticsError);
  CHECK_THROWS_AS(parse_comparison_csv("A,1\nA,2\n"), AnalyticsError);
  CHECK_THROWS_WITH_AS(parse_comparison_csv("A,1\nB,two\n"), doctest::Contains("line 2"), AnalyticsError);
}

TEST_CASE("report JSON") {
  const auto sus = to_json(sus_summary(t::sus_dataset_40()));
  CHECK(sus["n"] == 40);
  CHECK(sus["grade"] == "B+");
  CHECK(sus["display"]["learnability"] == "59.4");

  const auto cmp = compare_report(t::mwu_dataset_20_20());
  CHECK(cmp["groups"].size() == 2);
  CHECK(cmp["groups"][0]["label"] == "GVMCS");
  CHECK(cmp["groups"][0]["shapiro_wilk"]["df"] == 20);
  CHECK(cmp["mann_whitney"]["exact_method"] == "monte-carlo");
  CHECK(cmp["mann_whitney"]["monte_carlo"]["seed"] == 42);

  GroupComparison tiny{"a", "b", {1, 2}, {3, 4, 5}};
  const auto small = compare_report(tiny);
  CHECK(small["groups"][0]["shapiro_wilk"].contains("error"));
  CHECK(small["mann_whitney"]["p_exact"] == doctest::Approx(0.2));

  CHECK(fixed(-0.0001, 2) == "0.00");
  CHECK(fixed(72.5, 3) == "72.500");
  CHECK(fixed(14.125, 2) == "14.13");
  CHECK(fixed(-2.5, 0) == "-3");

  const auto r = sus_response_from_json({{"id", "p"}, {"items", {3, 3, 3, 3, 3, 3, 3, 3, 3, 3}}});
  CHECK(sus_score(r) == 50);
  CHECK_THROWS_AS(sus_response_from_json({{"items", {3, 3}}}), AnalyticsError);
  CHECK_THROWS_AS(sus_response_from_json({{"items", {3, 3, 3, 3, 3, 3, 3, 3, 3, 7}}}), AnalyticsError);
}
