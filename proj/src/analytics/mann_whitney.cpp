#include "curate/analytics/mann_whitney.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <boost/math/distributions/normal.hpp>

namespace curate::analytics {

std::string_view to_string(ExactMethod m) {
  switch (m) {
    case ExactMethod::FullEnumeration: return "full-enumeration";
    case ExactMethod::MonteCarlo: return "monte-carlo";
    case ExactMethod::None: return "none";
  }
  return "none";
}

std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && values[order[j]] == values[order[i]]) ++j;
    const double r = (i + 1 + j) / 2.0;  // mean of ranks i+1..j
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = r;
    i = j;
  }
  return ranks;
}

std::vector<int> tie_sizes(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    out.push_back(static_cast<int>(j - i));
    i = j;
  }
  return out;
}

double mwu_sigma(int n1, int n2, std::span<const int> ties) {
  const double N = n1 + n2;
  double t = 0;
  for (int s : ties) t += double(s) * s * s - s;
  const double var = (double(n1) * n2 / 12.0) * ((N + 1) - t / (N * (N - 1)));
  return std::sqrt(std::max(0.0, var));
}

namespace {

double binomial(int n, int k) {
  k = std::min(k, n - k);
  double c = 1;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Doubled ranks are integers even with midranks.
std::vector<long> doubled(std::span<const double> ranks) {
  std::vector<long> out;
  out.reserve(ranks.size());
  for (double r : ranks) out.push_back(std::lround(2 * r));
  return out;
}

// Share of the C(N, n1) labelings whose doubled rank sum s has
// |s - centre| >= dev.
double enumerate_p(const std::vector<long>& r2, int n1, long centre, long dev) {
  const long total = std::accumulate(r2.begin(), r2.end(), 0L);
  // ways[k][s]: subsets of size k with doubled sum s
  std::vector<std::vector<double>> ways(n1 + 1, std::vector<double>(total + 1, 0.0));
  ways[0][0] = 1;
  for (long r : r2)
    for (int k = n1; k >= 1; --k)
      for (long s = total; s >= r; --s) ways[k][s] += ways[k - 1][s - r];
  double hit = 0, all = 0;
  for (long s = 0; s <= total; ++s) {
    all += ways[n1][s];
    if (std::labs(s - centre) >= dev) hit += ways[n1][s];
  }
  return hit / all;
}

double sample_p(std::vector<long> r2, int n1, long centre, long dev, int draws, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t N = r2.size();
  long hit = 0;
  for (int d = 0; d < draws; ++d) {
    long s = 0;
    for (int k = 0; k < n1; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, N - 1);
      std::swap(r2[k], r2[pick(rng)]);
      s += r2[k];
    }
    if (std::labs(s - centre) >= dev) ++hit;
  }
  return (hit + 1.0) / (draws + 1.0);
}

}  // namespace

MwuReport mann_whitney_u(std::span<const double> group1, std::span<const double> group2, const MwuOptions& opt) {
  if (group1.empty() || group2.empty()) throw AnalyticsError("Mann-Whitney needs two non-empty groups");
  std::vector<double> all(group1.begin(), group1.end());
  all.insert(all.end(), group2.begin(), group2.end());
  for (double v : all)
    if (!std::isfinite(v)) throw AnalyticsError("Mann-Whitney value is not finite");

  MwuReport r;
  r.n1 = static_cast<int>(group1.size());
  r.n2 = static_cast<int>(group2.size());
  const std::vector<double> ranks = midranks(all);
  for (int i = 0; i < r.n1 + r.n2; ++i) (i < r.n1 ? r.rank_sum_1 : r.rank_sum_2) += ranks[i];
  r.mean_rank_1 = r.rank_sum_1 / r.n1;
  r.mean_rank_2 = r.rank_sum_2 / r.n2;
  r.u1 = r.rank_sum_1 - r.n1 * (r.n1 + 1) / 2.0;
  r.u2 = r.rank_sum_2 - r.n2 * (r.n2 + 1) / 2.0;
  r.U = std::min(r.u1, r.u2);
  r.W = std::min(r.rank_sum_1, r.rank_sum_2);

  const std::vector<int> ties = tie_sizes(all);
  r.sigma = mwu_sigma(r.n1, r.n2, ties);
  const double mean_u = r.n1 * double(r.n2) / 2;
  if (r.sigma > 0) {
    const boost::math::normal z;
    r.Z = (r.U - mean_u) / r.sigma;
    r.p_asymptotic = std::min(1.0, 2 * boost::math::cdf(z, -std::abs(r.Z)));
    const double zc = std::max(0.0, std::abs(r.U - mean_u) - 0.5) / r.sigma;
    r.p_asymptotic_cc = std::min(1.0, 2 * boost::math::cdf(z, -zc));
  }

  // The null distribution depends only on the multiset of ranks, and the
  // deviation of either group's sum from its mean is the same. Working on
  // the smaller group over sorted ranks makes the report symmetric in the
  // groups, Monte Carlo included.
  const int N = r.n1 + r.n2;
  std::vector<long> r2 = doubled(ranks);
  std::sort(r2.begin(), r2.end());
  const int k = std::min(r.n1, r.n2);
  const long centre = long(k) * (N + 1);
  const long dev = std::labs(std::lround(2 * r.rank_sum_1) - long(r.n1) * (N + 1));
  const bool small = binomial(N, r.n1) <= opt.enumeration_limit;
  if (opt.exact == ExactMode::Auto && small) {
    r.p_exact = enumerate_p(r2, k, centre, dev);
    r.exact_method = ExactMethod::FullEnumeration;
  } else if (opt.exact != ExactMode::Off) {
    if (opt.draws < 1) throw AnalyticsError("Monte Carlo needs at least one draw");
    r.p_exact = sample_p(r2, k, centre, dev, opt.draws, opt.seed);
    r.exact_method = ExactMethod::MonteCarlo;
    r.mc_draws = opt.draws;
    r.mc_seed = opt.seed;
  }
  return r;
}

}  // namespace curate::analytics
