#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "curate/analytics/error.hpp"

namespace curate::analytics {

enum class ExactMethod { FullEnumeration, MonteCarlo, None };
std::string_view to_string(ExactMethod m);

enum class ExactMode { Auto, MonteCarlo, Off };

struct MwuOptions {
  ExactMode exact = ExactMode::Auto;
  // Auto enumerates when C(N, n1) is at most this, else samples.
  double enumeration_limit = 1e6;
  std::uint64_t seed = 42;
  int draws = 100000;
};

struct MwuReport {
  int n1 = 0, n2 = 0;
  double rank_sum_1 = 0, rank_sum_2 = 0;
  double mean_rank_1 = 0, mean_rank_2 = 0;
  double u1 = 0, u2 = 0;
  double U = 0;  // min(u1, u2)
  double W = 0;  // smaller rank sum
  double sigma = 0;  // tie-corrected
  double Z = 0;  // (U - n1 n2 / 2) / sigma, 0 when sigma is 0
  double p_asymptotic = 1;
  double p_asymptotic_cc = 1;  // continuity-corrected
  std::optional<double> p_exact;
  ExactMethod exact_method = ExactMethod::None;
  int mc_draws = 0;
  std::uint64_t mc_seed = 0;
};

// Midranks (1-based) of `values` in their given order.
std::vector<double> midranks(std::span<const double> values);

// Sizes of the tie groups among `values`, singletons included.
std::vector<int> tie_sizes(std::span<const double> values);

// sqrt((n1 n2 / 12) * ((N + 1) - sum(t^3 - t) / (N (N - 1))))
double mwu_sigma(int n1, int n2, std::span<const int> ties);

// Two-tailed. The exact p counts labelings whose rank sum is at least as far
// from its mean as the observed one. Throws AnalyticsError on an empty group
// or a non-finite value.
MwuReport mann_whitney_u(std::span<const double> group1, std::span<const double> group2,
                         const MwuOptions& options = {});

}  // namespace curate::analytics
