#pragma once

#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "curate/analytics/error.hpp"

namespace curate::analytics {

struct SusResponse {
  std::string respondent_id;
  std::array<int, 10> items{};  // Likert 1..5, item 1 first
};

// Throws AnalyticsError naming the respondent and item.
void validate(const SusResponse& r);

// 2.5 * (sum over odd items of (item - 1) + sum over even items of (5 - item))
double sus_score(const SusResponse& r);

// Items 4 and 10, reversed, raw 0..8 scaled by 12.5.
double learnability_score(const SusResponse& r);
// The other eight items, raw 0..32 scaled by 3.125.
double usability_score(const SusResponse& r);

struct SusSummary {
  int n = 0;
  double mean_sus = 0;
  double learnability = 0;
  double usability = 0;
  double percentile = 0;
  std::string grade;
  std::string adjective;
};

// Throws AnalyticsError on empty input or an invalid response.
SusSummary sus_summary(std::span<const SusResponse> responses);

// Curved grading scale, (score, percentile) points in increasing order.
const std::vector<std::pair<double, double>>& percentile_anchors();

// Piecewise-linear through percentile_anchors(); clamps outside 0..100.
double sus_percentile(double score);

// A >= 90, B+ 80..90, B 70..80, B- 60..70, C+ 45..60, C 35..45,
// C- 25..35, D 15..25, F below.
std::string grade_for_percentile(double percentile);

// Poor < 51.7 <= OK < 72.9 <= Good <= 85.5 < Excellent
std::string adjective_for_score(double score);

}  // namespace curate::analytics
