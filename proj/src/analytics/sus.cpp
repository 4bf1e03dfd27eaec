#include "curate/analytics/sus.hpp"

#include <algorithm>

namespace curate::analytics {

namespace {

// Contribution 0..4 of item i (0-based): odd-numbered questions count up,
// even-numbered ones count down.
int contribution(const SusResponse& r, int i) { return i % 2 == 0 ? r.items[i] - 1 : 5 - r.items[i]; }

bool learnability_item(int i) { return i == 3 || i == 9; }

}  // namespace

void validate(const SusResponse& r) {
  for (int i = 0; i < 10; ++i)
    if (r.items[i] < 1 || r.items[i] > 5)
      throw AnalyticsError("respondent " + r.respondent_id + ": item " + std::to_string(i + 1) + " is " +
                           std::to_string(r.items[i]) + ", expected 1..5");
}

double sus_score(const SusResponse& r) {
  validate(r);
  int raw = 0;
  for (int i = 0; i < 10; ++i) raw += contribution(r, i);
  return 2.5 * raw;
}

double learnability_score(const SusResponse& r) {
  validate(r);
  return 12.5 * (contribution(r, 3) + contribution(r, 9));
}

double usability_score(const SusResponse& r) {
  validate(r);
  int raw = 0;
  for (int i = 0; i < 10; ++i)
    if (!learnability_item(i)) raw += contribution(r, i);
  return 3.125 * raw;
}

SusSummary sus_summary(std::span<const SusResponse> responses) {
  if (responses.empty()) throw AnalyticsError("no SUS responses");
  SusSummary s;
  s.n = static_cast<int>(responses.size());
  for (const auto& r : responses) {
    s.mean_sus += sus_score(r);
    s.learnability += learnability_score(r);
    s.usability += usability_score(r);
  }
  s.mean_sus /= s.n;
  s.learnability /= s.n;
  s.usability /= s.n;
  s.percentile = sus_percentile(s.mean_sus);
  s.grade = grade_for_percentile(s.percentile);
  s.adjective = adjective_for_score(s.mean_sus);
  return s;
}

const std::vector<std::pair<double, double>>& percentile_anchors() {
  static const std::vector<std::pair<double, double>> a{
      {0, 0},      {5, 0.3},   {10, 0.4}, {15, 0.7}, {20, 1},    {25, 1.5}, {30, 2},   {35, 4},
      {40, 6},     {45, 8},    {50, 13},  {55, 19},  {59.5, 30}, {65, 41},  {66, 44},  {67, 47},
      {68, 50},    {69, 53},   {70, 56},  {71, 60},  {72, 63},   {73, 67},  {74, 70},  {75, 73},
      {76, 77},    {77, 80},   {77.3, 81}, {78, 83}, {79, 86},   {80, 88},  {81.5, 92}, {85, 97},
      {90, 99.8},  {95, 99.9}, {100, 100}};
  return a;
}

double sus_percentile(double score) {
  const auto& a = percentile_anchors();
  if (score <= a.front().first) return a.front().second;
  if (score >= a.back().first) return a.back().second;
  auto hi = std::upper_bound(a.begin(), a.end(), score,
                             [](double v, const auto& p) { return v < p.first; });
  auto lo = hi - 1;
  const double f = (score - lo->first) / (hi->first - lo->first);
  return lo->second + f * (hi->second - lo->second);
}

std::string grade_for_percentile(double p) {
  if (p >= 90) return "A";
  if (p >= 80) return "B+";
  if (p >= 70) return "B";
  if (p >= 60) return "B-";
  if (p >= 45) return "C+";
  if (p >= 35) return "C";
  if (p >= 25) return "C-";
  if (p >= 15) return "D";
  return "F";
}

std::string adjective_for_score(double score) {
  if (score < 51.7) return "Poor";
  if (score < 72.9) return "OK";
  if (score <= 85.5) return "Good";
  return "Excellent";
}

}  // namespace curate::analytics
