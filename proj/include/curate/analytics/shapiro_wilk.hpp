#pragma once

#include <span>
#include <vector>

#include "curate/analytics/error.hpp"

namespace curate::analytics {

struct SwReport {
  double w = 0;
  int df = 0;
  double p = 0;
};

inline constexpr int kSwMinN = 3;
inline constexpr int kSwMaxN = 50;

// Royston's approximation (AS R94). Order of `samples` does not matter.
// Throws AnalyticsError when n is outside [3, 50] or a value is not finite,
// DegenerateError when all values are equal.
SwReport shapiro_wilk(std::span<const double> samples);

// The n antisymmetric coefficients for sorted data, sum of squares 1.
std::vector<double> shapiro_wilk_coefficients(int n);

}  // namespace curate::analytics
