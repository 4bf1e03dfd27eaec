#pragma once

#include <stdexcept>

namespace curate::analytics {

class AnalyticsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Zero spread where the statistic needs some.
class DegenerateError : public AnalyticsError {
 public:
  using AnalyticsError::AnalyticsError;
};

}  // namespace curate::analytics
