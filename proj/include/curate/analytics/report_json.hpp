#pragma once

#include <string>

#include "json.hpp"

#include "curate/analytics/csv.hpp"
#include "curate/analytics/mann_whitney.hpp"
#include "curate/analytics/shapiro_wilk.hpp"
#include "curate/analytics/sus.hpp"

namespace curate::analytics {

// Fixed-point text, "72.500". Halves round away from zero.
std::string fixed(double v, int decimals);

// Full-precision numbers plus a "display" object rounded the way the
// published tables are: U, W, Z to 3 dp, mean ranks and sums to 2 dp,
// SUS values to 1 dp.
nlohmann::json to_json(const SusSummary& s);
nlohmann::json to_json(const SwReport& r);
nlohmann::json to_json(const MwuReport& r);

// {"groups":[{label,n,shapiro_wilk}...],"mann_whitney":{...}}. A group
// outside the Shapiro-Wilk range gets {"error": ...} instead.
nlohmann::json compare_report(const GroupComparison& c, const MwuOptions& options = {});

SusResponse sus_response_from_json(const nlohmann::json& j);

}  // namespace curate::analytics
