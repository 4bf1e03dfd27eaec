#include "curate/analytics/report_json.hpp"

#include <cmath>
#include <cstdio>

namespace curate::analytics {

using nlohmann::json;

std::string fixed(double v, int decimals) {
  // Halves round away from zero: 14.125 -> "14.13", as the tables print it.
  const double scale = std::pow(10.0, decimals);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, std::round(v * scale) / scale);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);  // no "-0.00"
  return s;
}

json to_json(const SusSummary& s) {
  return {{"n", s.n},
          {"mean_sus", s.mean_sus},
          {"learnability", s.learnability},
          {"usability", s.usability},
          {"percentile", s.percentile},
          {"grade", s.grade},
          {"adjective", s.adjective},
          {"display",
           {{"mean_sus", fixed(s.mean_sus, 1)},
            {"learnability", fixed(s.learnability, 1)},
            {"usability", fixed(s.usability, 1)},
            {"percentile", fixed(s.percentile, 0)}}}};
}

json to_json(const SwReport& r) {
  return {{"statistic", r.w},
          {"df", r.df},
          {"p", r.p},
          {"display", {{"statistic", fixed(r.w, 3)}, {"p", r.p < 0.001 ? "<0.001" : fixed(r.p, 3)}}}};
}

json to_json(const MwuReport& r) {
  json j{{"n1", r.n1},
         {"n2", r.n2},
         {"rank_sum_1", r.rank_sum_1},
         {"rank_sum_2", r.rank_sum_2},
         {"mean_rank_1", r.mean_rank_1},
         {"mean_rank_2", r.mean_rank_2},
         {"U1", r.u1},
         {"U2", r.u2},
         {"U", r.U},
         {"W", r.W},
         {"sigma", r.sigma},
         {"Z", r.Z},
         {"p_asymptotic", r.p_asymptotic},
         {"p_asymptotic_cc", r.p_asymptotic_cc},
         {"p_exact", r.p_exact ? json(*r.p_exact) : json(nullptr)},
         {"exact_method", std::string(to_string(r.exact_method))}};
  if (r.exact_method == ExactMethod::MonteCarlo) j["monte_carlo"] = {{"draws", r.mc_draws}, {"seed", r.mc_seed}};
  j["display"] = {{"U", fixed(r.U, 3)},
                  {"W", fixed(r.W, 3)},
                  {"Z", fixed(r.Z, 3)},
                  {"mean_rank_1", fixed(r.mean_rank_1, 2)},
                  {"mean_rank_2", fixed(r.mean_rank_2, 2)},
                  {"rank_sum_1", fixed(r.rank_sum_1, 2)},
                  {"rank_sum_2", fixed(r.rank_sum_2, 2)},
                  {"p_asymptotic", fixed(r.p_asymptotic, 3)}};
  return j;
}

json compare_report(const GroupComparison& c, const MwuOptions& options) {
  json groups = json::array();
  auto group = [&](const std::string& label, const std::vector<double>& g) {
    json e{{"label", label}, {"n", g.size()}};
    try {
      e["shapiro_wilk"] = to_json(shapiro_wilk(g));
    } catch (const AnalyticsError& err) {
      e["shapiro_wilk"] = {{"error", err.what()}};
    }
    groups.push_back(std::move(e));
  };
  group(c.label1, c.group1);
  group(c.label2, c.group2);
  return {{"groups", groups}, {"mann_whitney", to_json(mann_whitney_u(c.group1, c.group2, options))}};
}

SusResponse sus_response_from_json(const json& j) {
  if (!j.is_object() || !j.contains("items") || !j["items"].is_array() || j["items"].size() != 10)
    throw AnalyticsError("response needs \"items\": 10 integers");
  SusResponse r;
  if (j.contains("id")) {
    if (!j["id"].is_string()) throw AnalyticsError("\"id\" must be a string");
    r.respondent_id = j["id"].get<std::string>();
  }
  for (int i = 0; i < 10; ++i) {
    if (!j["items"][i].is_number_integer()) throw AnalyticsError("item " + std::to_string(i + 1) + " is not an integer");
    r.items[i] = j["items"][i].get<int>();
  }
  validate(r);
  return r;
}

}  // namespace curate::analytics
