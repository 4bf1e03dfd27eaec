#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "curate/analytics/sus.hpp"

namespace curate::analytics {

// id,q1,...,q10 per row. A first row whose item columns are not integers is
// a header. Errors name the line.
std::vector<SusResponse> parse_sus_csv(std::string_view text);
std::string to_sus_csv(const std::vector<SusResponse>& rows);

struct GroupComparison {
  std::string label1, label2;  // order of first appearance
  std::vector<double> group1, group2;
};

// group_label,score per row, optional header, exactly two labels.
GroupComparison parse_comparison_csv(std::string_view text);
std::string to_comparison_csv(const GroupComparison& c);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace curate::analytics
