#include "curate/analytics/csv.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>

#include <boost/algorithm/string/trim.hpp>
#include <boost/tokenizer.hpp>

namespace curate::analytics {

namespace {

using Row = std::vector<std::string>;

// Rows with their 1-based line numbers; blank lines skipped.
std::vector<std::pair<int, Row>> rows(std::string_view text) {
  std::vector<std::pair<int, Row>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (boost::algorithm::trim_copy(line).empty()) continue;
    Row row;
    try {
      for (auto f : boost::tokenizer<boost::escaped_list_separator<char>>(line))
        row.push_back(boost::algorithm::trim_copy(f));
    } catch (const boost::escaped_list_error& e) {
      throw AnalyticsError("line " + std::to_string(no) + ": " + e.what());
    }
    out.emplace_back(no, std::move(row));
  }
  return out;
}

template <typename T>
std::optional<T> number(const std::string& s) {
  T v{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string at_line(int no, const std::string& msg) { return "line " + std::to_string(no) + ": " + msg; }

}  // namespace

std::vector<SusResponse> parse_sus_csv(std::string_view text) {
  auto all = rows(text);
  std::vector<SusResponse> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& [no, row] = all[i];
    if (row.size() != 11) throw AnalyticsError(at_line(no, "expected id and 10 items, got " + std::to_string(row.size()) + " fields"));
    SusResponse r;
    r.respondent_id = row[0];
    bool numeric = true;
    for (int k = 0; k < 10; ++k) {
      auto v = number<int>(row[k + 1]);
      if (!v) {
        numeric = false;
        break;
      }
      r.items[k] = *v;
    }
    if (!numeric) {
      if (i == 0) continue;  // header
      throw AnalyticsError(at_line(no, "items must be integers"));
    }
    try {
      validate(r);
    } catch (const AnalyticsError& e) {
      throw AnalyticsError(at_line(no, e.what()));
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string to_sus_csv(const std::vector<SusResponse>& rs) {
  std::string out = "id,q1,q2,q3,q4,q5,q6,q7,q8,q9,q10\n";
  for (const auto& r : rs) {
    out += r.respondent_id;
    for (int v : r.items) out += "," + std::to_string(v);
    out += "\n";
  }
  return out;
}

GroupComparison parse_comparison_csv(std::string_view text) {
  auto all = rows(text);
  GroupComparison c;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& [no, row] = all[i];
    if (row.size() != 2) throw AnalyticsError(at_line(no, "expected group_label,score"));
    auto v = number<double>(row[1]);
    if (!v) {
      if (i == 0) continue;
      throw AnalyticsError(at_line(no, "score \"" + row[1] + "\" is not a number"));
    }
    const std::string& label = row[0];
    if (c.label1.empty() || label == c.label1) {
      c.label1 = label;
      c.group1.push_back(*v);
    } else if (c.label2.empty() || label == c.label2) {
      c.label2 = label;
      c.group2.push_back(*v);
    } else {
      throw AnalyticsError(at_line(no, "third group \"" + label + "\""));
    }
  }
  if (c.group1.empty() || c.group2.empty()) throw AnalyticsError("comparison needs two groups");
  return c;
}

std::string to_comparison_csv(const GroupComparison& c) {
  std::string out = "group,score\n";
  auto put = [&](const std::string& label, const std::vector<double>& g) {
    for (double v : g) {
      std::ostringstream s;
      s.precision(17);
      s << v;
      out += label + "," + s.str() + "\n";
    }
  };
  put(c.label1, c.group1);
  put(c.label2, c.group2);
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw AnalyticsError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace curate::analytics
