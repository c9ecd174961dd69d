#include "wmeans/format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "wmeans/error.hpp"

namespace wmeans {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) return std::to_string(value);
  return {buffer, end};
}

std::optional<double> parse_double(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "inf" || lowered == "infinity") {
    return negative ? -HUGE_VAL : HUGE_VAL;
  }
  if (lowered.empty() || lowered.front() == '+' || lowered.front() == '-') return std::nullopt;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(lowered.data(), lowered.data() + lowered.size(), value);
  if (ec != std::errc{} || ptr != lowered.data() + lowered.size()) return std::nullopt;
  return negative ? -value : value;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    auto item = text.substr(start, comma - start);
    auto value = parse_double(item);
    if (!value) {
      throw Error(ErrorCode::InvalidArgument, "cannot parse number '" + std::string(item) + "'");
    }
    values.push_back(*value);
    start = comma + 1;
  }
  return values;
}

}  // namespace wmeans
