#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wmeans {

/// Shortest decimal text that reads back to the same double. Non-finite
/// values print as "inf", "-inf", "nan".
std::string format_double(double value);

/// Parses a whole string as a double; accepts a leading '+' and
/// "inf"/"infinity" in any case. Returns nullopt on trailing garbage.
std::optional<double> parse_double(std::string_view text);

/// Comma-separated list of doubles ("1,7,2.5"); throws InvalidArgument.
std::vector<double> parse_double_list(std::string_view text);

}  // namespace wmeans
