// Minimal RFC 4180 style CSV fields and round-trip number formatting.
#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fraclbp::csv {

// Quotes the field when it holds a comma, quote or line break.
std::string quote(std::string_view field);

// Splits one record. Quoted fields may contain commas and doubled quotes.
std::vector<std::string> split(std::string_view line);

std::string join(const std::vector<std::string>& fields);

// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

// Throws InvalidArgument on malformed text; `what` names the field.
double parse_double(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);

}  // namespace fraclbp::csv
