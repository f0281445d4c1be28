#pragma once

// Small CSV and number-formatting helpers shared by the file-format code.
// Not installed.

#include <istream>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace tidehaz::detail {

std::string_view trim(std::string_view s) noexcept;

std::vector<std::string_view> split_csv(std::string_view line);

/// Strict decimal parse of a whole field; throws Error naming `what`.
double parse_double(std::string_view field, std::string_view what);
long long parse_int(std::string_view field, std::string_view what);

/// Fixed six decimals, with "-0.000000" normalised to "0.000000".
std::string fixed6(double v);

/// Shortest decimal string that parses back to the same double.
std::string shortest(double v);

/// Reads a CSV stream: '#' lines of the form "# key=value[, key=value]"
/// land in `meta`, blank lines are dropped, the first remaining line is the
/// header and the rest are rows.
struct CsvDocument {
  std::map<std::string, std::string> meta;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_line_numbers;
};

CsvDocument read_csv(std::istream& in, std::string_view what);

/// Throws Error if header does not equal `expected` (after trimming).
void expect_header(const CsvDocument& doc,
                   const std::vector<std::string>& expected,
                   std::string_view what);

/// Looks up a numeric metadata entry.
double meta_double(const CsvDocument& doc, const std::string& key,
                   std::string_view what);

} // namespace tidehaz::detail
