#include "text_util.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

#include <fmt/format.h>

#include "tidehaz/error.hpp"

namespace tidehaz::detail {

std::string_view trim(std::string_view s) noexcept {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view field, std::string_view what) {
  field = trim(field);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
    throw Error(fmt::format("{}: cannot parse number '{}'", what, field));
  if (!std::isfinite(v))
    throw Error(fmt::format("{}: non-finite value '{}'", what, field));
  return v;
}

long long parse_int(std::string_view field, std::string_view what) {
  field = trim(field);
  long long v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
    throw Error(fmt::format("{}: cannot parse integer '{}'", what, field));
  return v;
}

std::string fixed6(double v) {
  std::string s = fmt::format("{:.6f}", v);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

namespace {

void parse_meta_line(std::string_view body, std::map<std::string, std::string>& meta) {
  std::size_t start = 0;
  while (start <= body.size()) {
    auto pos = body.find(',', start);
    auto item = trim(body.substr(start, pos == std::string_view::npos
                                            ? std::string_view::npos
                                            : pos - start));
    auto eq = item.find('=');
    if (eq != std::string_view::npos)
      meta[std::string(trim(item.substr(0, eq)))] = std::string(trim(item.substr(eq + 1)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
}

} // namespace

CsvDocument read_csv(std::istream& in, std::string_view what) {
  CsvDocument doc;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      parse_meta_line(t.substr(1), doc.meta);
      continue;
    }
    auto fields = split_csv(t);
    if (!have_header) {
      for (auto f : fields) doc.header.emplace_back(f);
      have_header = true;
      continue;
    }
    if (fields.size() != doc.header.size())
      throw Error(fmt::format("{}: line {} has {} fields, header has {}", what,
                              line_no, fields.size(), doc.header.size()));
    std::vector<std::string> row;
    row.reserve(fields.size());
    for (auto f : fields) {
      if (f.empty())
        throw Error(fmt::format("{}: line {} has an empty cell", what, line_no));
      row.emplace_back(f);
    }
    doc.rows.push_back(std::move(row));
    doc.row_line_numbers.push_back(line_no);
  }
  if (!have_header) throw Error(fmt::format("{}: missing header", what));
  return doc;
}

void expect_header(const CsvDocument& doc, const std::vector<std::string>& expected,
                   std::string_view what) {
  if (doc.header != expected) {
    std::string want;
    for (std::size_t i = 0; i < expected.size(); ++i)
      want += (i ? "," : "") + expected[i];
    throw Error(fmt::format("{}: expected header '{}'", what, want));
  }
}

double meta_double(const CsvDocument& doc, const std::string& key,
                   std::string_view what) {
  auto it = doc.meta.find(key);
  if (it == doc.meta.end())
    throw Error(fmt::format("{}: missing metadata '{}'", what, key));
  return parse_double(it->second, what);
}

} // namespace tidehaz::detail
