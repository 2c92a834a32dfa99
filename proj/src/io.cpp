#include "ssm/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace ssm {

namespace {

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  return in;
}

std::ofstream create_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot create file: " + path);
  return out;
}

}  // namespace

std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace detail {

double parse_real(const std::string& field, long line_number) {
  const std::string t = trim(field);
  if (t.empty()) throw ParseError("empty numeric field", line_number);
  double value = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError("not a number: '" + t + "'", line_number);
  }
  if (!std::isfinite(value)) {
    throw ParseError("non-finite value: '" + t + "'", line_number);
  }
  return value;
}

std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

}  // namespace detail

FeatureMatrix load_feature_matrix(const std::string& path, Delimiter format) {
  auto in = open_or_throw(path);
  const char delim = format == Delimiter::Csv ? ',' : '\t';

  std::vector<std::vector<double>> rows;
  std::string line;
  long line_number = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_number;
    line = strip_cr(line);
    if (trim(line).empty()) continue;
    const auto fields = detail::split_fields(line, delim);
    if (rows.empty()) {
      width = fields.size();
    } else if (fields.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, got " +
                           std::to_string(fields.size()),
                       line_number);
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(detail::parse_real(f, line_number));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw EmptyInput("no data rows in " + path);

  FeatureMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

void write_feature_matrix(const std::string& path, const FeatureMatrix& m) {
  auto out = create_or_throw(path);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_real(m(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<std::string> load_labels(const std::string& path) {
  auto in = open_or_throw(path);
  std::vector<std::string> labels;
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string token = trim(strip_cr(line));
    if (token.empty()) throw ParseError("empty label", line_number);
    labels.push_back(token);
  }
  if (labels.empty()) throw EmptyInput("no labels in " + path);
  return labels;
}

std::vector<IndexPair> load_pairs(const std::string& path) {
  auto in = open_or_throw(path);
  std::vector<IndexPair> pairs;
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    line = trim(strip_cr(line));
    if (line.empty() || line[0] == '#') continue;
    const auto fields = detail::split_fields(line, ',');
    if (fields.size() != 2) throw ParseError("expected 'indexA,indexB'", line_number);
    Index values[2];
    for (int k = 0; k < 2; ++k) {
      const std::string t = trim(fields[k]);
      Index v = 0;
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (ec != std::errc() || ptr != t.data() + t.size() || v < 0) {
        throw ParseError("not a nonnegative index: '" + t + "'", line_number);
      }
      values[k] = v;
    }
    pairs.emplace_back(values[0], values[1]);
  }
  if (pairs.empty()) throw EmptyInput("no pairs in " + path);
  return pairs;
}

void write_pairs(const std::string& path, const std::vector<IndexPair>& pairs) {
  auto out = create_or_throw(path);
  for (const auto& [a, b] : pairs) out << a << ',' << b << '\n';
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace ssm
