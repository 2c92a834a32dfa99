#pragma once

#include <string>
#include <vector>

#include "ssm/types.hpp"

namespace ssm {

enum class Delimiter { Csv, Tsv };

// Formats a double with enough digits to round-trip exactly.
std::string format_real(double v);

// Reads a delimited text file of reals, one object per line.
FeatureMatrix load_feature_matrix(const std::string& path, Delimiter format = Delimiter::Csv);

// Writes comma-separated rows, 17 significant digits per entry.
void write_feature_matrix(const std::string& path, const FeatureMatrix& m);

// Reads one label token per line, in file order.
std::vector<std::string> load_labels(const std::string& path);

// Reads "indexA,indexB" lines (0-based). Blank lines and lines starting
// with '#' are skipped.
std::vector<IndexPair> load_pairs(const std::string& path);

void write_pairs(const std::string& path, const std::vector<IndexPair>& pairs);

namespace detail {
// Strict finite-real parser; throws ParseError naming the line.
double parse_real(const std::string& field, long line_number);
std::vector<std::string> split_fields(const std::string& line, char delim);
}  // namespace detail

}  // namespace ssm
