#include "ssm/text_embed.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <limits>

#include "ssm/io.hpp"

namespace ssm {

namespace {

std::vector<std::string> split_whitespace(const std::string& line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace

WordVectorTable load_word_vectors(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  WordVectorTable table;
  std::string line;
  long line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto tokens = split_whitespace(line);
    if (tokens.empty()) continue;
    if (tokens.size() < 2) throw ParseError("word without vector", line_number);
    const auto dim = static_cast<Index>(tokens.size()) - 1;
    if (table.dimension == 0) {
      table.dimension = dim;
    } else if (dim != table.dimension) {
      throw ParseError("expected dimension " + std::to_string(table.dimension) + ", got " +
                           std::to_string(dim),
                       line_number);
    }
    if (table.entries.count(tokens[0])) continue;  // first occurrence wins
    Vector v(dim);
    for (Index j = 0; j < dim; ++j) {
      v(j) = detail::parse_real(tokens[static_cast<std::size_t>(j) + 1], line_number);
    }
    table.entries.emplace(tokens[0], std::move(v));
  }
  if (table.entries.empty()) throw EmptyInput("no word vectors in " + path);
  return table;
}

FrequencyTable load_word_frequencies(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  FrequencyTable table;
  std::string line;
  long line_number = 0;
  double total = 0.0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto tokens = split_whitespace(line);
    if (tokens.empty()) continue;
    if (tokens.size() != 2) throw ParseError("expected 'word count'", line_number);
    const double value = detail::parse_real(tokens[1], line_number);
    if (value <= 0.0) throw ParseError("count must be positive", line_number);
    if (table.probabilities.count(tokens[0])) continue;
    table.probabilities.emplace(tokens[0], value);
    total += value;
  }
  if (table.probabilities.empty()) throw EmptyInput("no frequencies in " + path);
  double min_prob = std::numeric_limits<double>::infinity();
  for (auto& [word, p] : table.probabilities) {
    p /= total;
    min_prob = std::min(min_prob, p);
  }
  table.default_probability = min_prob;
  return table;
}

double sif_weight(const std::string& word, const FrequencyTable& freqs, double a) {
  if (a <= 0.0) throw InvalidArgument("sif smoothing parameter must be positive");
  return a / (a + freqs.probability(word));
}

std::vector<std::string> tokenize(const std::string& sentence) {
  auto tokens = split_whitespace(sentence);
  for (auto& t : tokens) {
    std::transform(t.begin(), t.end(), t.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  }
  return tokens;
}

Vector first_principal_direction(const FeatureMatrix& m) {
  if (m.isZero(0.0)) throw DegenerateInput("all-zero matrix has no principal direction");
  Eigen::JacobiSVD<FeatureMatrix> svd(m, Eigen::ComputeThinV);
  Vector u = svd.matrixV().col(0);
  for (Index i = 0; i < u.size(); ++i) {
    if (u(i) != 0.0) {
      if (u(i) < 0.0) u = -u;
      break;
    }
  }
  return u;
}

FeatureMatrix remove_first_principal_component(const FeatureMatrix& m) {
  const Vector u = first_principal_direction(m);
  // v <- v - u (u.v) per row, i.e. M <- M - (M u) u^T.
  return m - (m * u) * u.transpose();
}

SentenceEmbedding embed_sentences(const std::vector<std::vector<std::string>>& sentences,
                                  const WordVectorTable& vectors, const FrequencyTable& freqs,
                                  const SifConfig& cfg) {
  if (cfg.a <= 0.0) throw InvalidArgument("sif smoothing parameter must be positive");
  if (sentences.empty()) throw EmptyInput("no sentences to embed");

  SentenceEmbedding result;
  result.matrix = FeatureMatrix::Zero(static_cast<Index>(sentences.size()), vectors.dimension);
  bool any_known = false;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    Vector sum = Vector::Zero(vectors.dimension);
    Index known = 0;
    for (const auto& word : sentences[s]) {
      const Vector* v = vectors.find(word);
      if (!v) continue;  // no vector, no direction to contribute
      sum += sif_weight(word, freqs, cfg.a) * (*v);
      ++known;
    }
    if (known == 0) {
      result.empty_sentences.push_back(static_cast<Index>(s));
    } else {
      result.matrix.row(static_cast<Index>(s)) = sum.transpose() / static_cast<double>(known);
      any_known = true;
    }
  }
  if (!any_known) throw EmptyVocabulary("no sentence contains an in-vocabulary token");

  if (cfg.remove_pc) {
    result.matrix = remove_first_principal_component(result.matrix);
  }
  return result;
}

}  // namespace ssm
