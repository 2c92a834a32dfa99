#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "ssm/types.hpp"

namespace ssm {

// Pretrained word vectors, all sharing one dimension.
struct WordVectorTable {
  Index dimension = 0;
  std::unordered_map<std::string, Vector> entries;

  const Vector* find(const std::string& word) const {
    const auto it = entries.find(word);
    return it == entries.end() ? nullptr : &it->second;
  }
};

// Unigram probabilities p(w) in (0,1]. Words missing from the table
// fall back to default_probability.
struct FrequencyTable {
  std::unordered_map<std::string, double> probabilities;
  double default_probability = 1e-8;

  double probability(const std::string& word) const {
    const auto it = probabilities.find(word);
    return it == probabilities.end() ? default_probability : it->second;
  }
};

struct SifConfig {
  double a = 1e-3;       // smoothing parameter of the inverse-frequency weight
  bool remove_pc = true; // drop the first principal direction afterwards
};

// Weighted-average sentence embeddings plus which rows came out empty.
struct SentenceEmbedding {
  FeatureMatrix matrix;
  std::vector<Index> empty_sentences;  // rows emitted as zero vectors
};

// GloVe text layout: "word v1 v2 ... vD" per line, constant D.
// Duplicate words keep their first occurrence.
WordVectorTable load_word_vectors(const std::string& path);

// "word count-or-probability" per line; values are normalized by their
// total so raw counts and probabilities both work. default_probability
// becomes the smallest normalized entry.
FrequencyTable load_word_frequencies(const std::string& path);

// Inverse-frequency weight a / (a + p(word)).
double sif_weight(const std::string& word, const FrequencyTable& freqs, double a);

// Lowercased whitespace tokens.
std::vector<std::string> tokenize(const std::string& sentence);

// First right singular direction of the matrix, sign-fixed so its first
// nonzero coordinate is positive.
Vector first_principal_direction(const FeatureMatrix& m);

// Subtracts each row's projection onto the first principal direction.
FeatureMatrix remove_first_principal_component(const FeatureMatrix& m);

// Probability-weighted word-vector averages, one row per sentence.
// Out-of-vocabulary tokens are skipped and do not count toward the
// average; sentences with no known token become zero rows (flagged).
SentenceEmbedding embed_sentences(const std::vector<std::vector<std::string>>& sentences,
                                  const WordVectorTable& vectors, const FrequencyTable& freqs,
                                  const SifConfig& cfg);

}  // namespace ssm
