#include "ssm/types.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <unordered_set>

namespace ssm {

void validate_feature_matrix(const FeatureMatrix& m) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw EmptyInput("feature matrix must have at least one row and one column");
  }
  if (!m.allFinite()) {
    throw InvalidArgument("feature matrix contains a non-finite entry");
  }
}

void validate_dataset(const ModalityDataset& data) {
  validate_feature_matrix(data.features);
  const auto n = static_cast<std::size_t>(data.features.rows());
  if (data.ids.size() != n || data.labels.size() != n) {
    throw InvalidArgument("ids/labels must have one entry per feature row");
  }
  std::unordered_set<std::string> seen;
  for (const auto& id : data.ids) {
    if (!seen.insert(id).second) {
      throw InvalidArgument("duplicate object id: " + id);
    }
  }
  if (data.space == SpaceKind::Hamming) {
    for (Index i = 0; i < data.features.rows(); ++i) {
      for (Index j = 0; j < data.features.cols(); ++j) {
        const double v = data.features(i, j);
        if (v != 0.0 && v != 1.0) {
          throw NonBinaryInput("Hamming dataset entry outside {0,1} at row " +
                               std::to_string(i));
        }
      }
    }
  }
}

void validate_corpus(const PairedCorpus& corpus) {
  validate_dataset(corpus.mod_a);
  validate_dataset(corpus.mod_b);
  std::unordered_set<Index> seen_a, seen_b;
  for (const auto& [ia, ib] : corpus.pairs) {
    if (ia < 0 || ia >= corpus.mod_a.size() || ib < 0 || ib >= corpus.mod_b.size()) {
      throw InvalidArgument("pair index out of range");
    }
    if (!seen_a.insert(ia).second || !seen_b.insert(ib).second) {
      throw InvalidArgument("object appears in more than one pair");
    }
  }
}

Split split_corpus(const PairedCorpus& corpus, Index train_size, unsigned long long seed) {
  const auto n_pairs = static_cast<Index>(corpus.pairs.size());
  if (train_size < 1 || train_size > n_pairs) {
    throw InvalidArgument("train_size must be in [1, " + std::to_string(n_pairs) +
                          "], got " + std::to_string(train_size));
  }

  std::vector<Index> order(static_cast<std::size_t>(n_pairs));
  std::iota(order.begin(), order.end(), Index{0});
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first train_size slots are a uniform
  // sample without replacement.
  for (Index i = 0; i < train_size; ++i) {
    std::uniform_int_distribution<Index> pick(i, n_pairs - 1);
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(pick(rng))]);
  }

  Split split;
  split.train_pairs.reserve(static_cast<std::size_t>(train_size));
  std::vector<Index> chosen(order.begin(), order.begin() + train_size);
  std::sort(chosen.begin(), chosen.end());
  std::unordered_set<Index> train_a, train_b;
  for (Index pos : chosen) {
    const auto& p = corpus.pairs[static_cast<std::size_t>(pos)];
    split.train_pairs.push_back(p);
    train_a.insert(p.first);
    train_b.insert(p.second);
  }
  for (Index i = 0; i < corpus.mod_a.size(); ++i) {
    if (!train_a.count(i)) split.test_indices_a.push_back(i);
  }
  for (Index i = 0; i < corpus.mod_b.size(); ++i) {
    if (!train_b.count(i)) split.test_indices_b.push_back(i);
  }
  return split;
}

}  // namespace ssm
