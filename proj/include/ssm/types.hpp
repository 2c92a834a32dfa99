#pragma once

#include <Eigen/Core>

#include <string>
#include <utility>
#include <vector>

#include "ssm/error.hpp"

namespace ssm {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Row-per-object embedding matrix. Rows are objects, columns are
// embedding coordinates.
using FeatureMatrix = MatrixX<double>;
using Vector = VectorX<double>;

// Which native geometry a modality's features live in.
enum class SpaceKind { Euclidean, Hamming };

// A ground-truth match between row indexA of modality A and row indexB
// of modality B.
using IndexPair = std::pair<Index, Index>;

// One modality: features plus per-object identifiers and class labels.
struct ModalityDataset {
  FeatureMatrix features;
  std::vector<std::string> ids;     // pairwise distinct, one per row
  std::vector<std::string> labels;  // one per row, compared by equality
  SpaceKind space = SpaceKind::Euclidean;

  Index size() const { return features.rows(); }
  Index dim() const { return features.cols(); }
};

// Two modalities plus the list of known cross-modal matches.
struct PairedCorpus {
  ModalityDataset mod_a;
  ModalityDataset mod_b;
  std::vector<IndexPair> pairs;
};

// A train/test partition of a PairedCorpus.
struct Split {
  std::vector<IndexPair> train_pairs;
  std::vector<Index> test_indices_a;
  std::vector<Index> test_indices_b;
};

// Throws unless the matrix is nonempty with all entries finite.
void validate_feature_matrix(const FeatureMatrix& m);

// Throws unless ids/labels align with the feature rows, ids are
// distinct, and Hamming features are binary.
void validate_dataset(const ModalityDataset& data);

// Throws unless every pair index is in range and no index repeats on
// either side.
void validate_corpus(const PairedCorpus& corpus);

// Draws train_size pairs uniformly without replacement under the given
// seed; test indices are every object not in a training pair. The same
// seed always yields the same split.
Split split_corpus(const PairedCorpus& corpus, Index train_size, unsigned long long seed);

}  // namespace ssm
