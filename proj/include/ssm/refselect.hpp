#pragma once

#include <string>
#include <vector>

#include "ssm/types.hpp"

namespace ssm {

// k matched cross-modal pairs chosen as the shared coordinate frame.
struct ReferenceSet {
  std::vector<IndexPair> pairs;  // object indices, ordered
  double lambda = 1.0;           // balance factor used during selection
  double objective_value = 0.0;  // combined bimodal score of the stored pairs

  Index k() const { return static_cast<Index>(pairs.size()); }
  std::vector<Index> indices_a() const;
  std::vector<Index> indices_b() const;
};

// Single-modality selection score: the sum of distances between the
// candidate references, times the summed variance of each reference's
// distances to the non-reference objects raised to lambda. Larger is
// better; references should be mutually distant and see spread-out
// distances. A zero variance sum with lambda > 0 yields 0 and sets
// *degenerate when provided.
double objective(const ModalityDataset& data, const std::vector<Index>& candidate_refs,
                 const std::vector<Index>& non_refs, double lambda, bool* degenerate = nullptr);

// Bimodal score of a subset of the training pairs: each modality's
// objective (non-references = remaining training pairs) divided by that
// modality's full-training-set score, then summed. This is what both
// selectors maximize.
double combined_objective(const ModalityDataset& mod_a, const ModalityDataset& mod_b,
                          const std::vector<IndexPair>& train_pairs,
                          const std::vector<Index>& subset_positions, double lambda);

// Exhaustive maximizer over all size-k subsets. Guarded to
// |train_pairs| <= 20; ties break toward the lexicographically smallest
// position list.
ReferenceSet select_references_bruteforce(const ModalityDataset& mod_a,
                                          const ModalityDataset& mod_b,
                                          const std::vector<IndexPair>& train_pairs, Index k,
                                          double lambda);

// Deterministic greedy maximizer: seed with the two pairs of largest
// cross-pair distance sum, grow by best combined objective, then refine
// with single-swap local search (at most 100 sweeps).
ReferenceSet select_references_greedy(const ModalityDataset& mod_a, const ModalityDataset& mod_b,
                                      const std::vector<IndexPair>& train_pairs, Index k,
                                      double lambda);

// Text file of "indexA,indexB" lines under a header comment carrying k,
// lambda and the objective value.
void save_reference_set(const std::string& path, const ReferenceSet& refs);
ReferenceSet load_reference_set(const std::string& path);

}  // namespace ssm
