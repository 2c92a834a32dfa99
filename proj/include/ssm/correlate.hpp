#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssm/types.hpp"

namespace ssm {

// Pairwise inner-product similarity structure of a feature matrix.
using SimilarityMatrix = FeatureMatrix;

enum class MappingKind { Linear, Sigmoid };

std::string to_string(MappingKind kind);
MappingKind mapping_from_string(const std::string& text);

// S = X * X^T for row-major object features.
SimilarityMatrix inner_product_similarity(const FeatureMatrix& x);

// Pearson correlation over the off-diagonal upper triangle (i < j) of two
// similarity matrices. Throws DegenerateInput when either side has zero
// variance across those entries.
double empirical_pearson(const SimilarityMatrix& a, const SimilarityMatrix& b);

// Population correlation implied by a linear map y = M^T x with x drawn from
// an isotropic standard normal. Two equivalent evaluations are kept separate
// so they can cross-check each other.
double analytic_rho_spectral(const FeatureMatrix& m);
double analytic_rho_closed(const FeatureMatrix& m);

// Evaluates both forms, verifies they agree, and returns the closed form.
double analytic_rho(const FeatureMatrix& m);

struct MonteCarloParams {
  Index n = 200;
  Index d = 20;
  Index e = 20;
  Index trials = 100;
  MappingKind mapping = MappingKind::Linear;
  unsigned long long seed = 1;
  // When set, every trial reuses this d x e map instead of sampling one.
  std::optional<FeatureMatrix> fixed_projection;
};

struct CorrelationReport {
  Index trials = 0;
  std::vector<double> empirical_rho_per_trial;
  // Mean of the per-trial analytic values; only defined for linear maps.
  std::optional<double> analytic_rho;
  double fraction_positive = 0.0;
  MappingKind mapping = MappingKind::Linear;
};

// Samples per-trial object sets, maps them to the second modality, and
// measures the correlation between the two inner-product similarity
// structures.
CorrelationReport monte_carlo_verify(const MonteCarloParams& params);

void write_correlation_report(const CorrelationReport& report, const std::string& path);

}  // namespace ssm
