#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssm/structure.hpp"
#include "ssm/types.hpp"

namespace ssm {

// Average precision of one ranked retrieval list. Relevance is label
// equality; the relevant total is counted over the full list, and an empty
// relevant set scores 0.
double average_precision(const std::vector<std::string>& ranked_target_labels,
                         const std::string& query_label);

// Arithmetic mean of per-query average precisions.
double mean_average_precision(const std::vector<double>& aps);

// Expected average precision of a uniformly random ranking of `total`
// targets of which `relevant` match the query label.
double expected_random_average_precision(Index total, Index relevant);

// Mean expected random average precision over a query set, from label
// counts alone.
double random_baseline_map(const std::vector<std::string>& query_labels,
                           const std::vector<std::string>& target_labels);

struct ExperimentConfig {
  std::string features_a_path;
  std::string features_b_path;
  std::string labels_a_path;
  std::string labels_b_path;
  std::string pairs_path;
  SpaceKind space_a = SpaceKind::Euclidean;
  SpaceKind space_b = SpaceKind::Euclidean;
  std::vector<Index> train_sizes = {6, 10, 14, 18, 22, 26, 30, 34, 38, 42, 46, 50};
  std::vector<unsigned long long> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  double lambda = 1.0;
  double gamma = 1e-6;
  // Number of reference pairs per split; 0 keeps every training pair.
  Index ref_count = 0;
  StructureMetric metric = StructureMetric::CosineDist;
  std::string method = "ssm";
  // When nonempty, run_experiment writes <prefix>_report.csv and
  // <prefix>_summary.csv.
  std::string output_prefix;
};

struct ExperimentCell {
  Index train_size = 0;
  unsigned long long seed = 0;
  std::string direction;  // "a2b", "b2a", or "avg"
  // Empty when the split leaves no test objects.
  std::optional<double> map;
};

struct ExperimentSummaryRow {
  Index train_size = 0;
  std::string direction;
  std::optional<double> map_mean;
  std::optional<double> map_std;
};

struct ExperimentReport {
  std::string method;
  std::vector<ExperimentCell> cells;
  std::vector<ExperimentSummaryRow> summary;
};

// Sweeps (train_size, seed) cells: split, pick references, build structure
// spaces, calibrate both directions, rank test queries, score mAP. Cells are
// emitted in config order with directions a2b, b2a, avg per cell.
ExperimentReport run_experiment(const ExperimentConfig& cfg, const PairedCorpus& corpus);

// Loads the corpus from the paths in the config, then runs the sweep.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

void write_experiment_report(const ExperimentReport& report, const std::string& report_path,
                             const std::string& summary_path);

}  // namespace ssm
