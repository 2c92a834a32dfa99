#include "ssm/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "ssm/calibrate.hpp"
#include "ssm/error.hpp"
#include "ssm/io.hpp"
#include "ssm/refselect.hpp"

namespace ssm {

double average_precision(const std::vector<std::string>& ranked_target_labels,
                         const std::string& query_label) {
  if (ranked_target_labels.empty()) {
    throw EmptyInput("ranked target list is empty");
  }
  Index total_relevant = 0;
  for (const auto& label : ranked_target_labels) {
    if (label == query_label) {
      ++total_relevant;
    }
  }
  if (total_relevant == 0) {
    return 0.0;
  }
  double sum = 0.0;
  Index hits = 0;
  for (std::size_t k = 0; k < ranked_target_labels.size(); ++k) {
    if (ranked_target_labels[k] == query_label) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(k + 1);
    }
  }
  return sum / static_cast<double>(total_relevant);
}

double mean_average_precision(const std::vector<double>& aps) {
  if (aps.empty()) {
    throw EmptyInput("no average precisions to aggregate");
  }
  double sum = 0.0;
  for (double ap : aps) {
    sum += ap;
  }
  return sum / static_cast<double>(aps.size());
}

double expected_random_average_precision(Index total, Index relevant) {
  if (total <= 0) {
    throw InvalidArgument("target list must be nonempty");
  }
  if (relevant < 0 || relevant > total) {
    throw InvalidArgument("relevant count out of range");
  }
  if (relevant == 0) {
    return 0.0;
  }
  if (total == 1) {
    return 1.0;
  }
  const double slope = static_cast<double>(relevant - 1) / static_cast<double>(total - 1);
  double sum = 0.0;
  for (Index k = 1; k <= total; ++k) {
    sum += (1.0 + static_cast<double>(k - 1) * slope) / static_cast<double>(k);
  }
  return sum / static_cast<double>(total);
}

double random_baseline_map(const std::vector<std::string>& query_labels,
                           const std::vector<std::string>& target_labels) {
  if (query_labels.empty() || target_labels.empty()) {
    throw EmptyInput("need nonempty query and target label lists");
  }
  std::unordered_map<std::string, Index> counts;
  for (const auto& label : target_labels) {
    ++counts[label];
  }
  const Index total = static_cast<Index>(target_labels.size());
  double sum = 0.0;
  for (const auto& label : query_labels) {
    const auto it = counts.find(label);
    const Index relevant = it == counts.end() ? 0 : it->second;
    sum += expected_random_average_precision(total, relevant);
  }
  return sum / static_cast<double>(query_labels.size());
}

namespace {

FeatureMatrix gather_rows(const FeatureMatrix& m, const std::vector<Index>& rows) {
  FeatureMatrix out(static_cast<Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Index>(i)) = m.row(rows[i]);
  }
  return out;
}

StructureMatrix gather_structure(const StructureMatrix& s, const std::vector<Index>& rows) {
  StructureMatrix out = s;
  out.values = gather_rows(s.values, rows);
  return out;
}

double directional_map(const StructureMatrix& s_src, const StructureMatrix& s_dst,
                       const std::vector<Index>& train_src, const std::vector<Index>& train_dst,
                       const std::vector<Index>& test_src, const std::vector<Index>& test_dst,
                       const std::vector<std::string>& src_labels,
                       const std::vector<std::string>& dst_labels, double gamma,
                       Direction direction, StructureMetric metric) {
  const CalibrationModel model =
      fit_calibration(gather_rows(s_src.values, train_src), gather_rows(s_dst.values, train_dst),
                      gamma, direction);
  const StructureMatrix queries = gather_structure(s_src, test_src);
  const StructureMatrix targets = gather_structure(s_dst, test_dst);
  const auto results = match(queries, targets, model, metric);
  std::vector<double> aps;
  aps.reserve(results.size());
  std::vector<std::string> ranked_labels;
  for (const auto& result : results) {
    ranked_labels.clear();
    ranked_labels.reserve(result.ranked.size());
    for (const auto& [target, distance] : result.ranked) {
      (void)distance;
      ranked_labels.push_back(dst_labels[static_cast<std::size_t>(test_dst[target])]);
    }
    const auto& query_label = src_labels[static_cast<std::size_t>(test_src[result.query_index])];
    aps.push_back(average_precision(ranked_labels, query_label));
  }
  return mean_average_precision(aps);
}

void append_summary(ExperimentReport& report, Index train_size, const std::string& direction) {
  std::vector<double> values;
  for (const auto& cell : report.cells) {
    if (cell.train_size == train_size && cell.direction == direction && cell.map) {
      values.push_back(*cell.map);
    }
  }
  ExperimentSummaryRow row;
  row.train_size = train_size;
  row.direction = direction;
  if (!values.empty()) {
    double mean = 0.0;
    for (double v : values) {
      mean += v;
    }
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) {
      var += (v - mean) * (v - mean);
    }
    var /= static_cast<double>(values.size());
    row.map_mean = mean;
    row.map_std = std::sqrt(var);
  }
  report.summary.push_back(row);
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_real(*value) : std::string("nan");
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg, const PairedCorpus& corpus) {
  validate_corpus(corpus);
  const Index n_pairs = static_cast<Index>(corpus.pairs.size());
  if (cfg.train_sizes.empty()) {
    throw InvalidArgument("train_sizes must be nonempty");
  }
  for (Index t : cfg.train_sizes) {
    if (t < 2) {
      throw InvalidArgument("train_sizes entries must be at least 2");
    }
    if (t > n_pairs) {
      throw InvalidArgument("train_size " + std::to_string(t) + " exceeds the " +
                            std::to_string(n_pairs) + " available pairs");
    }
  }
  if (cfg.seeds.empty()) {
    throw InvalidArgument("seeds must be nonempty");
  }
  if (!(cfg.lambda > 0.0)) {
    throw InvalidArgument("lambda must be positive");
  }
  if (cfg.gamma < 0.0) {
    throw InvalidArgument("gamma must be nonnegative");
  }
  if (cfg.ref_count < 0) {
    throw InvalidArgument("ref_count must be nonnegative");
  }
  if (corpus.mod_a.labels.empty() || corpus.mod_b.labels.empty()) {
    throw InvalidArgument("both modalities need labels for retrieval evaluation");
  }

  ExperimentReport report;
  report.method = cfg.method;
  for (Index train_size : cfg.train_sizes) {
    for (unsigned long long seed : cfg.seeds) {
      try {
        const Split split = split_corpus(corpus, train_size, seed);
        if (split.test_indices_a.empty() || split.test_indices_b.empty()) {
          for (const char* direction : {"a2b", "b2a", "avg"}) {
            report.cells.push_back({train_size, seed, direction, std::nullopt});
          }
          continue;
        }
        const Index k = cfg.ref_count == 0 ? train_size : std::min(cfg.ref_count, train_size);
        const ReferenceSet refs =
            select_references_greedy(corpus.mod_a, corpus.mod_b, split.train_pairs, k, cfg.lambda);
        const StructureMatrix s_a = build_structure(corpus.mod_a, refs.indices_a());
        const StructureMatrix s_b = build_structure(corpus.mod_b, refs.indices_b());
        std::vector<Index> train_a;
        std::vector<Index> train_b;
        train_a.reserve(split.train_pairs.size());
        train_b.reserve(split.train_pairs.size());
        for (const auto& [ia, ib] : split.train_pairs) {
          train_a.push_back(ia);
          train_b.push_back(ib);
        }
        const double map_a2b = directional_map(
            s_a, s_b, train_a, train_b, split.test_indices_a, split.test_indices_b,
            corpus.mod_a.labels, corpus.mod_b.labels, cfg.gamma, Direction::AtoB, cfg.metric);
        const double map_b2a = directional_map(
            s_b, s_a, train_b, train_a, split.test_indices_b, split.test_indices_a,
            corpus.mod_b.labels, corpus.mod_a.labels, cfg.gamma, Direction::BtoA, cfg.metric);
        report.cells.push_back({train_size, seed, "a2b", map_a2b});
        report.cells.push_back({train_size, seed, "b2a", map_b2a});
        report.cells.push_back({train_size, seed, "avg", 0.5 * (map_a2b + map_b2a)});
      } catch (const Error& e) {
        throw Error("train_size=" + std::to_string(train_size) + " seed=" +
                    std::to_string(seed) + ": " + e.what());
      }
    }
  }
  for (Index train_size : cfg.train_sizes) {
    for (const char* direction : {"a2b", "b2a", "avg"}) {
      append_summary(report, train_size, direction);
    }
  }
  if (!cfg.output_prefix.empty()) {
    write_experiment_report(report, cfg.output_prefix + "_report.csv",
                            cfg.output_prefix + "_summary.csv");
  }
  return report;
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  PairedCorpus corpus;
  corpus.mod_a.features = load_feature_matrix(cfg.features_a_path);
  corpus.mod_a.labels = load_labels(cfg.labels_a_path);
  corpus.mod_a.space = cfg.space_a;
  corpus.mod_b.features = load_feature_matrix(cfg.features_b_path);
  corpus.mod_b.labels = load_labels(cfg.labels_b_path);
  corpus.mod_b.space = cfg.space_b;
  for (Index i = 0; i < corpus.mod_a.size(); ++i) {
    corpus.mod_a.ids.push_back("a" + std::to_string(i));
  }
  for (Index i = 0; i < corpus.mod_b.size(); ++i) {
    corpus.mod_b.ids.push_back("b" + std::to_string(i));
  }
  corpus.pairs = load_pairs(cfg.pairs_path);
  return run_experiment(cfg, corpus);
}

void write_experiment_report(const ExperimentReport& report, const std::string& report_path,
                             const std::string& summary_path) {
  std::ofstream out(report_path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + report_path + " for writing");
  }
  out << "method,direction,train_size,seed,map\n";
  for (const auto& cell : report.cells) {
    out << report.method << "," << cell.direction << "," << cell.train_size << "," << cell.seed
        << "," << format_optional(cell.map) << "\n";
  }
  if (!out) {
    throw IoError("failed writing " + report_path);
  }
  std::ofstream sum(summary_path, std::ios::binary);
  if (!sum) {
    throw IoError("cannot open " + summary_path + " for writing");
  }
  sum << "method,direction,train_size,map_mean,map_std\n";
  for (const auto& row : report.summary) {
    sum << report.method << "," << row.direction << "," << row.train_size << ","
        << format_optional(row.map_mean) << "," << format_optional(row.map_std) << "\n";
  }
  if (!sum) {
    throw IoError("failed writing " + summary_path);
  }
}

}  // namespace ssm
