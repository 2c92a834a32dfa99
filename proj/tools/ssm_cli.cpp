#include <cstddef>
#include <fstream>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssm/calibrate.hpp"
#include "ssm/correlate.hpp"
#include "ssm/error.hpp"
#include "ssm/evaluate.hpp"
#include "ssm/io.hpp"
#include "ssm/refselect.hpp"
#include "ssm/structure.hpp"
#include "ssm/text_embed.hpp"
#include "ssm/types.hpp"

namespace {

// Post-parse validation failures that should exit like usage errors.
struct UsageFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

ssm::SpaceKind space_from_string(const std::string& s) {
  return s == "hamming" ? ssm::SpaceKind::Hamming : ssm::SpaceKind::Euclidean;
}

ssm::StructureKind structure_kind_from_string(const std::string& s) {
  return s == "hamming" ? ssm::StructureKind::Hamming : ssm::StructureKind::Euclidean;
}

ssm::StructureMetric metric_from_string(const std::string& s) {
  return s == "euclidean" ? ssm::StructureMetric::EuclideanDist
                          : ssm::StructureMetric::CosineDist;
}

std::vector<ssm::Index> to_indices(const std::vector<long long>& v) {
  return std::vector<ssm::Index>(v.begin(), v.end());
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) {
    return "";
  }
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

// Flat key=value lines; '#' or ';' comments and blank lines are skipped.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw UsageFailure("config: cannot open " + path);
  }
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    const auto trimmed = trim(line);
    if (trimmed.empty() || trimmed[0] == '#' || trimmed[0] == ';') {
      continue;
    }
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos) {
      throw UsageFailure("config: missing '=' on line " + std::to_string(line_no) + " of " +
                         path);
    }
    entries.emplace_back(trim(trimmed.substr(0, eq)), trim(trimmed.substr(eq + 1)));
  }
  return entries;
}

long long config_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long parsed = std::stoll(value, &used);
    if (used != value.size()) {
      throw std::invalid_argument(value);
    }
    return parsed;
  } catch (const std::exception&) {
    throw UsageFailure("config: " + key + " expects an integer, got '" + value + "'");
  }
}

double config_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double parsed = std::stod(value, &used);
    if (used != value.size()) {
      throw std::invalid_argument(value);
    }
    return parsed;
  } catch (const std::exception&) {
    throw UsageFailure("config: " + key + " expects a number, got '" + value + "'");
  }
}

std::string config_choice(const std::string& key, const std::string& value,
                          const std::vector<std::string>& allowed) {
  for (const auto& a : allowed) {
    if (value == a) {
      return value;
    }
  }
  throw UsageFailure("config: " + key + " must be one of " + [&allowed] {
    std::string joined;
    for (const auto& a : allowed) {
      joined += joined.empty() ? a : "|" + a;
    }
    return joined;
  }());
}

std::vector<std::vector<std::string>> load_sentences(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ssm::IoError("cannot open " + path);
  }
  std::vector<std::vector<std::string>> sentences;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    sentences.push_back(ssm::tokenize(line));
  }
  if (sentences.empty()) {
    throw ssm::EmptyInput("no sentences in " + path);
  }
  return sentences;
}

void add_embed_text(CLI::App& app) {
  struct Opts {
    std::string sentences, vectors, freqs, out;
    double weight_a = 1e-3;
    bool keep_pc = false;
  };
  auto opts = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand(
      "embed-text", "Frequency-weighted sentence embeddings from pretrained word vectors");
  cmd->add_option("--sentences", opts->sentences, "Sentence file, one sentence per line")
      ->required();
  cmd->add_option("--vectors", opts->vectors, "Word vectors, 'word v1 .. vD' per line")
      ->required();
  cmd->add_option("--freqs", opts->freqs, "Word frequencies, 'word count' per line")->required();
  cmd->add_option("--out", opts->out, "Output feature csv")->required();
  cmd->add_option("--weight-a", opts->weight_a, "Smoothing constant of the word weight")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_flag("--keep-pc", opts->keep_pc, "Skip removal of the first principal direction");
  cmd->callback([opts] {
    const auto sentences = load_sentences(opts->sentences);
    const auto vectors = ssm::load_word_vectors(opts->vectors);
    const auto freqs = ssm::load_word_frequencies(opts->freqs);
    ssm::SifConfig cfg;
    cfg.a = opts->weight_a;
    cfg.remove_pc = !opts->keep_pc;
    const auto embedding = ssm::embed_sentences(sentences, vectors, freqs, cfg);
    ssm::write_feature_matrix(opts->out, embedding.matrix);
    std::cout << "rows=" << embedding.matrix.rows() << " cols=" << embedding.matrix.cols();
    if (!embedding.empty_sentences.empty()) {
      std::cout << " empty_rows=" << embedding.empty_sentences.size();
    }
    std::cout << "\n";
  });
}

void add_build_structure(CLI::App& app) {
  struct Opts {
    std::string features, space = "euclidean", out;
    std::vector<long long> refs;
  };
  auto opts = std::make_shared<Opts>();
  auto* cmd =
      app.add_subcommand("build-structure", "Distances from every object to the reference rows");
  cmd->add_option("--features", opts->features, "Feature csv, one object per row")->required();
  cmd->add_option("--space", opts->space, "Native space: euclidean|hamming")
      ->check(CLI::IsMember({"euclidean", "hamming"}))
      ->capture_default_str();
  cmd->add_option("--refs", opts->refs, "Reference row indices (comma separated)")
      ->required()
      ->delimiter(',');
  cmd->add_option("--out", opts->out, "Output structure csv")->required();
  cmd->callback([opts] {
    ssm::ModalityDataset data;
    data.features = ssm::load_feature_matrix(opts->features);
    data.space = space_from_string(opts->space);
    const auto s = ssm::build_structure(data, to_indices(opts->refs));
    ssm::save_structure(opts->out, s);
    std::cout << "rows=" << s.rows() << " refs=" << s.refs()
              << " ref_condition=" << ssm::format_real(s.ref_condition) << "\n";
  });
}

void add_select_refs(CLI::App& app) {
  struct Opts {
    std::string features_a, features_b, pairs, out;
    std::string space_a = "euclidean", space_b = "euclidean", algorithm = "greedy";
    long long k = 0;
    double lambda = 1.0;
  };
  auto opts = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand(
      "select-refs", "Pick matched reference pairs that spread wide and score consistently");
  cmd->add_option("--features-a", opts->features_a, "First modality feature csv")->required();
  cmd->add_option("--features-b", opts->features_b, "Second modality feature csv")->required();
  cmd->add_option("--space-a", opts->space_a, "euclidean|hamming")
      ->check(CLI::IsMember({"euclidean", "hamming"}))
      ->capture_default_str();
  cmd->add_option("--space-b", opts->space_b, "euclidean|hamming")
      ->check(CLI::IsMember({"euclidean", "hamming"}))
      ->capture_default_str();
  cmd->add_option("--pairs", opts->pairs, "Matched pair csv, 'indexA,indexB' per line")
      ->required();
  cmd->add_option("--k", opts->k, "Number of reference pairs")
      ->required()
      ->check(CLI::Range(2LL, 1000000LL));
  cmd->add_option("--lambda", opts->lambda, "Variance exponent of the selection score")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--algorithm", opts->algorithm, "greedy|brute")
      ->check(CLI::IsMember({"greedy", "brute"}))
      ->capture_default_str();
  cmd->add_option("--out", opts->out, "Output reference-set file")->required();
  cmd->callback([opts] {
    ssm::ModalityDataset mod_a;
    mod_a.features = ssm::load_feature_matrix(opts->features_a);
    mod_a.space = space_from_string(opts->space_a);
    ssm::ModalityDataset mod_b;
    mod_b.features = ssm::load_feature_matrix(opts->features_b);
    mod_b.space = space_from_string(opts->space_b);
    const auto pairs = ssm::load_pairs(opts->pairs);
    const auto refs =
        opts->algorithm == "brute"
            ? ssm::select_references_bruteforce(mod_a, mod_b, pairs, opts->k, opts->lambda)
            : ssm::select_references_greedy(mod_a, mod_b, pairs, opts->k, opts->lambda);
    ssm::save_reference_set(opts->out, refs);
    std::cout << "k=" << refs.k() << " objective=" << ssm::format_real(refs.objective_value)
              << "\n";
  });
}

void add_calibrate(CLI::App& app) {
  struct Opts {
    std::string src, dst, out;
    std::string src_space = "euclidean", dst_space = "euclidean", direction = "a2b";
    double gamma = 0.0;
  };
  auto opts = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand(
      "calibrate", "Fit the per-dimension affine map between two matched structure spaces");
  cmd->add_option("--src", opts->src, "Source structure csv (training rows)")->required();
  cmd->add_option("--dst", opts->dst, "Destination structure csv (matched rows)")->required();
  cmd->add_option("--src-space", opts->src_space, "euclidean|hamming")
      ->check(CLI::IsMember({"euclidean", "hamming"}))
      ->capture_default_str();
  cmd->add_option("--dst-space", opts->dst_space, "euclidean|hamming")
      ->check(CLI::IsMember({"euclidean", "hamming"}))
      ->capture_default_str();
  cmd->add_option("--gamma", opts->gamma, "Ridge strength on the scale term")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--direction", opts->direction, "a2b|b2a")
      ->check(CLI::IsMember({"a2b", "b2a"}))
      ->capture_default_str();
  cmd->add_option("--out", opts->out, "Output model file")->required();
  cmd->callback([opts] {
    const auto src =
        ssm::load_structure(opts->src, structure_kind_from_string(opts->src_space));
    const auto dst =
        ssm::load_structure(opts->dst, structure_kind_from_string(opts->dst_space));
    const auto model = ssm::fit_calibration(src.values, dst.values, opts->gamma,
                                            ssm::direction_from_string(opts->direction));
    ssm::save_calibration(opts->out, model);
    std::cout << "k=" << model.k() << " degenerate_dims=" << model.degenerate_dims.size()
              << "\n";
  });
}

void add_match(CLI::App& app) {
  struct Opts {
    std::string queries, targets, model, out;
    std::string metric = "cosine";
  };
  auto opts = std::make_shared<Opts>();
  auto* cmd =
      app.add_subcommand("match", "Rank calibrated queries against a target structure space");
  cmd->add_option("--queries", opts->queries, "Query structure csv")->required();
  cmd->add_option("--targets", opts->targets, "Target structure csv")->required();
  cmd->add_option("--model", opts->model, "Calibration model file")->required();
  cmd->add_option("--metric", opts->metric, "cosine|euclidean")
      ->check(CLI::IsMember({"cosine", "euclidean"}))
      ->capture_default_str();
  cmd->add_option("--out", opts->out, "Output ranking csv")->required();
  cmd->callback([opts] {
    const auto queries = ssm::load_structure(opts->queries);
    const auto targets = ssm::load_structure(opts->targets);
    const auto model = ssm::load_calibration(opts->model);
    const auto results = ssm::match(queries, targets, model, metric_from_string(opts->metric));
    std::ofstream out(opts->out, std::ios::binary);
    if (!out) {
      throw ssm::IoError("cannot open " + opts->out + " for writing");
    }
    out << "query,rank,target,distance\n";
    std::size_t flagged = 0;
    for (const auto& result : results) {
      if (result.zero_vector_flagged) {
        ++flagged;
      }
      for (std::size_t rank = 0; rank < result.ranked.size(); ++rank) {
        out << result.query_index << "," << rank + 1 << "," << result.ranked[rank].first << ","
            << ssm::format_real(result.ranked[rank].second) << "\n";
      }
    }
    if (!out) {
      throw ssm::IoError("failed writing " + opts->out);
    }
    std::cout << "queries=" << results.size() << " targets=" << targets.rows();
    if (flagged > 0) {
      std::cout << " zero_rows=" << flagged;
    }
    std::cout << "\n";
  });
}

void add_run(CLI::App& app) {
  struct Opts {
    std::string features_a, features_b, labels_a, labels_b, pairs, out_prefix;
    std::string space_a = "euclidean", space_b = "euclidean";
    std::string metric = "cosine", method = "ssm";
    std::vector<long long> train_sizes = {6, 10, 14, 18, 22, 26, 30, 34, 38, 42, 46, 50};
    std::vector<unsigned long long> seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    double lambda = 1.0;
    double gamma = 1e-6;
    long long ref_count = 0;
  };
  auto opts = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand("run", "Train-size sweep: split, select, calibrate, rank, score");
  auto config_path = std::make_shared<std::string>();
  cmd->add_option("--config", *config_path,
                  "Flat key=value config file (keys match the long flag names); explicit flags "
                  "win");
  cmd->add_option("--features-a", opts->features_a, "First modality feature csv");
  cmd->add_option("--features-b", opts->features_b, "Second modality feature csv");
  cmd->add_option("--labels-a", opts->labels_a, "First modality labels, one per line");
  cmd->add_option("--labels-b", opts->labels_b, "Second modality labels, one per line");
  cmd->add_option("--pairs", opts->pairs, "Matched pair csv");
  cmd->add_option("--space-a", opts->space_a, "euclidean|hamming")
      ->check(CLI::IsMember({"euclidean", "hamming"}))
      ->capture_default_str();
  cmd->add_option("--space-b", opts->space_b, "euclidean|hamming")
      ->check(CLI::IsMember({"euclidean", "hamming"}))
      ->capture_default_str();
  cmd->add_option("--train-sizes", opts->train_sizes, "Training pair counts to sweep")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--seeds", opts->seeds, "Split seeds")->delimiter(',')->capture_default_str();
  cmd->add_option("--lambda", opts->lambda, "Variance exponent of reference selection")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--gamma", opts->gamma, "Calibration ridge strength")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--ref-count", opts->ref_count, "Reference pairs per split; 0 keeps all")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  cmd->add_option("--metric", opts->metric, "cosine|euclidean")
      ->check(CLI::IsMember({"cosine", "euclidean"}))
      ->capture_default_str();
  cmd->add_option("--method", opts->method, "Method tag written to the reports")
      ->capture_default_str();
  cmd->add_option("--out-prefix", opts->out_prefix, "Report path prefix");
  cmd->callback([opts, config_path, cmd] {
    if (!config_path->empty()) {
      for (const auto& [key, value] : read_config_file(*config_path)) {
        const CLI::Option* flag = cmd->get_option_no_throw("--" + key);
        if (flag != nullptr && flag->count() > 0) {
          continue;
        }
        if (key == "features-a") {
          opts->features_a = value;
        } else if (key == "features-b") {
          opts->features_b = value;
        } else if (key == "labels-a") {
          opts->labels_a = value;
        } else if (key == "labels-b") {
          opts->labels_b = value;
        } else if (key == "pairs") {
          opts->pairs = value;
        } else if (key == "space-a") {
          opts->space_a = config_choice(key, value, {"euclidean", "hamming"});
        } else if (key == "space-b") {
          opts->space_b = config_choice(key, value, {"euclidean", "hamming"});
        } else if (key == "train-sizes") {
          opts->train_sizes.clear();
          for (const auto& field : ssm::detail::split_fields(value, ',')) {
            opts->train_sizes.push_back(config_int(key, trim(field)));
          }
        } else if (key == "seeds") {
          opts->seeds.clear();
          for (const auto& field : ssm::detail::split_fields(value, ',')) {
            const long long seed = config_int(key, trim(field));
            if (seed < 0) {
              throw UsageFailure("config: seeds must be nonnegative");
            }
            opts->seeds.push_back(static_cast<unsigned long long>(seed));
          }
        } else if (key == "lambda") {
          opts->lambda = config_real(key, value);
          if (!(opts->lambda > 0.0)) {
            throw UsageFailure("config: lambda must be positive");
          }
        } else if (key == "gamma") {
          opts->gamma = config_real(key, value);
          if (opts->gamma < 0.0) {
            throw UsageFailure("config: gamma must be nonnegative");
          }
        } else if (key == "ref-count") {
          opts->ref_count = config_int(key, value);
          if (opts->ref_count < 0) {
            throw UsageFailure("config: ref-count must be nonnegative");
          }
        } else if (key == "metric") {
          opts->metric = config_choice(key, value, {"cosine", "euclidean"});
        } else if (key == "method") {
          opts->method = value;
        } else if (key == "out-prefix") {
          opts->out_prefix = value;
        } else {
          throw UsageFailure("config: unknown key '" + key + "'");
        }
      }
    }
    for (const auto& [name, value] :
         {std::pair<const char*, const std::string*>{"features-a", &opts->features_a},
          {"features-b", &opts->features_b},
          {"labels-a", &opts->labels_a},
          {"labels-b", &opts->labels_b},
          {"pairs", &opts->pairs},
          {"out-prefix", &opts->out_prefix}}) {
      if (value->empty()) {
        throw UsageFailure(std::string(name) + " is required (flag or config)");
      }
    }
    ssm::ExperimentConfig cfg;
    cfg.features_a_path = opts->features_a;
    cfg.features_b_path = opts->features_b;
    cfg.labels_a_path = opts->labels_a;
    cfg.labels_b_path = opts->labels_b;
    cfg.pairs_path = opts->pairs;
    cfg.space_a = space_from_string(opts->space_a);
    cfg.space_b = space_from_string(opts->space_b);
    cfg.train_sizes = to_indices(opts->train_sizes);
    cfg.seeds = opts->seeds;
    cfg.lambda = opts->lambda;
    cfg.gamma = opts->gamma;
    cfg.ref_count = static_cast<ssm::Index>(opts->ref_count);
    cfg.metric = metric_from_string(opts->metric);
    cfg.method = opts->method;
    cfg.output_prefix = opts->out_prefix;
    const auto pairs = ssm::load_pairs(cfg.pairs_path);
    for (const auto t : cfg.train_sizes) {
      if (t < 2) {
        throw UsageFailure("train-sizes: entries must be at least 2");
      }
      if (t > static_cast<ssm::Index>(pairs.size())) {
        throw UsageFailure("train-sizes: " + std::to_string(t) + " exceeds the " +
                           std::to_string(pairs.size()) + " pairs in " + cfg.pairs_path);
      }
    }
    if (cfg.seeds.empty()) {
      throw UsageFailure("seeds: list must be nonempty");
    }
    const auto report = ssm::run_experiment(cfg);
    std::cout << "method,direction,train_size,map_mean,map_std\n";
    for (const auto& row : report.summary) {
      std::cout << report.method << "," << row.direction << "," << row.train_size << ","
                << (row.map_mean ? ssm::format_real(*row.map_mean) : "nan") << ","
                << (row.map_std ? ssm::format_real(*row.map_std) : "nan") << "\n";
    }
    std::cout << "report=" << cfg.output_prefix << "_report.csv summary=" << cfg.output_prefix
              << "_summary.csv\n";
  });
}

void add_verify_correlation(CLI::App& app) {
  struct Opts {
    long long n = 200, d = 20, e = 20, trials = 100;
    unsigned long long seed = 1;
    std::string mapping = "linear";
    std::string out = "correlation_report.csv";
  };
  auto opts = std::make_shared<Opts>();
  auto* cmd = app.add_subcommand(
      "verify-correlation",
      "Sample random cross-modal maps and measure similarity-structure correlation");
  cmd->add_option("--n", opts->n, "Objects per trial")
      ->check(CLI::Range(10LL, 100000LL))
      ->capture_default_str();
  cmd->add_option("--d", opts->d, "Source dimension")
      ->check(CLI::Range(1LL, 100000LL))
      ->capture_default_str();
  cmd->add_option("--e", opts->e, "Mapped dimension")
      ->check(CLI::Range(1LL, 100000LL))
      ->capture_default_str();
  cmd->add_option("--trials", opts->trials, "Number of trials")
      ->check(CLI::Range(1LL, 1000000LL))
      ->capture_default_str();
  cmd->add_option("--mapping", opts->mapping, "linear|sigmoid")
      ->check(CLI::IsMember({"linear", "sigmoid"}))
      ->capture_default_str();
  cmd->add_option("--seed", opts->seed, "Base seed; trial t uses seed+t")->capture_default_str();
  cmd->add_option("--out", opts->out, "Report csv path")->capture_default_str();
  cmd->callback([opts] {
    ssm::MonteCarloParams params;
    params.n = opts->n;
    params.d = opts->d;
    params.e = opts->e;
    params.trials = opts->trials;
    params.mapping = ssm::mapping_from_string(opts->mapping);
    params.seed = opts->seed;
    const auto report = ssm::monte_carlo_verify(params);
    ssm::write_correlation_report(report, opts->out);
    std::cout << "fraction_positive=" << ssm::format_real(report.fraction_positive);
    if (report.analytic_rho) {
      std::cout << ", analytic_rho=" << ssm::format_real(*report.analytic_rho);
    }
    std::cout << "\n";
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cross-modal coreference by space-structure matching"};
  app.require_subcommand(1);
  add_embed_text(app);
  add_build_structure(app);
  add_select_refs(app);
  add_calibrate(app);
  add_match(app);
  add_run(app);
  add_verify_correlation(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const UsageFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ssm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
