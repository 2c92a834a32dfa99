#include "ssm/refselect.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "ssm/io.hpp"
#include "ssm/structure.hpp"

namespace ssm {

namespace {

// Population variance.
double variance(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return acc / static_cast<double>(values.size());
}

// Distances among one modality's training members, indexed by position
// in the train_pairs list.
struct TrainDistances {
  FeatureMatrix d;  // n x n, symmetric, zero diagonal
  double full_score = 1.0;
  double pairwise_total = 1.0;
};

TrainDistances precompute(const ModalityDataset& data, const std::vector<IndexPair>& train_pairs,
                          bool side_a, double lambda) {
  const auto n = static_cast<Index>(train_pairs.size());
  TrainDistances t;
  t.d = FeatureMatrix::Zero(n, n);
  for (Index p = 0; p < n; ++p) {
    const Index op = side_a ? train_pairs[static_cast<std::size_t>(p)].first
                            : train_pairs[static_cast<std::size_t>(p)].second;
    for (Index q = p + 1; q < n; ++q) {
      const Index oq = side_a ? train_pairs[static_cast<std::size_t>(q)].first
                              : train_pairs[static_cast<std::size_t>(q)].second;
      const double dist = native_distance(data, op, oq);
      t.d(p, q) = dist;
      t.d(q, p) = dist;
    }
  }

  double pairwise = 0.0;
  for (Index p = 0; p < n; ++p) {
    for (Index q = p + 1; q < n; ++q) pairwise += t.d(p, q);
  }
  t.pairwise_total = pairwise > 0.0 ? pairwise : 1.0;

  // Full-set score: every training member as reference, variances taken
  // over its distances to the other members.
  double sigma_sum = 0.0;
  for (Index p = 0; p < n; ++p) {
    std::vector<double> dists;
    for (Index q = 0; q < n; ++q) {
      if (q != p) dists.push_back(t.d(p, q));
    }
    sigma_sum += variance(dists);
  }
  const double score = 2.0 * pairwise * std::pow(sigma_sum, lambda);
  t.full_score = score > 0.0 ? score : 1.0;
  return t;
}

// Eq-style score of a subset given precomputed distances. Positions not
// in the subset act as the non-reference objects.
double subset_score(const TrainDistances& t, const std::vector<Index>& subset, double lambda) {
  double pairwise = 0.0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      pairwise += t.d(subset[i], subset[j]);
    }
  }
  pairwise *= 2.0;  // ordered pairs

  std::vector<char> in_subset(static_cast<std::size_t>(t.d.rows()), 0);
  for (Index p : subset) in_subset[static_cast<std::size_t>(p)] = 1;
  double sigma_sum = 0.0;
  for (Index p : subset) {
    std::vector<double> dists;
    for (Index q = 0; q < t.d.rows(); ++q) {
      if (!in_subset[static_cast<std::size_t>(q)]) dists.push_back(t.d(p, q));
    }
    sigma_sum += variance(dists);
  }
  if (sigma_sum <= 0.0) return 0.0;
  return pairwise * std::pow(sigma_sum, lambda);
}

struct SelectionContext {
  TrainDistances a;
  TrainDistances b;
  double lambda;

  double score(const std::vector<Index>& subset) const {
    return subset_score(a, subset, lambda) / a.full_score +
           subset_score(b, subset, lambda) / b.full_score;
  }
};

SelectionContext make_context(const ModalityDataset& mod_a, const ModalityDataset& mod_b,
                              const std::vector<IndexPair>& train_pairs, double lambda) {
  if (train_pairs.empty()) throw InvalidArgument("no training pairs");
  if (lambda <= 0.0) throw InvalidArgument("lambda must be positive");
  for (const auto& [ia, ib] : train_pairs) {
    if (ia < 0 || ia >= mod_a.size() || ib < 0 || ib >= mod_b.size()) {
      throw InvalidArgument("training pair index out of range");
    }
  }
  return SelectionContext{precompute(mod_a, train_pairs, true, lambda),
                          precompute(mod_b, train_pairs, false, lambda), lambda};
}

ReferenceSet make_result(const std::vector<IndexPair>& train_pairs, std::vector<Index> positions,
                         double lambda, double objective_value) {
  std::sort(positions.begin(), positions.end());
  ReferenceSet refs;
  refs.lambda = lambda;
  refs.objective_value = objective_value;
  for (Index p : positions) refs.pairs.push_back(train_pairs[static_cast<std::size_t>(p)]);
  return refs;
}

}  // namespace

std::vector<Index> ReferenceSet::indices_a() const {
  std::vector<Index> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.first);
  return out;
}

std::vector<Index> ReferenceSet::indices_b() const {
  std::vector<Index> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back(p.second);
  return out;
}

double objective(const ModalityDataset& data, const std::vector<Index>& candidate_refs,
                 const std::vector<Index>& non_refs, double lambda, bool* degenerate) {
  if (degenerate) *degenerate = false;
  if (lambda <= 0.0) throw InvalidArgument("lambda must be positive");
  if (candidate_refs.size() < 2) throw InvalidArgument("need at least two candidate references");
  if (non_refs.size() < 2) throw InvalidArgument("need at least two non-reference objects");
  std::unordered_set<Index> ref_set;
  for (Index r : candidate_refs) {
    if (r < 0 || r >= data.size()) throw InvalidArgument("reference index out of range");
    if (!ref_set.insert(r).second) throw InvalidArgument("duplicate candidate reference");
  }
  std::unordered_set<Index> other_set;
  for (Index o : non_refs) {
    if (o < 0 || o >= data.size()) throw InvalidArgument("non-reference index out of range");
    if (ref_set.count(o)) throw InvalidArgument("non_refs must be disjoint from candidate_refs");
    if (!other_set.insert(o).second) throw InvalidArgument("duplicate non-reference index");
  }

  double pairwise = 0.0;
  for (std::size_t i = 0; i < candidate_refs.size(); ++i) {
    for (std::size_t j = i + 1; j < candidate_refs.size(); ++j) {
      pairwise += native_distance(data, candidate_refs[i], candidate_refs[j]);
    }
  }
  pairwise *= 2.0;

  double sigma_sum = 0.0;
  for (Index r : candidate_refs) {
    std::vector<double> dists;
    dists.reserve(non_refs.size());
    for (Index o : non_refs) dists.push_back(native_distance(data, r, o));
    sigma_sum += variance(dists);
  }
  if (sigma_sum <= 0.0) {
    if (degenerate) *degenerate = true;
    return 0.0;
  }
  return pairwise * std::pow(sigma_sum, lambda);
}

double combined_objective(const ModalityDataset& mod_a, const ModalityDataset& mod_b,
                          const std::vector<IndexPair>& train_pairs,
                          const std::vector<Index>& subset_positions, double lambda) {
  const auto ctx = make_context(mod_a, mod_b, train_pairs, lambda);
  for (Index p : subset_positions) {
    if (p < 0 || p >= static_cast<Index>(train_pairs.size())) {
      throw InvalidArgument("subset position out of range");
    }
  }
  return ctx.score(subset_positions);
}

ReferenceSet select_references_bruteforce(const ModalityDataset& mod_a,
                                          const ModalityDataset& mod_b,
                                          const std::vector<IndexPair>& train_pairs, Index k,
                                          double lambda) {
  const auto n = static_cast<Index>(train_pairs.size());
  if (n > 20) throw TooLarge("bruteforce selection guarded to 20 training pairs");
  if (k < 1 || k > n) throw InvalidArgument("k must be in [1, |train_pairs|]");
  const auto ctx = make_context(mod_a, mod_b, train_pairs, lambda);

  // Lexicographic combination enumeration; strict improvement keeps the
  // first (smallest) subset on ties.
  std::vector<Index> subset(static_cast<std::size_t>(k));
  std::iota(subset.begin(), subset.end(), Index{0});
  std::vector<Index> best = subset;
  double best_score = ctx.score(subset);
  while (true) {
    // advance to the next combination
    Index i = k - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++subset[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j) {
      subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
    const double score = ctx.score(subset);
    if (score > best_score) {
      best_score = score;
      best = subset;
    }
  }
  return make_result(train_pairs, best, lambda, best_score);
}

ReferenceSet select_references_greedy(const ModalityDataset& mod_a, const ModalityDataset& mod_b,
                                      const std::vector<IndexPair>& train_pairs, Index k,
                                      double lambda) {
  const auto n = static_cast<Index>(train_pairs.size());
  if (k < 2 || k > n) throw InvalidArgument("k must be in [2, |train_pairs|]");
  const auto ctx = make_context(mod_a, mod_b, train_pairs, lambda);

  std::vector<Index> subset;
  if (k == n) {
    subset.resize(static_cast<std::size_t>(n));
    std::iota(subset.begin(), subset.end(), Index{0});
    return make_result(train_pairs, subset, lambda, ctx.score(subset));
  }

  // Seed: the two pairs with the largest scale-balanced distance sum.
  double best_seed = -1.0;
  Index seed_p = 0, seed_q = 1;
  for (Index p = 0; p < n; ++p) {
    for (Index q = p + 1; q < n; ++q) {
      const double s =
          ctx.a.d(p, q) / ctx.a.pairwise_total + ctx.b.d(p, q) / ctx.b.pairwise_total;
      if (s > best_seed) {
        best_seed = s;
        seed_p = p;
        seed_q = q;
      }
    }
  }
  subset = {seed_p, seed_q};

  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  chosen[static_cast<std::size_t>(seed_p)] = 1;
  chosen[static_cast<std::size_t>(seed_q)] = 1;

  while (static_cast<Index>(subset.size()) < k) {
    double best_score = -1.0;
    Index best_t = -1;
    for (Index t = 0; t < n; ++t) {
      if (chosen[static_cast<std::size_t>(t)]) continue;
      subset.push_back(t);
      const double s = ctx.score(subset);
      subset.pop_back();
      if (s > best_score) {
        best_score = s;
        best_t = t;
      }
    }
    subset.push_back(best_t);
    chosen[static_cast<std::size_t>(best_t)] = 1;
  }

  // Local search: best improving single swap per sweep.
  double current = ctx.score(subset);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double best_score = current;
    std::size_t best_slot = 0;
    Index best_t = -1;
    for (std::size_t slot = 0; slot < subset.size(); ++slot) {
      const Index removed = subset[slot];
      for (Index t = 0; t < n; ++t) {
        if (chosen[static_cast<std::size_t>(t)]) continue;
        subset[slot] = t;
        const double s = ctx.score(subset);
        if (s > best_score) {
          best_score = s;
          best_slot = slot;
          best_t = t;
        }
      }
      subset[slot] = removed;
    }
    if (best_t < 0) break;
    chosen[static_cast<std::size_t>(subset[best_slot])] = 0;
    chosen[static_cast<std::size_t>(best_t)] = 1;
    subset[best_slot] = best_t;
    current = best_score;
  }

  return make_result(train_pairs, subset, lambda, current);
}

void save_reference_set(const std::string& path, const ReferenceSet& refs) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot create file: " + path);
  out << "# k=" << refs.k() << " lambda=" << format_real(refs.lambda)
      << " objective=" << format_real(refs.objective_value) << '\n';
  for (const auto& [a, b] : refs.pairs) out << a << ',' << b << '\n';
  if (!out) throw IoError("write failed: " + path);
}

ReferenceSet load_reference_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::string header;
  if (!std::getline(in, header)) throw EmptyInput("empty reference set file: " + path);
  ReferenceSet refs;
  {
    std::istringstream hs(header);
    std::string tok;
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq);
      const std::string val = tok.substr(eq + 1);
      if (key == "lambda") refs.lambda = detail::parse_real(val, 1);
      if (key == "objective") refs.objective_value = detail::parse_real(val, 1);
    }
  }
  std::string line;
  long line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = detail::split_fields(line, ',');
    if (fields.size() != 2) throw ParseError("expected 'indexA,indexB'", line_number);
    refs.pairs.emplace_back(static_cast<Index>(detail::parse_real(fields[0], line_number)),
                            static_cast<Index>(detail::parse_real(fields[1], line_number)));
  }
  if (refs.pairs.empty()) throw EmptyInput("no reference pairs in " + path);
  return refs;
}

}  // namespace ssm
