#include "ssm/structure.hpp"

#include <Eigen/SVD>

#include <fstream>
#include <limits>
#include <unordered_set>

#include "ssm/io.hpp"

namespace ssm {

double native_distance(const ModalityDataset& data, Index i, Index j) {
  if (data.space == SpaceKind::Hamming) {
    return static_cast<double>(hamming_distance(data.features.row(i), data.features.row(j)));
  }
  return euclidean_distance(data.features.row(i), data.features.row(j));
}

double reference_condition(const FeatureMatrix& features, const std::vector<Index>& ref_indices) {
  const auto k = static_cast<Index>(ref_indices.size());
  if (k < 2) return 1.0;
  FeatureMatrix refs(k, features.cols());
  for (Index j = 0; j < k; ++j) refs.row(j) = features.row(ref_indices[static_cast<std::size_t>(j)]);
  refs.rowwise() -= refs.colwise().mean();
  const Eigen::JacobiSVD<FeatureMatrix> svd(refs);
  // Affine rank of k points is at most min(k-1, d); compare the leading
  // singular value against the last one that should be nonzero.
  const Index r = std::min<Index>(k - 1, features.cols());
  const auto& sv = svd.singularValues();
  const double largest = sv(0);
  const double smallest = sv(r - 1);
  if (smallest <= 0.0) return std::numeric_limits<double>::infinity();
  return largest / smallest;
}

StructureMatrix build_structure(const ModalityDataset& data,
                                const std::vector<Index>& ref_indices) {
  if (ref_indices.empty()) throw InvalidArgument("need at least one reference index");
  std::unordered_set<Index> seen;
  for (Index r : ref_indices) {
    if (r < 0 || r >= data.size()) {
      throw InvalidArgument("reference index out of range: " + std::to_string(r));
    }
    if (!seen.insert(r).second) {
      throw InvalidArgument("duplicate reference index: " + std::to_string(r));
    }
  }

  StructureMatrix s;
  const auto k = static_cast<Index>(ref_indices.size());
  s.values.resize(data.size(), k);
  for (Index j = 0; j < k; ++j) {
    const Index ref = ref_indices[static_cast<std::size_t>(j)];
    for (Index i = 0; i < data.size(); ++i) {
      s.values(i, j) = native_distance(data, i, ref);
    }
    s.ref_ids.push_back(data.ids.empty() ? std::to_string(ref)
                                         : data.ids[static_cast<std::size_t>(ref)]);
  }
  s.kind = data.space == SpaceKind::Hamming ? StructureKind::Hamming : StructureKind::Euclidean;
  s.ref_condition = reference_condition(data.features, ref_indices);
  return s;
}

double structure_distance(const Eigen::Ref<const Vector>& r_i, const Eigen::Ref<const Vector>& r_j,
                          StructureMetric metric) {
  if (r_i.size() != r_j.size()) {
    throw DimensionMismatch("structure_distance: " + std::to_string(r_i.size()) + " vs " +
                            std::to_string(r_j.size()));
  }
  if (metric == StructureMetric::EuclideanDist) {
    return (r_i - r_j).norm();
  }
  const double ni = r_i.norm();
  const double nj = r_j.norm();
  if (ni == 0.0 || nj == 0.0) throw ZeroVector("cosine distance against a zero row");
  return 1.0 - r_i.dot(r_j) / (ni * nj);
}

void save_structure(const std::string& path, const StructureMatrix& s) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot create file: " + path);
  out << "# ref_ids:";
  for (std::size_t j = 0; j < s.ref_ids.size(); ++j) {
    out << (j == 0 ? ' ' : ',') << s.ref_ids[j];
  }
  out << '\n';
  for (Index i = 0; i < s.values.rows(); ++i) {
    for (Index j = 0; j < s.values.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_real(s.values(i, j));
    }
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

StructureMatrix load_structure(const std::string& path, StructureKind kind) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::string header;
  if (!std::getline(in, header)) throw EmptyInput("empty structure file: " + path);
  StructureMatrix s;
  s.kind = kind;
  const std::string tag = "# ref_ids:";
  if (header.rfind(tag, 0) != 0) throw ParseError("missing '# ref_ids:' header", 1);
  std::string ids = header.substr(tag.size());
  if (!ids.empty() && ids.front() == ' ') ids.erase(ids.begin());
  if (!ids.empty() && ids.back() == '\r') ids.pop_back();
  for (const auto& id : detail::split_fields(ids, ',')) {
    if (!id.empty()) s.ref_ids.push_back(id);
  }

  std::vector<std::vector<double>> rows;
  std::string line;
  long line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = detail::split_fields(line, ',');
    std::vector<double> row;
    for (const auto& f : fields) row.push_back(detail::parse_real(f, line_number));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("ragged structure row", line_number);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw EmptyInput("no structure rows in " + path);
  if (rows.front().size() != s.ref_ids.size()) {
    throw ParseError("header names " + std::to_string(s.ref_ids.size()) + " refs but rows have " +
                     std::to_string(rows.front().size()) + " columns");
  }
  s.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < s.values.rows(); ++i) {
    for (Index j = 0; j < s.values.cols(); ++j) {
      s.values(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return s;
}

}  // namespace ssm
