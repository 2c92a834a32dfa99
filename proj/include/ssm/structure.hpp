#pragma once

#include <Eigen/Core>

#include <cmath>
#include <string>
#include <vector>

#include "ssm/types.hpp"

namespace ssm {

// Geometry of a structure matrix: the native space its entries were
// measured in, or Calibrated once an affine map has been applied.
enum class StructureKind { Euclidean, Hamming, Calibrated };

// n x k matrix of distances from each object to each reference point.
// Column order follows the reference set.
struct StructureMatrix {
  FeatureMatrix values;
  StructureKind kind = StructureKind::Euclidean;
  std::vector<std::string> ref_ids;
  // Condition number of the centered reference-point matrix; large
  // values signal near-colinear references (reported, never rejected).
  double ref_condition = 1.0;

  Index rows() const { return values.rows(); }
  Index refs() const { return values.cols(); }
  bool near_colinear() const { return !(ref_condition < 1e8); }
};

// Distance metric used between structure rows.
enum class StructureMetric { EuclideanDist, CosineDist };

template <typename DerivedA, typename DerivedB>
double euclidean_distance(const Eigen::MatrixBase<DerivedA>& x,
                          const Eigen::MatrixBase<DerivedB>& o) {
  if (x.size() != o.size()) {
    throw DimensionMismatch("euclidean_distance: " + std::to_string(x.size()) + " vs " +
                            std::to_string(o.size()));
  }
  return std::sqrt((x.derived().template cast<double>() - o.derived().template cast<double>())
                       .squaredNorm());
}

template <typename DerivedA, typename DerivedB>
Index hamming_distance(const Eigen::MatrixBase<DerivedA>& y,
                       const Eigen::MatrixBase<DerivedB>& o) {
  if (y.size() != o.size()) {
    throw DimensionMismatch("hamming_distance: " + std::to_string(y.size()) + " vs " +
                            std::to_string(o.size()));
  }
  Index count = 0;
  for (Index l = 0; l < y.size(); ++l) {
    const double a = static_cast<double>(y.derived()(l));
    const double b = static_cast<double>(o.derived()(l));
    if ((a != 0.0 && a != 1.0) || (b != 0.0 && b != 1.0)) {
      throw NonBinaryInput("hamming_distance: entry outside {0,1}");
    }
    if (a != b) ++count;
  }
  return count;
}

// Distance between two objects in their native space.
double native_distance(const ModalityDataset& data, Index i, Index j);

// Re-represents every object by its distances to the chosen reference
// rows. The row of a reference point holds 0 in its own column.
StructureMatrix build_structure(const ModalityDataset& data, const std::vector<Index>& ref_indices);

// Distance between two structure rows.
double structure_distance(const Eigen::Ref<const Vector>& r_i, const Eigen::Ref<const Vector>& r_j,
                          StructureMetric metric);

// Condition number of the centered reference geometry (see
// StructureMatrix::ref_condition).
double reference_condition(const FeatureMatrix& features, const std::vector<Index>& ref_indices);

// Same csv layout as a feature matrix, with a one-line header naming
// the reference ids.
void save_structure(const std::string& path, const StructureMatrix& s);
StructureMatrix load_structure(const std::string& path,
                               StructureKind kind = StructureKind::Euclidean);

}  // namespace ssm
