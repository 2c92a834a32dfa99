#pragma once

#include <string>
#include <vector>

#include "ssm/structure.hpp"
#include "ssm/types.hpp"

namespace ssm {

enum class Direction { AtoB, BtoA };

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

// Per-dimension affine map between two structure spaces: column j of
// the source is sent to scale[j] * column + bias[j].
struct CalibrationModel {
  Vector scale;
  Vector bias;
  double gamma = 0.0;  // ridge coefficient used during fitting
  Direction direction = Direction::AtoB;
  std::vector<Index> degenerate_dims;  // constant source columns hit with gamma = 0

  Index k() const { return scale.size(); }
};

// Full ascending ranking of the targets for one query.
struct RankedMatches {
  Index query_index = 0;
  std::vector<std::pair<Index, double>> ranked;  // (target index, distance)
  bool zero_vector_flagged = false;  // cosine against a zero row was clamped to 2
};

// Independent per-dimension ridge regressions from the source reference
// rows onto the destination reference rows. The slope is regularized by
// gamma, the bias never is. A constant source column with gamma = 0
// yields slope 0 and the destination column mean, and is flagged.
CalibrationModel fit_calibration(const FeatureMatrix& src_refs, const FeatureMatrix& dst_refs,
                                 double gamma, Direction direction = Direction::AtoB);

// Applies the affine map columnwise; the result is marked Calibrated.
StructureMatrix apply_calibration(const CalibrationModel& model, const StructureMatrix& s);

// Calibrates every query row into the target space and ranks all
// targets by structure distance, ascending, ties by target index. With
// the cosine metric a zero row on either side scores the maximum
// distance 2 and flags the query.
std::vector<RankedMatches> match(const StructureMatrix& query_rows,
                                 const StructureMatrix& target_rows,
                                 const CalibrationModel& model, StructureMetric metric);

// Text file: header with k, gamma and direction, then k "scale,bias" lines.
void save_calibration(const std::string& path, const CalibrationModel& model);
CalibrationModel load_calibration(const std::string& path);

}  // namespace ssm
