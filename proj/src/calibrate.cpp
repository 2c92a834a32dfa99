#include "ssm/calibrate.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "ssm/io.hpp"

namespace ssm {

std::string to_string(Direction d) { return d == Direction::AtoB ? "a2b" : "b2a"; }

Direction direction_from_string(const std::string& s) {
  if (s == "a2b") return Direction::AtoB;
  if (s == "b2a") return Direction::BtoA;
  throw InvalidArgument("unknown direction: " + s + " (expected a2b or b2a)");
}

CalibrationModel fit_calibration(const FeatureMatrix& src_refs, const FeatureMatrix& dst_refs,
                                 double gamma, Direction direction) {
  if (src_refs.rows() != dst_refs.rows() || src_refs.cols() != dst_refs.cols()) {
    throw DimensionMismatch("calibration source and destination must share shape");
  }
  if (src_refs.rows() < 2) throw InvalidArgument("need at least two reference rows");
  if (gamma < 0.0) throw InvalidArgument("gamma must be nonnegative");

  const Index k = src_refs.cols();
  CalibrationModel model;
  model.gamma = gamma;
  model.direction = direction;
  model.scale.resize(k);
  model.bias.resize(k);
  for (Index j = 0; j < k; ++j) {
    const double x_mean = src_refs.col(j).mean();
    const double y_mean = dst_refs.col(j).mean();
    const Vector xc = src_refs.col(j).array() - x_mean;
    const Vector yc = dst_refs.col(j).array() - y_mean;
    const double sxx = xc.squaredNorm();
    const double sxy = xc.dot(yc);
    if (sxx == 0.0 && gamma == 0.0) {
      model.scale(j) = 0.0;
      model.bias(j) = y_mean;
      model.degenerate_dims.push_back(j);
      continue;
    }
    model.scale(j) = sxy / (sxx + gamma);
    model.bias(j) = y_mean - model.scale(j) * x_mean;
  }
  return model;
}

StructureMatrix apply_calibration(const CalibrationModel& model, const StructureMatrix& s) {
  if (s.values.cols() != model.k()) {
    throw DimensionMismatch("structure has " + std::to_string(s.values.cols()) +
                            " dimensions, model expects " + std::to_string(model.k()));
  }
  StructureMatrix out = s;
  for (Index j = 0; j < model.k(); ++j) {
    out.values.col(j).array() = model.scale(j) * s.values.col(j).array() + model.bias(j);
  }
  out.kind = StructureKind::Calibrated;
  return out;
}

std::vector<RankedMatches> match(const StructureMatrix& query_rows,
                                 const StructureMatrix& target_rows,
                                 const CalibrationModel& model, StructureMetric metric) {
  if (target_rows.values.cols() != model.k()) {
    throw DimensionMismatch("target structure does not match model dimension");
  }
  const StructureMatrix calibrated = apply_calibration(model, query_rows);

  std::vector<RankedMatches> all;
  all.reserve(static_cast<std::size_t>(calibrated.values.rows()));
  for (Index q = 0; q < calibrated.values.rows(); ++q) {
    RankedMatches rm;
    rm.query_index = q;
    rm.ranked.reserve(static_cast<std::size_t>(target_rows.values.rows()));
    const Vector query = calibrated.values.row(q);
    const double qnorm = query.norm();
    for (Index t = 0; t < target_rows.values.rows(); ++t) {
      double dist;
      if (metric == StructureMetric::CosineDist) {
        const Vector target = target_rows.values.row(t);
        const double tnorm = target.norm();
        if (qnorm == 0.0 || tnorm == 0.0) {
          dist = 2.0;  // maximum cosine distance
          rm.zero_vector_flagged = true;
        } else {
          dist = 1.0 - query.dot(target) / (qnorm * tnorm);
        }
      } else {
        dist = (query - target_rows.values.row(t).transpose()).norm();
      }
      rm.ranked.emplace_back(t, dist);
    }
    std::sort(rm.ranked.begin(), rm.ranked.end(), [](const auto& lhs, const auto& rhs) {
      if (lhs.second != rhs.second) return lhs.second < rhs.second;
      return lhs.first < rhs.first;
    });
    all.push_back(std::move(rm));
  }
  return all;
}

void save_calibration(const std::string& path, const CalibrationModel& model) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot create file: " + path);
  out << "# k=" << model.k() << " gamma=" << format_real(model.gamma)
      << " direction=" << to_string(model.direction) << '\n';
  for (Index j = 0; j < model.k(); ++j) {
    out << format_real(model.scale(j)) << ',' << format_real(model.bias(j)) << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

CalibrationModel load_calibration(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open file: " + path);
  std::string header;
  if (!std::getline(in, header)) throw EmptyInput("empty calibration file: " + path);
  CalibrationModel model;
  {
    std::istringstream hs(header);
    std::string tok;
    while (hs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = tok.substr(0, eq);
      const std::string val = tok.substr(eq + 1);
      if (key == "gamma") model.gamma = detail::parse_real(val, 1);
      if (key == "direction") model.direction = direction_from_string(val);
    }
  }
  std::vector<double> scales, biases;
  std::string line;
  long line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto fields = detail::split_fields(line, ',');
    if (fields.size() != 2) throw ParseError("expected 'scale,bias'", line_number);
    scales.push_back(detail::parse_real(fields[0], line_number));
    biases.push_back(detail::parse_real(fields[1], line_number));
  }
  if (scales.empty()) throw EmptyInput("no coefficients in " + path);
  model.scale = Eigen::Map<Vector>(scales.data(), static_cast<Index>(scales.size()));
  model.bias = Eigen::Map<Vector>(biases.data(), static_cast<Index>(biases.size()));
  return model;
}

}  // namespace ssm
