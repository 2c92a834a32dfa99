#include "ssm/correlate.hpp"

#include <cmath>
#include <cstddef>
#include <fstream>
#include <random>

#include <Eigen/Eigenvalues>

#include "ssm/error.hpp"
#include "ssm/io.hpp"

namespace ssm {

namespace {

FeatureMatrix sample_normal(Index rows, Index cols, std::mt19937_64& rng,
                            std::normal_distribution<double>& normal) {
  FeatureMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      m(i, j) = normal(rng);
    }
  }
  return m;
}

}  // namespace

std::string to_string(MappingKind kind) {
  return kind == MappingKind::Linear ? "linear" : "sigmoid";
}

MappingKind mapping_from_string(const std::string& text) {
  if (text == "linear") {
    return MappingKind::Linear;
  }
  if (text == "sigmoid") {
    return MappingKind::Sigmoid;
  }
  throw InvalidArgument("unknown mapping: " + text);
}

SimilarityMatrix inner_product_similarity(const FeatureMatrix& x) {
  if (x.rows() == 0 || x.cols() == 0) {
    throw EmptyInput("feature matrix is empty");
  }
  return x * x.transpose();
}

double empirical_pearson(const SimilarityMatrix& a, const SimilarityMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols()) {
    throw InvalidArgument("similarity matrices must be square");
  }
  if (a.rows() != b.rows()) {
    throw DimensionMismatch("similarity matrices have " + std::to_string(a.rows()) + " and " +
                            std::to_string(b.rows()) + " objects");
  }
  const Index n = a.rows();
  if (n < 2) {
    throw InvalidArgument("need at least two objects to correlate similarities");
  }
  const double count = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      mean_a += a(i, j);
      mean_b += b(i, j);
    }
  }
  mean_a /= count;
  mean_b /= count;
  double saa = 0.0;
  double sbb = 0.0;
  double sab = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double da = a(i, j) - mean_a;
      const double db = b(i, j) - mean_b;
      saa += da * da;
      sbb += db * db;
      sab += da * db;
    }
  }
  if (saa <= 0.0 || sbb <= 0.0) {
    throw DegenerateInput("similarity entries have zero variance");
  }
  return sab / std::sqrt(saa * sbb);
}

double analytic_rho_spectral(const FeatureMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw EmptyInput("projection matrix is empty");
  }
  const Index d = m.rows();
  const FeatureMatrix g = m * m.transpose();
  if (g.squaredNorm() == 0.0) {
    throw DegenerateInput("projection matrix is zero");
  }
  Eigen::SelfAdjointEigenSolver<FeatureMatrix> eig(g);
  if (eig.info() != Eigen::Success) {
    throw Error("eigendecomposition of the projection Gram matrix failed");
  }
  const Vector lam = eig.eigenvalues();
  const FeatureMatrix p = eig.eigenvectors();
  double num = 0.0;
  for (Index gi = 0; gi < d; ++gi) {
    double comp = 0.0;
    for (Index phi = 0; phi < d; ++phi) {
      comp += p(phi, gi) * p(phi, gi);
    }
    num += lam(gi) * comp;
  }
  double den = 0.0;
  for (Index mu = 0; mu < d; ++mu) {
    for (Index nu = 0; nu < d; ++nu) {
      double entry = 0.0;
      for (Index gi = 0; gi < d; ++gi) {
        entry += lam(gi) * p(mu, gi) * p(nu, gi);
      }
      den += entry * entry;
    }
  }
  return num / std::sqrt(static_cast<double>(d) * den);
}

double analytic_rho_closed(const FeatureMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) {
    throw EmptyInput("projection matrix is empty");
  }
  const FeatureMatrix g = m * m.transpose();
  const double fro2 = g.squaredNorm();
  if (fro2 == 0.0) {
    throw DegenerateInput("projection matrix is zero");
  }
  return g.trace() / std::sqrt(static_cast<double>(m.rows()) * fro2);
}

double analytic_rho(const FeatureMatrix& m) {
  const double spectral = analytic_rho_spectral(m);
  const double closed = analytic_rho_closed(m);
  if (std::abs(spectral - closed) > 1e-8 * std::max(1.0, std::abs(closed))) {
    throw Error("correlation evaluations disagree beyond tolerance");
  }
  return closed;
}

CorrelationReport monte_carlo_verify(const MonteCarloParams& params) {
  if (params.n < 10) {
    throw InvalidArgument("need at least 10 objects per trial");
  }
  if (params.d < 1 || params.e < 1) {
    throw InvalidArgument("feature dimensions must be positive");
  }
  if (params.trials < 1) {
    throw InvalidArgument("need at least one trial");
  }
  if (params.fixed_projection && (params.fixed_projection->rows() != params.d ||
                                  params.fixed_projection->cols() != params.e)) {
    throw DimensionMismatch("fixed projection must be d x e");
  }
  CorrelationReport report;
  report.trials = params.trials;
  report.mapping = params.mapping;
  report.empirical_rho_per_trial.reserve(static_cast<std::size_t>(params.trials));
  double analytic_sum = 0.0;
  Index positive = 0;
  for (Index t = 0; t < params.trials; ++t) {
    std::mt19937_64 rng(params.seed + static_cast<unsigned long long>(t));
    std::normal_distribution<double> normal(0.0, 1.0);
    const FeatureMatrix x = sample_normal(params.n, params.d, rng, normal);
    const FeatureMatrix m = params.fixed_projection
                                ? *params.fixed_projection
                                : sample_normal(params.d, params.e, rng, normal);
    FeatureMatrix y = x * m;
    if (params.mapping == MappingKind::Sigmoid) {
      Vector bias(params.e);
      for (Index j = 0; j < params.e; ++j) {
        bias(j) = normal(rng);
      }
      y.rowwise() += bias.transpose();
      y = y.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
    }
    const double rho = empirical_pearson(inner_product_similarity(x), inner_product_similarity(y));
    report.empirical_rho_per_trial.push_back(rho);
    if (rho > 0.0) {
      ++positive;
    }
    if (params.mapping == MappingKind::Linear) {
      analytic_sum += analytic_rho(m);
    }
  }
  report.fraction_positive = static_cast<double>(positive) / static_cast<double>(params.trials);
  if (params.mapping == MappingKind::Linear) {
    report.analytic_rho = analytic_sum / static_cast<double>(params.trials);
  }
  return report;
}

void write_correlation_report(const CorrelationReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open " + path + " for writing");
  }
  out << "trial,empirical_rho\n";
  for (std::size_t i = 0; i < report.empirical_rho_per_trial.size(); ++i) {
    out << i << "," << format_real(report.empirical_rho_per_trial[i]) << "\n";
  }
  out << "fraction_positive=" << format_real(report.fraction_positive);
  if (report.analytic_rho) {
    out << ",analytic_rho=" << format_real(*report.analytic_rho);
  }
  out << "\n";
  if (!out) {
    throw IoError("failed writing " + path);
  }
}

}  // namespace ssm
