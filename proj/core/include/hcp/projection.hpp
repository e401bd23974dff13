#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "hcp/features.hpp"

namespace hcp {

using FeatureArray = std::array<double, kFeatureCount>;

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

double distance(Point2 a, Point2 b);

inline constexpr double kLogGuard = 1e-9;

// Frozen log -> z-score -> 2-component PCA pipeline.
struct ProjectionModel {
  FeatureArray offsets{};  // added before the log so every value is positive
  FeatureArray means{};    // of the log-transformed features
  FeatureArray stds{};     // population std; 0 marks a dropped constant feature
  std::array<FeatureArray, 2> components{};
  std::array<double, 2> eigenvalues{};
  std::array<double, 2> variance_explained{};
  std::uint64_t fitted_on = 0;  // fingerprint of the sorted training rows
  std::size_t sample_count = 0;

  bool retained(std::size_t f) const { return stds[f] > 0.0; }

  friend bool operator==(const ProjectionModel&, const ProjectionModel&) = default;
};

// Fits offsets (1 - min for features with min <= 0, else 0), log-transform
// ln(x + offset + 1e-9), z-scores with population statistics and takes the
// top two eigenvectors of the covariance of the z-scores. Each component is
// oriented so that its largest-magnitude coefficient is positive. Constant
// features get zero coefficients. The result does not depend on row order.
ProjectionModel fit_projection(std::span<const FeatureArray> rows);
ProjectionModel fit_projection(std::span<const FeatureVector> features);

// Log-transformed then standardized feature values (0 for dropped features).
FeatureArray standardize(const ProjectionModel& model, const FeatureArray& values);

// Projection of already-standardized values.
Point2 project_standardized(const ProjectionModel& model, const FeatureArray& z);

Point2 project(const ProjectionModel& model, const FeatureArray& values);
Point2 project(const ProjectionModel& model, const FeatureVector& fv);

// Versioned text format with hex-float reals; load(save(m)) == m exactly.
std::string save_model(const ProjectionModel& model);
ProjectionModel load_model(std::string_view text);

}  // namespace hcp
