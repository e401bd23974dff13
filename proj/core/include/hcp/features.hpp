#pragma once

#include <array>
#include <string_view>

#include "hcp/graph.hpp"

namespace hcp {

inline constexpr std::size_t kFeatureCount = 10;

// Canonical feature order. Bump kFeatureSchemaVersion if this list changes.
inline constexpr int kFeatureSchemaVersion = 1;
inline constexpr std::array<std::string_view, kFeatureCount> kFeatureNames = {
    "density",       "clustering_coefficient", "energy",          "max_degree",
    "degree_std",    "degree_skewness",        "degree_kurtosis", "diameter",
    "pct_degree1",   "pct_degree2",
};

struct FeatureVector {
  double density = 0.0;
  double clustering_coefficient = 0.0;
  double energy = 0.0;
  int max_degree = 0;
  double degree_std = 0.0;
  double degree_skewness = 0.0;
  double degree_kurtosis = 0.0;
  int diameter = 0;
  double pct_degree1 = 0.0;
  double pct_degree2 = 0.0;

  std::array<double, kFeatureCount> values() const;
  static FeatureVector from_values(const std::array<double, kFeatureCount>& v);

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Index of a feature name in the canonical order, or kFeatureCount if unknown.
std::size_t feature_index(std::string_view name);

double density(const Graph& g);

// Mean local clustering coefficient; nodes of degree < 2 count as 0.
double clustering_coefficient(const Graph& g);

// Sum of absolute adjacency eigenvalues.
double energy(const Graph& g);

struct DegreeStats {
  int max_degree = 0;
  double std = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;  // m4 / m2^2, not excess
};

// Population moments of the degree sequence. Skewness and kurtosis are 0 for
// regular graphs.
DegreeStats degree_stats(const Graph& g);

// Longest BFS distance between connected pairs; n if the graph is disconnected.
int diameter(const Graph& g);

struct DegreeFractions {
  double degree1 = 0.0;
  double degree2 = 0.0;
};
DegreeFractions degree_fractions(const Graph& g);

FeatureVector feature_vector(const Graph& g);

}  // namespace hcp
