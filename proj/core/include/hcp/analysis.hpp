#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hcp/features.hpp"
#include "hcp/projection.hpp"

namespace hcp {

enum class DominanceLabel { exact_faster, heuristic_faster };

std::string to_string(DominanceLabel label);

// runtime_diff = t_heuristic - t_exact; a tie counts as exact_faster.
constexpr DominanceLabel label_for(double runtime_diff) {
  return runtime_diff >= 0.0 ? DominanceLabel::exact_faster : DominanceLabel::heuristic_faster;
}

struct LabeledPoint {
  Point2 position;
  DominanceLabel label = DominanceLabel::exact_faster;
  double runtime_diff = 0.0;
  std::uint64_t instance_id = 0;
};

LabeledPoint make_labeled_point(Point2 position, double runtime_diff, std::uint64_t id);

struct Histogram {
  double origin = 0.0;  // left edge of bin 0
  double width = 1.0;
  std::vector<std::size_t> counts;

  double bin_left(std::size_t k) const { return origin + width * static_cast<double>(k); }
  std::size_t total() const;
};

// Half-open bins [origin + k*width, origin + (k+1)*width). Without a range
// the bins are aligned to multiples of width and span the data. With a range
// [lo, hi) values outside are clamped into the first or last bin.
Histogram runtime_histogram(std::span<const double> values, double bin_width,
                            std::optional<std::pair<double, double>> range = std::nullopt);

// Majority label among the k nearest training points (k capped at the
// training size). Distance ties go to the smaller instance id; vote ties go to
// the label of the single nearest neighbour.
DominanceLabel knn_classify(std::span<const LabeledPoint> train, Point2 query, int k);

struct ClassifierReport {
  int k = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  double accuracy = 0.0;
  // confusion[actual][predicted], indices follow DominanceLabel.
  std::size_t confusion[2][2] = {{0, 0}, {0, 0}};
  std::vector<std::uint64_t> misclassified;
};

// Seeded 50/50 split (first half of a seeded shuffle trains), accuracy on the
// held-out half. Needs at least 2k points.
ClassifierReport evaluate_classifier(std::span<const LabeledPoint> points, std::uint64_t split_seed,
                                     int k);

void write_report_csv(std::ostream& out, const ClassifierReport& report);

struct DominanceThresholds {
  double density_min = 0.25;
  double density_max = 0.35;
  int diameter = 2;
  double skewness_below = 0.0;
};

enum class HardnessFlag { normal, very_hard_for_heuristic };

std::string to_string(HardnessFlag flag);

// Flags instances matching every threshold predicate.
HardnessFlag dominance_prediction_rule(const FeatureVector& fv,
                                       const DominanceThresholds& thresholds = {});

}  // namespace hcp
