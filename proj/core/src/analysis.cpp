#include "hcp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

#include "hcp/error.hpp"
#include "hcp/rng.hpp"

namespace hcp {

std::string to_string(DominanceLabel label) {
  return label == DominanceLabel::exact_faster ? "exact_faster" : "heuristic_faster";
}

std::string to_string(HardnessFlag flag) {
  return flag == HardnessFlag::normal ? "normal" : "very_hard_for_heuristic";
}

LabeledPoint make_labeled_point(Point2 position, double runtime_diff, std::uint64_t id) {
  return {position, label_for(runtime_diff), runtime_diff, id};
}

std::size_t Histogram::total() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

Histogram runtime_histogram(std::span<const double> values, double bin_width,
                            std::optional<std::pair<double, double>> range) {
  if (!(bin_width > 0.0)) throw InvalidArgument("histogram bin width must be positive");
  if (values.empty()) throw InvalidArgument("histogram needs at least one value");
  Histogram h;
  h.width = bin_width;
  std::size_t bins = 0;
  if (range) {
    if (!(range->second > range->first)) throw InvalidArgument("histogram range is empty");
    h.origin = range->first;
    bins = static_cast<std::size_t>(std::ceil((range->second - range->first) / bin_width - 1e-12));
  } else {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    h.origin = std::floor(*lo / bin_width) * bin_width;
    bins = static_cast<std::size_t>(std::floor((*hi - h.origin) / bin_width)) + 1;
  }
  bins = std::max<std::size_t>(bins, 1);
  h.counts.assign(bins, 0);
  for (double v : values) {
    const double slot = std::floor((v - h.origin) / bin_width);
    const auto k = slot < 0.0 ? std::size_t{0}
                              : std::min(static_cast<std::size_t>(slot), bins - 1);
    ++h.counts[k];
  }
  return h;
}

DominanceLabel knn_classify(std::span<const LabeledPoint> train, Point2 query, int k) {
  if (train.empty()) throw InvalidArgument("kNN needs a non-empty training set");
  if (k < 1) throw InvalidArgument("kNN needs k >= 1");
  const auto take = std::min(static_cast<std::size_t>(k), train.size());
  struct Candidate {
    double dist;
    std::uint64_t id;
    DominanceLabel label;
  };
  std::vector<Candidate> all;
  all.reserve(train.size());
  for (const auto& p : train) {
    // Squared distance keeps the ordering and avoids sqrt rounding ties.
    const double dx = p.position.x - query.x;
    const double dy = p.position.y - query.y;
    all.push_back({dx * dx + dy * dy, p.instance_id, p.label});
  }
  auto closer = [](const Candidate& a, const Candidate& b) {
    return a.dist != b.dist ? a.dist < b.dist : a.id < b.id;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(),
                    closer);
  std::size_t exact_votes = 0;
  for (std::size_t i = 0; i < take; ++i) {
    if (all[i].label == DominanceLabel::exact_faster) ++exact_votes;
  }
  const std::size_t heuristic_votes = take - exact_votes;
  if (exact_votes == heuristic_votes) return all.front().label;
  return exact_votes > heuristic_votes ? DominanceLabel::exact_faster
                                       : DominanceLabel::heuristic_faster;
}

ClassifierReport evaluate_classifier(std::span<const LabeledPoint> points, std::uint64_t split_seed,
                                     int k) {
  if (k < 1) throw InvalidArgument("kNN needs k >= 1");
  if (points.size() < 2 * static_cast<std::size_t>(k)) {
    throw InsufficientData("classifier evaluation needs at least 2k = " + std::to_string(2 * k) +
                           " points, got " + std::to_string(points.size()));
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(split_seed);
  rng.shuffle(order.begin(), order.end());

  const std::size_t half = points.size() / 2;
  std::vector<LabeledPoint> train;
  train.reserve(half);
  for (std::size_t i = 0; i < half; ++i) train.push_back(points[order[i]]);

  ClassifierReport report;
  report.k = k;
  report.train_size = half;
  report.test_size = points.size() - half;
  std::size_t correct = 0;
  for (std::size_t i = half; i < points.size(); ++i) {
    const auto& p = points[order[i]];
    const auto predicted = knn_classify(train, p.position, k);
    ++report.confusion[static_cast<int>(p.label)][static_cast<int>(predicted)];
    if (predicted == p.label) {
      ++correct;
    } else {
      report.misclassified.push_back(p.instance_id);
    }
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(report.test_size);
  return report;
}

void write_report_csv(std::ostream& out, const ClassifierReport& r) {
  const auto precision = out.precision(17);
  out << "k,train_size,test_size,accuracy,exact_as_exact,exact_as_heuristic,"
         "heuristic_as_exact,heuristic_as_heuristic\n";
  out << r.k << ',' << r.train_size << ',' << r.test_size << ',' << r.accuracy << ','
      << r.confusion[0][0] << ',' << r.confusion[0][1] << ',' << r.confusion[1][0] << ','
      << r.confusion[1][1] << '\n';
  out.precision(precision);
}

HardnessFlag dominance_prediction_rule(const FeatureVector& fv, const DominanceThresholds& t) {
  const bool match = fv.density >= t.density_min && fv.density <= t.density_max &&
                     fv.diameter == t.diameter && fv.degree_skewness < t.skewness_below;
  return match ? HardnessFlag::very_hard_for_heuristic : HardnessFlag::normal;
}

}  // namespace hcp
