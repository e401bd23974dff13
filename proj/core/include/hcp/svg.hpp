#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hcp/analysis.hpp"
#include "hcp/evolve.hpp"
#include "hcp/projection.hpp"

namespace hcp {

// Standalone SVG figures. Output is a pure function of the inputs: numbers are
// printed with fixed precision and elements are emitted in input order.

struct ScatterPoint {
  Point2 position;
  double value = 0.0;  // mapped to colour
};

struct ScatterOptions {
  std::string title = "instance space";
  std::string color_field = "runtime_diff";
  // Colour range; values outside are clamped. Defaults to the data range.
  std::optional<std::pair<double, double>> clamp;
  bool legend = true;
};

// Linear two-colour gradient from blue (low) to red (high), as "#rrggbb".
std::string gradient_color(double value, double lo, double hi);

std::string svg_scatter(std::span<const ScatterPoint> points, const ScatterOptions& options = {});

// All points in grey with the highlighted subset drawn on top in blue.
std::string svg_footprint(std::span<const Point2> all, std::span<const Point2> highlighted,
                          const std::string& title = "generator footprint");

std::string svg_histogram(const Histogram& histogram, const std::string& title,
                          const std::string& x_label = "runtime difference (s)");

// Grouped bars of the two principal-component coefficient rows.
std::string svg_coefficients(const ProjectionModel& model);

// Population fitness min/mean/max per generation, with mean edge count
// in a second panel.
std::string svg_fitness_curves(std::span<const GenerationStats> stats,
                               const std::string& title = "fitness per generation");

// kNN decision regions on a resolution x resolution grid over the bounding box
// of the training points, with the training points overlaid.
std::string svg_decision_regions(std::span<const LabeledPoint> train, int k, int resolution = 60);

}  // namespace hcp
