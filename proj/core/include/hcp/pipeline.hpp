#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hcp/analysis.hpp"
#include "hcp/archive.hpp"
#include "hcp/evolve.hpp"
#include "hcp/generators.hpp"
#include "hcp/projection.hpp"
#include "hcp/solvers.hpp"

namespace hcp {

struct RunCounts {
  int hardness = 15;
  int novelty = 15;
  int target = 15;
};

// Everything a desk-scale run needs. Every random choice is derived from
// `seed`; there is no ambient randomness.
struct PipelineConfig {
  int n = 16;
  int exact_limit = kDefaultExactLimit;
  EvolutionConfig evolution;  // n and seed are overwritten per run
  MslsParams msls;
  int timing_repeats = 1;
  RunCounts runs;
  std::vector<Point2> targets;  // empty: pick the emptiest spots automatically
  std::uint64_t seed = 0;
  int generator_er_count = 20;
  int fill_hof_size = 300;
  int knn_k = 100;
  std::filesystem::path output_dir = "out";

  SolverOptions solver_options() const;
};

nlohmann::ordered_json config_to_json(const PipelineConfig& config);
// Keys mirror the field names; missing keys keep their defaults and unknown
// keys are rejected.
PipelineConfig config_from_json(const nlohmann::ordered_json& j);
PipelineConfig load_config(const std::filesystem::path& path);

// Generator-born records for the standard sweep at config.n.
std::vector<InstanceRecord> generate_records(const PipelineConfig& config);
InstanceRecord generator_record(const GeneratorSpec& spec);

// Fills hcn_* and t_* (and fitness when both solvers ran).
void solve_records(std::span<InstanceRecord> records, const SolverOptions& options,
                   bool run_exact = true, bool run_heuristic = true);

void compute_features(std::span<InstanceRecord> records);

// Fits on every record that carries features.
ProjectionModel fit_model(std::span<const InstanceRecord> records);
void project_records(std::span<InstanceRecord> records, const ProjectionModel& model);

struct RunOutput {
  std::vector<InstanceRecord> records;  // hall of fame, best first
  EvolutionResult result;
};

// One runtime-difference run. Runs alternate maximize / minimize by index and
// start from ER graphs whose p is spread over (0, 1) across runs.
RunOutput evolve_hardness(const PipelineConfig& config, int run_index, int run_count);

// Projection-space filling: novelty when target is empty, else attraction to
// *target. Returned records carry features, coordinates and solver timings.
RunOutput fill_landscape(const PipelineConfig& config, std::span<const InstanceRecord> archive,
                         const ProjectionModel& model, std::optional<Point2> target,
                         int run_index);

// Grid point (over the padded bounding box) farthest from every landscape point.
Point2 emptiest_point(std::span<const Point2> landscape, int resolution = 40);

std::vector<LabeledPoint> labeled_points(std::span<const InstanceRecord> records);

ClassifierReport classify_records(std::span<const InstanceRecord> records, int k,
                                  std::uint64_t split_seed);

struct FigureOptions {
  // Colour range for runtime_diff, e.g. {-2, 3}; unset uses the data range.
  // A clamp also adds histogram_zoomed.svg over the same range.
  std::optional<std::pair<double, double>> clamp;
  std::string color_field = "runtime_diff";  // or any feature name
  double histogram_bin = 0.0;  // 0 picks roughly 40 bins
  int knn_k = 100;
  std::uint64_t split_seed = 0;
};

// Writes histogram.svg, landscape.svg, footprint.svg, decision.svg,
// coefficients.svg (if a model is given) and feature_<name>.svg for density,
// diameter, degree_std and degree_skewness. Returns the paths written.
std::vector<std::filesystem::path> write_figures(std::span<const InstanceRecord> records,
                                                 const ProjectionModel* model,
                                                 const std::filesystem::path& out_dir,
                                                 const FigureOptions& options = {});

// One line per provenance group: count and runtime-difference range.
void write_summary(std::ostream& out, std::span<const InstanceRecord> records);

void write_features_csv(std::ostream& out, std::span<const InstanceRecord> records);

}  // namespace hcp
