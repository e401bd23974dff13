#include "hcp/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "hcp/error.hpp"
#include "hcp/features.hpp"
#include "hcp/rng.hpp"
#include "hcp/svg.hpp"

namespace hcp {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::uint64_t kHardnessStream = 11;
constexpr std::uint64_t kNoveltyStream = 12;
constexpr std::uint64_t kTargetStream = 13;
constexpr std::uint64_t kGeneratorStream = 14;

void reject_unknown(const Json& j, std::initializer_list<std::string_view> allowed,
                    const std::string& where) {
  if (!j.is_object()) throw FormatError(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw FormatError("unknown config key '" + where + key + "'");
    }
  }
}

template <typename T>
void read_key(const Json& j, const char* key, T& target) {
  if (const auto it = j.find(key); it != j.end()) {
    try {
      target = it->get<T>();
    } catch (const nlohmann::json::exception&) {
      throw FormatError(std::string("config key '") + key + "' has the wrong type");
    }
  }
}

std::vector<InstanceRecord> records_from_run(const EvolutionResult& result, std::uint64_t run_id,
                                             const std::string& mode, bool score_is_runtime) {
  std::vector<InstanceRecord> out;
  out.reserve(result.hall_of_fame.size());
  for (const auto& entry : result.hall_of_fame.entries()) {
    EvolvedOrigin origin{run_id, entry.generation, mode, std::nullopt};
    if (!score_is_runtime) origin.score = entry.evaluation.fitness;
    auto record = InstanceRecord::from_graph(entry.graph, origin);
    if (const auto& rt = entry.evaluation.runtime) {
      record.t_exact = rt->t_exact;
      record.t_heuristic = rt->t_heuristic;
      record.hcn_exact = rt->hcn_exact;
      record.hcn_heuristic = rt->hcn_heuristic;
      record.fitness = rt->fitness();
    }
    out.push_back(std::move(record));
  }
  return out;
}

std::string group_of(const InstanceRecord& r) {
  if (const auto* g = std::get_if<GeneratorOrigin>(&r.provenance)) return "generator:" + g->kind;
  return "evolved:" + std::get<EvolvedOrigin>(r.provenance).mode;
}

void write_file(const std::filesystem::path& path, const std::string& contents,
                std::vector<std::filesystem::path>& written) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("cannot write '" + path.string() + "'");
  out << contents;
  written.push_back(path);
}

}  // namespace

SolverOptions PipelineConfig::solver_options() const {
  SolverOptions options;
  options.exact_limit = exact_limit;
  options.msls = msls;
  options.repeats = timing_repeats;
  return options;
}

Json config_to_json(const PipelineConfig& c) {
  Json j;
  j["n"] = c.n;
  j["exact_limit"] = c.exact_limit;
  j["seed"] = c.seed;
  j["timing_repeats"] = c.timing_repeats;
  j["generator_er_count"] = c.generator_er_count;
  j["fill_hof_size"] = c.fill_hof_size;
  j["knn_k"] = c.knn_k;
  j["output_dir"] = c.output_dir.string();
  const auto& e = c.evolution;
  j["evolution"] = {{"pop_size", e.pop_size},
                    {"offspring_count", e.offspring_count},
                    {"op_probs", e.op_probs},
                    {"mutation_rate", e.mutation_rate},
                    {"generations", e.generations},
                    {"extension_generations", e.extension_generations},
                    {"extension_window", e.extension_window},
                    {"allow_extension", e.allow_extension},
                    {"hof_size", e.hof_size},
                    {"tournament_size", e.tournament_size},
                    {"workers", e.workers}};
  j["msls"] = {{"restarts", c.msls.restarts},
               {"max_no_improve", c.msls.max_no_improve},
               {"seed", c.msls.seed},
               {"early_stop_at_zero", c.msls.early_stop_at_zero}};
  j["runs"] = {{"hardness", c.runs.hardness}, {"novelty", c.runs.novelty}, {"target", c.runs.target}};
  Json targets = Json::array();
  for (const auto& t : c.targets) targets.push_back({t.x, t.y});
  j["targets"] = std::move(targets);
  return j;
}

PipelineConfig config_from_json(const Json& j) {
  reject_unknown(j,
                 {"n", "exact_limit", "seed", "timing_repeats", "generator_er_count",
                  "fill_hof_size", "knn_k", "output_dir", "evolution", "msls", "runs", "targets"},
                 "");
  PipelineConfig c;
  read_key(j, "n", c.n);
  read_key(j, "exact_limit", c.exact_limit);
  read_key(j, "seed", c.seed);
  read_key(j, "timing_repeats", c.timing_repeats);
  read_key(j, "generator_er_count", c.generator_er_count);
  read_key(j, "fill_hof_size", c.fill_hof_size);
  read_key(j, "knn_k", c.knn_k);
  if (const auto it = j.find("output_dir"); it != j.end()) {
    c.output_dir = it->get<std::string>();
  }
  if (const auto it = j.find("evolution"); it != j.end()) {
    reject_unknown(*it,
                   {"pop_size", "offspring_count", "op_probs", "mutation_rate", "generations",
                    "extension_generations", "extension_window", "allow_extension", "hof_size",
                    "tournament_size", "workers"},
                   "evolution.");
    auto& e = c.evolution;
    read_key(*it, "pop_size", e.pop_size);
    read_key(*it, "offspring_count", e.offspring_count);
    read_key(*it, "op_probs", e.op_probs);
    read_key(*it, "mutation_rate", e.mutation_rate);
    read_key(*it, "generations", e.generations);
    read_key(*it, "extension_generations", e.extension_generations);
    read_key(*it, "extension_window", e.extension_window);
    read_key(*it, "allow_extension", e.allow_extension);
    read_key(*it, "hof_size", e.hof_size);
    read_key(*it, "tournament_size", e.tournament_size);
    read_key(*it, "workers", e.workers);
  }
  if (const auto it = j.find("msls"); it != j.end()) {
    reject_unknown(*it, {"restarts", "max_no_improve", "seed", "early_stop_at_zero"}, "msls.");
    read_key(*it, "restarts", c.msls.restarts);
    read_key(*it, "max_no_improve", c.msls.max_no_improve);
    read_key(*it, "seed", c.msls.seed);
    read_key(*it, "early_stop_at_zero", c.msls.early_stop_at_zero);
  }
  if (const auto it = j.find("runs"); it != j.end()) {
    reject_unknown(*it, {"hardness", "novelty", "target"}, "runs.");
    read_key(*it, "hardness", c.runs.hardness);
    read_key(*it, "novelty", c.runs.novelty);
    read_key(*it, "target", c.runs.target);
  }
  if (const auto it = j.find("targets"); it != j.end()) {
    for (const auto& t : *it) {
      if (!t.is_array() || t.size() != 2) throw FormatError("targets must be [x, y] pairs");
      c.targets.push_back({t[0].get<double>(), t[1].get<double>()});
    }
  }
  c.evolution.n = c.n;
  c.evolution.validate();
  if (c.exact_limit < kMinNodes) throw InvalidArgument("exact_limit must be at least 3");
  if (c.timing_repeats < 1) throw InvalidArgument("timing_repeats must be positive");
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open config '" + path.string() + "'");
  try {
    return config_from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError("config '" + path.string() + "': " + e.what());
  }
}

InstanceRecord generator_record(const GeneratorSpec& spec) {
  return InstanceRecord::from_graph(generate(spec),
                                    GeneratorOrigin{kind_name(spec.kind), describe(spec.kind)});
}

std::vector<InstanceRecord> generate_records(const PipelineConfig& config) {
  std::vector<InstanceRecord> out;
  for (const auto& spec : standard_sweep(config.n, config.generator_er_count,
                                         derive_seed(config.seed, kGeneratorStream))) {
    out.push_back(generator_record(spec));
  }
  return out;
}

void solve_records(std::span<InstanceRecord> records, const SolverOptions& options,
                   bool run_exact, bool run_heuristic) {
  for (auto& r : records) {
    const Graph g = r.graph();
    if (run_exact) {
      const auto res = timed_solve(SolverKind::exact, g, options);
      r.hcn_exact = res.hcn;
      r.t_exact = res.cpu_seconds;
    }
    if (run_heuristic) {
      const auto res = timed_solve(SolverKind::heuristic, g, options);
      r.hcn_heuristic = res.hcn;
      r.t_heuristic = res.cpu_seconds;
    }
    if (r.t_exact && r.t_heuristic) {
      r.fitness = *r.t_heuristic - *r.t_exact;
    } else {
      r.fitness.reset();
    }
  }
}

void compute_features(std::span<InstanceRecord> records) {
  for (auto& r : records) r.features = feature_vector(r.graph()).values();
}

ProjectionModel fit_model(std::span<const InstanceRecord> records) {
  std::vector<FeatureArray> rows;
  for (const auto& r : records) {
    if (r.features) rows.push_back(*r.features);
  }
  return fit_projection(std::span<const FeatureArray>(rows));
}

void project_records(std::span<InstanceRecord> records, const ProjectionModel& model) {
  for (auto& r : records) {
    if (!r.features) r.features = feature_vector(r.graph()).values();
    const auto p = project(model, *r.features);
    r.px = p.x;
    r.py = p.y;
  }
}

RunOutput evolve_hardness(const PipelineConfig& config, int run_index, int run_count) {
  EvolutionConfig cfg = config.evolution;
  cfg.n = config.n;
  cfg.seed = derive_seed(config.seed, kHardnessStream, static_cast<std::uint64_t>(run_index));
  cfg.direction = run_index % 2 == 0 ? Direction::maximize : Direction::minimize;
  cfg.initial_p = (run_index + 0.5) / std::max(run_count, 1);
  auto result = run_evolution(cfg, RuntimeDiffMode{config.solver_options()});
  auto records = records_from_run(result, cfg.seed, "hardness", true);
  return {std::move(records), std::move(result)};
}

Point2 emptiest_point(std::span<const Point2> landscape, int resolution) {
  if (landscape.empty()) return {0.0, 0.0};
  double x_lo = landscape.front().x;
  double x_hi = x_lo;
  double y_lo = landscape.front().y;
  double y_hi = y_lo;
  for (const auto& p : landscape) {
    x_lo = std::min(x_lo, p.x);
    x_hi = std::max(x_hi, p.x);
    y_lo = std::min(y_lo, p.y);
    y_hi = std::max(y_hi, p.y);
  }
  Point2 best{x_lo, y_lo};
  double best_gap = -1.0;
  for (int r = 0; r <= resolution; ++r) {
    for (int c = 0; c <= resolution; ++c) {
      const Point2 q{x_lo + (x_hi - x_lo) * c / resolution, y_lo + (y_hi - y_lo) * r / resolution};
      double gap = std::numeric_limits<double>::infinity();
      for (const auto& p : landscape) gap = std::min(gap, distance(p, q));
      if (gap > best_gap) {
        best_gap = gap;
        best = q;
      }
    }
  }
  return best;
}

RunOutput fill_landscape(const PipelineConfig& config, std::span<const InstanceRecord> archive,
                         const ProjectionModel& model, std::optional<Point2> target,
                         int run_index) {
  EvolutionConfig cfg = config.evolution;
  cfg.n = config.n;
  cfg.hof_size = config.fill_hof_size;
  cfg.seed = derive_seed(config.seed, target ? kTargetStream : kNoveltyStream,
                         static_cast<std::uint64_t>(run_index));
  FitnessMode mode;
  if (target) {
    mode = TargetMode{*target, model};
  } else {
    NoveltyMode novelty{{}, model};
    for (const auto& r : archive) {
      if (auto p = r.point()) novelty.landscape.push_back(*p);
    }
    mode = std::move(novelty);
  }
  auto result = run_evolution(cfg, mode);
  auto records = records_from_run(result, cfg.seed, mode_name(mode), false);
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& entry = result.hall_of_fame.entries()[k];
    records[k].features = feature_vector(entry.graph).values();
    records[k].px = entry.evaluation.point->x;
    records[k].py = entry.evaluation.point->y;
  }
  solve_records(records, config.solver_options());
  return {std::move(records), std::move(result)};
}

std::vector<LabeledPoint> labeled_points(std::span<const InstanceRecord> records) {
  std::vector<LabeledPoint> out;
  for (const auto& r : records) {
    const auto p = r.point();
    if (p && r.fitness) out.push_back(make_labeled_point(*p, *r.fitness, r.id));
  }
  return out;
}

ClassifierReport classify_records(std::span<const InstanceRecord> records, int k,
                                  std::uint64_t split_seed) {
  const auto points = labeled_points(records);
  return evaluate_classifier(points, split_seed, k);
}

std::vector<std::filesystem::path> write_figures(std::span<const InstanceRecord> records,
                                                 const ProjectionModel* model,
                                                 const std::filesystem::path& out_dir,
                                                 const FigureOptions& options) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;

  std::vector<double> diffs;
  for (const auto& r : records) {
    if (r.fitness) diffs.push_back(*r.fitness);
  }
  if (!diffs.empty()) {
    const auto [lo, hi] = std::minmax_element(diffs.begin(), diffs.end());
    const double width = options.histogram_bin > 0.0 ? options.histogram_bin
                                                     : std::max((*hi - *lo) / 40.0, 1e-6);
    write_file(out_dir / "histogram.svg",
               svg_histogram(runtime_histogram(diffs, width), "runtime difference"), written);
    if (options.clamp) {
      const double zoom_width = (options.clamp->second - options.clamp->first) / 40.0;
      write_file(out_dir / "histogram_zoomed.svg",
                 svg_histogram(runtime_histogram(diffs, zoom_width, options.clamp),
                               "runtime difference (clamped)"),
                 written);
    }
  }

  const auto colour_feature = feature_index(options.color_field);
  const bool colour_by_feature = colour_feature < kFeatureCount;
  if (!colour_by_feature && options.color_field != "runtime_diff") {
    throw InvalidArgument("unknown colour field '" + options.color_field +
                          "'; use runtime_diff or a feature name");
  }
  std::vector<ScatterPoint> scatter;
  std::vector<Point2> all;
  std::vector<Point2> generators;
  for (const auto& r : records) {
    const auto p = r.point();
    if (!p) continue;
    all.push_back(*p);
    if (r.is_generator()) generators.push_back(*p);
    if (colour_by_feature) {
      if (r.features) scatter.push_back({*p, (*r.features)[colour_feature]});
    } else if (r.fitness) {
      scatter.push_back({*p, *r.fitness});
    }
  }
  if (!scatter.empty()) {
    ScatterOptions so;
    so.title = "instance space coloured by " +
               (colour_by_feature ? options.color_field : std::string("runtime difference"));
    so.color_field = options.color_field;
    so.clamp = options.clamp;
    write_file(out_dir / "landscape.svg", svg_scatter(scatter, so), written);
  }
  if (!all.empty()) {
    write_file(out_dir / "footprint.svg", svg_footprint(all, generators), written);
  }
  for (std::string_view name : {"density", "diameter", "degree_std", "degree_skewness"}) {
    std::vector<ScatterPoint> coloured;
    const auto f = feature_index(name);
    for (const auto& r : records) {
      if (auto p = r.point(); p && r.features) coloured.push_back({*p, (*r.features)[f]});
    }
    if (coloured.empty()) continue;
    ScatterOptions so;
    so.title = "instance space coloured by " + std::string(name);
    so.color_field = std::string(name);
    so.clamp.reset();
    write_file(out_dir / ("feature_" + std::string(name) + ".svg"), svg_scatter(coloured, so),
               written);
  }

  const auto labeled = labeled_points(records);
  if (labeled.size() >= 2) {
    std::vector<std::size_t> order(labeled.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng rng(options.split_seed);
    rng.shuffle(order.begin(), order.end());
    std::vector<LabeledPoint> train;
    for (std::size_t i = 0; i < labeled.size() / 2; ++i) train.push_back(labeled[order[i]]);
    const int k = std::min(options.knn_k, static_cast<int>(train.size()));
    write_file(out_dir / "decision.svg", svg_decision_regions(train, k), written);
  }
  if (model) write_file(out_dir / "coefficients.svg", svg_coefficients(*model), written);
  return written;
}

void write_summary(std::ostream& out, std::span<const InstanceRecord> records) {
  struct Group {
    std::size_t count = 0;
    std::size_t timed = 0;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
  };
  std::map<std::string, Group> groups;
  for (const auto& r : records) {
    for (const auto& key : {group_of(r), std::string("all")}) {
      auto& g = groups[key];
      ++g.count;
      if (r.fitness) {
        ++g.timed;
        g.lo = std::min(g.lo, *r.fitness);
        g.hi = std::max(g.hi, *r.fitness);
      }
    }
  }
  const auto precision = out.precision(17);
  out << "group,count,timed,fitness_min,fitness_max\n";
  for (const auto& [name, g] : groups) {
    out << name << ',' << g.count << ',' << g.timed << ',';
    if (g.timed) {
      out << g.lo << ',' << g.hi << '\n';
    } else {
      out << ",\n";
    }
  }
  out.precision(precision);
}

void write_features_csv(std::ostream& out, std::span<const InstanceRecord> records) {
  const auto precision = out.precision(17);
  out << "id";
  for (auto name : kFeatureNames) out << ',' << name;
  out << '\n';
  for (const auto& r : records) {
    if (!r.features) continue;
    out << format_id(r.id);
    for (double x : *r.features) out << ',' << x;
    out << '\n';
  }
  out.precision(precision);
}

}  // namespace hcp
