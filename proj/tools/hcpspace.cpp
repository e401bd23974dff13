// hcpspace: command-line front end for the instance-space pipeline.
//
// Commands exchange JSON-lines archives through files or pipes, e.g.
//   hcpspace gen --kind circle --n 12 | hcpspace solve --exact

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hcp/error.hpp"
#include "hcp/pipeline.hpp"
#include "hcp/svg.hpp"

namespace fs = std::filesystem;
using namespace hcp;

namespace {

struct Common {
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
  std::string config_path;
  std::string archive;     // input archive; "-" or empty means stdin
  std::string output;      // output archive; empty means stdout
  bool in_place = false;
  std::string out_dir;

  PipelineConfig config() const {
    PipelineConfig c = config_path.empty() ? PipelineConfig{} : load_config(config_path);
    if (seed) c.seed = *seed;
    if (n) {
      c.n = *n;
      c.evolution.n = *n;
    }
    if (!out_dir.empty()) c.output_dir = out_dir;
    return c;
  }

  std::vector<InstanceRecord> read_input() const {
    if (archive.empty() || archive == "-") return read_archive(std::cin);
    return read_archive(fs::path(archive));
  }

  // Whole-archive outputs: --in-place rewrites the input, --output writes a
  // new file, otherwise stdout.
  void write_output(std::span<const InstanceRecord> records) const {
    if (in_place) {
      if (archive.empty() || archive == "-") throw InvalidArgument("--in-place needs --archive <file>");
      replace_archive(archive, records);
    } else if (!output.empty() && output != "-") {
      replace_archive(output, records);
    } else {
      write_archive(std::cout, records);
      std::cout.flush();
    }
  }

  // Appending outputs (evolve, fill): --output or --archive file, else stdout.
  void append_output(std::span<const InstanceRecord> records) const {
    const std::string& target = !output.empty() ? output : archive;
    if (target.empty() || target == "-") {
      write_archive(std::cout, records);
      std::cout.flush();
    } else {
      ArchiveWriter(target).append(records);
    }
  }
};

void add_common(CLI::App* cmd, Common& c, bool needs_input, bool writes_archive) {
  cmd->add_option("--seed", c.seed, "master seed");
  cmd->add_option("--n", c.n, "node count")->check(CLI::Range(kMinNodes, kMaxNodes));
  cmd->add_option("--config", c.config_path, "pipeline config (JSON)")->check(CLI::ExistingFile);
  if (needs_input) cmd->add_option("--archive,-a", c.archive, "input archive (default stdin)");
  if (writes_archive) {
    cmd->add_option("--output,-o", c.output, "output archive (default stdout)");
    if (needs_input) cmd->add_flag("--in-place", c.in_place, "rewrite the input archive");
  }
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

void write_run_artifacts(const fs::path& dir, const std::string& stem, const EvolutionResult& result) {
  fs::create_directories(dir);
  std::ostringstream csv;
  write_stats_csv(csv, result.stats);
  write_text(dir / (stem + "_stats.csv"), csv.str());
  write_text(dir / (stem + "_fitness.svg"), svg_fitness_curves(result.stats, stem));
}

GeneratorKind kind_from_flags(const std::string& name, double p, int m, int branching, int rows,
                              int cols) {
  GeneratorKind kind = parse_kind(name);
  if (auto* er = std::get_if<ErdosRenyi>(&kind)) er->p = p;
  if (auto* pa = std::get_if<PreferentialAttachment>(&kind)) pa->m = m;
  if (auto* tree = std::get_if<StructuredTree>(&kind)) tree->branching = branching;
  if (auto* grid = std::get_if<Grid>(&kind)) *grid = Grid{rows, cols};
  return kind;
}

ProjectionModel read_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open model '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return load_model(text.str());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instance-space analysis for the Hamiltonian completion problem"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "hcpspace 0.1.0");
  Common c;

  // gen
  auto* gen = app.add_subcommand("gen", "generate instances");
  add_common(gen, c, false, true);
  std::string kind = "erdos_renyi";
  double p = 0.5;
  int pa_m = 2;
  int branching = 2;
  int rows = 0;
  int cols = 0;
  int count = 1;
  bool sweep = false;
  gen->add_option("--kind", kind, "erdos_renyi, circle, grid, star, preferential_attachment, structured_tree");
  gen->add_option("--p", p, "edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--m", pa_m, "attachment edges per node");
  gen->add_option("--branching", branching, "tree branching factor");
  gen->add_option("--rows", rows, "grid rows (0: most square)");
  gen->add_option("--cols", cols, "grid columns");
  gen->add_option("--count", count, "instances to draw (seeds derived from --seed)")->check(CLI::PositiveNumber);
  gen->add_flag("--sweep", sweep, "the standard parameter sweep over all kinds");

  // solve
  auto* solve = app.add_subcommand("solve", "solve instances, filling hcn and timings");
  add_common(solve, c, true, true);
  bool exact = false;
  bool heuristic = false;
  std::optional<int> repeats;
  std::optional<int> exact_limit;
  std::optional<int> restarts;
  solve->add_flag("--exact", exact, "run the exact solver");
  solve->add_flag("--heuristic", heuristic, "run the multi-start local search");
  solve->add_option("--repeats", repeats, "timed solves per measurement")->check(CLI::PositiveNumber);
  solve->add_option("--exact-limit", exact_limit, "largest n for the exact solver");
  solve->add_option("--restarts", restarts, "local search restarts")->check(CLI::PositiveNumber);

  // evolve
  auto* evolve = app.add_subcommand("evolve", "runtime-difference evolution runs");
  add_common(evolve, c, false, true);
  evolve->add_option("--archive,-a", c.archive, "archive to append to");
  std::optional<int> runs;
  std::optional<int> generations;
  std::optional<int> workers;
  int first_run = 0;
  evolve->add_option("--runs", runs, "number of runs");
  evolve->add_option("--first-run", first_run, "index of the first run");
  evolve->add_option("--generations", generations, "generations per run");
  evolve->add_option("--workers", workers, "evaluation threads");
  evolve->add_option("--out", c.out_dir, "directory for stats CSV and fitness curves");

  // fill
  auto* fill = app.add_subcommand("fill", "novelty or target-point landscape filling");
  add_common(fill, c, true, true);
  std::string model_path;
  std::vector<double> target;
  bool auto_target = false;
  fill->add_option("--model", model_path, "projection model")->required();
  fill->add_option("--target", target, "target point x y (default: novelty)")->expected(2);
  fill->add_flag("--auto-target", auto_target, "target the emptiest landscape spot");
  fill->add_option("--runs", runs, "number of runs");
  fill->add_option("--first-run", first_run, "index of the first run");
  fill->add_option("--generations", generations, "generations per run");
  fill->add_option("--workers", workers, "evaluation threads");
  fill->add_option("--out", c.out_dir, "directory for stats CSV and fitness curves");

  // features
  auto* features = app.add_subcommand("features", "compute the ten graph features");
  add_common(features, c, true, true);
  std::string csv_path;
  features->add_option("--csv", csv_path, "also write a feature CSV");

  // fit-pca
  auto* fit = app.add_subcommand("fit-pca", "fit the projection model");
  add_common(fit, c, true, false);
  fit->add_option("--model", model_path, "model file to write")->required();

  // project
  auto* proj = app.add_subcommand("project", "project records with a frozen model");
  add_common(proj, c, true, true);
  proj->add_option("--model", model_path, "projection model")->required();

  // classify
  auto* classify = app.add_subcommand("classify", "kNN dominance classification");
  add_common(classify, c, true, false);
  std::optional<int> knn_k;
  std::uint64_t split_seed = 0;
  std::string report_path;
  std::string misclassified_path;
  classify->add_option("--k", knn_k, "neighbours")->check(CLI::PositiveNumber);
  classify->add_option("--split-seed", split_seed, "seed of the 50/50 split");
  classify->add_option("--report", report_path, "report CSV (default stdout)");
  classify->add_option("--misclassified", misclassified_path, "misclassified ids, one per line");

  // plot
  auto* plot = app.add_subcommand("plot", "write SVG figures");
  add_common(plot, c, true, false);
  std::string color = "runtime_diff";
  std::vector<double> clamp;
  double bin = 0.0;
  plot->add_option("--model", model_path, "projection model (adds the coefficient chart)");
  plot->add_option("--out", c.out_dir, "figure directory")->required();
  plot->add_option("--color", color, "runtime_diff or a feature name");
  plot->add_option("--clamp", clamp, "colour range lo hi, e.g. -2 3 (default: data range)")->expected(2);
  plot->add_option("--bin", bin, "histogram bin width in seconds");
  plot->add_option("--k", knn_k, "neighbours for the decision regions");
  plot->add_option("--split-seed", split_seed, "seed of the 50/50 split");

  // stats
  auto* stats = app.add_subcommand("stats", "per-provenance summary of an archive");
  add_common(stats, c, true, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (gen->parsed()) {
      const auto config = c.config();
      std::vector<InstanceRecord> out;
      if (sweep) {
        out = generate_records(config);
      } else {
        const auto k = kind_from_flags(kind, p, pa_m, branching, rows, cols);
        for (int i = 0; i < count; ++i) {
          const std::uint64_t s = count == 1 ? config.seed : derive_seed(config.seed, static_cast<std::uint64_t>(i));
          out.push_back(generator_record({k, config.n, s}));
        }
      }
      c.write_output(out);
    } else if (solve->parsed()) {
      auto config = c.config();
      if (repeats) config.timing_repeats = *repeats;
      if (exact_limit) config.exact_limit = *exact_limit;
      if (restarts) config.msls.restarts = *restarts;
      if (!exact && !heuristic) exact = heuristic = true;
      auto records = c.read_input();
      for (std::size_t i = 0; i < records.size(); ++i) {
        try {
          solve_records(std::span(records).subspan(i, 1), config.solver_options(), exact, heuristic);
        } catch (const std::exception& e) {
          throw std::runtime_error("record line " + std::to_string(i + 1) + ": " + e.what());
        }
      }
      c.write_output(records);
    } else if (evolve->parsed()) {
      auto config = c.config();
      if (generations) config.evolution.generations = *generations;
      if (workers) config.evolution.workers = *workers;
      const int run_count = runs.value_or(config.runs.hardness);
      for (int r = first_run; r < first_run + run_count; ++r) {
        auto run = evolve_hardness(config, r, first_run + run_count);
        compute_features(run.records);
        c.append_output(run.records);
        if (!c.out_dir.empty()) write_run_artifacts(c.out_dir, "hardness_" + std::to_string(r), run.result);
        std::cerr << "hardness run " << r << ": " << run.records.size() << " records, best fitness "
                  << run.result.hall_of_fame.best().evaluation.fitness << " s\n";
      }
    } else if (fill->parsed()) {
      auto config = c.config();
      if (generations) config.evolution.generations = *generations;
      if (workers) config.evolution.workers = *workers;
      const auto model = read_model(model_path);
      auto archive = c.read_input();
      project_records(archive, model);
      std::optional<Point2> fixed;
      if (!target.empty()) fixed = Point2{target[0], target[1]};
      const bool targeted = fixed || auto_target;
      const int run_count = runs.value_or(targeted ? config.runs.target : config.runs.novelty);
      for (int r = first_run; r < first_run + run_count; ++r) {
        std::optional<Point2> goal = fixed;
        if (!goal && auto_target) {
          std::vector<Point2> landscape;
          for (const auto& rec : archive) landscape.push_back(*rec.point());
          goal = emptiest_point(landscape);
        }
        auto run = fill_landscape(config, archive, model, goal, r);
        c.append_output(run.records);
        archive.insert(archive.end(), run.records.begin(), run.records.end());
        const std::string stem = (goal ? "target_" : "novelty_") + std::to_string(r);
        if (!c.out_dir.empty()) write_run_artifacts(c.out_dir, stem, run.result);
        std::cerr << stem << ": " << run.records.size() << " records\n";
      }
    } else if (features->parsed()) {
      auto records = c.read_input();
      compute_features(records);
      if (!csv_path.empty()) {
        std::ostringstream csv;
        write_features_csv(csv, records);
        write_text(csv_path, csv.str());
      }
      c.write_output(records);
    } else if (fit->parsed()) {
      auto records = c.read_input();
      for (auto& r : records) {
        if (!r.features) r.features = feature_vector(r.graph()).values();
      }
      const auto model = fit_model(records);
      write_text(model_path, save_model(model));
      std::cerr << "fitted on " << model.sample_count << " records; variance explained "
                << model.variance_explained[0] << " + " << model.variance_explained[1] << "\n";
    } else if (proj->parsed()) {
      const auto model = read_model(model_path);
      auto records = c.read_input();
      project_records(records, model);
      c.write_output(records);
    } else if (classify->parsed()) {
      const auto config = c.config();
      const auto records = c.read_input();
      const auto report = classify_records(records, knn_k.value_or(config.knn_k), split_seed);
      std::ostringstream csv;
      write_report_csv(csv, report);
      if (report_path.empty()) {
        std::cout << csv.str();
      } else {
        write_text(report_path, csv.str());
      }
      if (!misclassified_path.empty()) {
        std::ostringstream ids;
        for (auto id : report.misclassified) ids << format_id(id) << '\n';
        write_text(misclassified_path, ids.str());
      }
      std::cerr << "accuracy " << report.accuracy << " on " << report.test_size << " test records\n";
    } else if (plot->parsed()) {
      const auto config = c.config();
      const auto records = c.read_input();
      std::optional<ProjectionModel> model;
      if (!model_path.empty()) model = read_model(model_path);
      FigureOptions fo;
      fo.color_field = color;
      if (!clamp.empty()) {
        fo.clamp = std::pair{clamp[0], clamp[1]};
      }
      if (fo.clamp && !(fo.clamp->second > fo.clamp->first)) throw InvalidArgument("--clamp needs lo < hi");
      fo.histogram_bin = bin;
      fo.knn_k = knn_k.value_or(config.knn_k);
      fo.split_seed = split_seed;
      for (const auto& path : write_figures(records, model ? &*model : nullptr, c.out_dir, fo)) {
        std::cout << path.string() << '\n';
      }
    } else if (stats->parsed()) {
      write_summary(std::cout, c.read_input());
    }
  } catch (const std::exception& e) {
    std::cerr << "hcpspace: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
