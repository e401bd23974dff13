#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hcp/graph.hpp"
#include "hcp/projection.hpp"

namespace hcp {

struct GeneratorOrigin {
  std::string kind;   // kind_name(), e.g. "grid"
  std::string label;  // describe(), e.g. "grid(4x4)"
  friend bool operator==(const GeneratorOrigin&, const GeneratorOrigin&) = default;
};

struct EvolvedOrigin {
  std::uint64_t run_id = 0;
  int generation = 0;
  std::string mode;            // "hardness", "novelty", "target", "custom"
  std::optional<double> score;  // the run's own objective when it is not a runtime
  friend bool operator==(const EvolvedOrigin&, const EvolvedOrigin&) = default;
};

using Provenance = std::variant<GeneratorOrigin, EvolvedOrigin>;

// One archive row. `fitness` is always the runtime difference
// t_heuristic - t_exact; landscape-filling runs keep their own objective in
// EvolvedOrigin::score.
struct InstanceRecord {
  std::uint64_t id = 0;
  int n = 0;
  std::string edge_hex;
  Provenance provenance;
  std::optional<double> fitness;
  std::optional<double> t_exact;
  std::optional<double> t_heuristic;
  std::optional<int> hcn_exact;
  std::optional<int> hcn_heuristic;
  std::optional<FeatureArray> features;
  std::optional<double> px;
  std::optional<double> py;
  nlohmann::ordered_json extra = nlohmann::ordered_json::object();  // unknown keys

  static InstanceRecord from_graph(const Graph& g, Provenance provenance);

  Graph graph() const { return from_hex(n, edge_hex); }
  std::optional<Point2> point() const;
  bool is_generator() const { return std::holds_alternative<GeneratorOrigin>(provenance); }

  friend bool operator==(const InstanceRecord&, const InstanceRecord&) = default;
};

std::string format_id(std::uint64_t id);
std::uint64_t parse_id(std::string_view text);

// Throws FormatError when the id does not match edge_hex, when fitness
// disagrees with the timings by more than 1e-9, or on malformed fields.
void validate(const InstanceRecord& record);

nlohmann::ordered_json to_json(const InstanceRecord& record);
InstanceRecord from_json(const nlohmann::ordered_json& j);

// Single line, no trailing newline.
std::string to_line(const InstanceRecord& record);
InstanceRecord parse_line(std::string_view line);

// Blank lines are skipped; errors carry the 1-based line number.
std::vector<InstanceRecord> read_archive(std::istream& in);
std::vector<InstanceRecord> read_archive(const std::filesystem::path& path);

void write_archive(std::ostream& out, std::span<const InstanceRecord> records);

// Rewrites a whole archive through a temporary file and a rename.
void replace_archive(const std::filesystem::path& path, std::span<const InstanceRecord> records);

// Appends whole lines with one write(2) each on an O_APPEND descriptor, so
// concurrent appenders never interleave partial lines.
class ArchiveWriter {
 public:
  explicit ArchiveWriter(const std::filesystem::path& path);
  ~ArchiveWriter();
  ArchiveWriter(const ArchiveWriter&) = delete;
  ArchiveWriter& operator=(const ArchiveWriter&) = delete;

  void append(const InstanceRecord& record);
  void append(std::span<const InstanceRecord> records);

 private:
  void write_all(std::string_view bytes);

  int fd_ = -1;
  std::mutex mutex_;
  std::filesystem::path path_;
};

// "generator" / "evolved" match every record of that origin;
// "generator:<kind>" and "evolved:<mode>" narrow it. Unknown tags match nothing.
bool matches_tag(const InstanceRecord& record, std::string_view tag);

std::vector<InstanceRecord> footprint(std::span<const InstanceRecord> records, std::string_view tag);

}  // namespace hcp
