#include "hcp/archive.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include "hcp/error.hpp"
#include "hcp/features.hpp"

namespace hcp {

namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kKnownKeys[] = {
    "id", "n", "edge_hex", "provenance", "fitness", "t_exact", "t_heuristic",
    "hcn_exact", "hcn_heuristic", "features", "px", "py"};

bool is_known(const std::string& key) {
  for (auto k : kKnownKeys) {
    if (k == key) return true;
  }
  return false;
}

template <typename T>
std::optional<T> optional_field(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if constexpr (std::is_same_v<T, double>) {
    if (!it->is_number()) throw FormatError(std::string("field '") + key + "' must be a number");
  } else {
    if (!it->is_number_integer()) {
      throw FormatError(std::string("field '") + key + "' must be an integer");
    }
  }
  return it->get<T>();
}

}  // namespace

std::string format_id(std::uint64_t id) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(id));
  return buf;
}

std::uint64_t parse_id(std::string_view text) {
  if (text.size() != 16) throw FormatError("id must be 16 hex digits");
  std::uint64_t id = 0;
  for (char c : text) {
    int v = -1;
    if (c >= '0' && c <= '9') v = c - '0';
    if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
    if (v < 0) throw FormatError("id must be lowercase hex");
    id = (id << 4) | static_cast<std::uint64_t>(v);
  }
  return id;
}

InstanceRecord InstanceRecord::from_graph(const Graph& g, Provenance provenance) {
  InstanceRecord r;
  r.id = content_hash(g);
  r.n = g.n();
  r.edge_hex = to_hex(g);
  r.provenance = std::move(provenance);
  return r;
}

std::optional<Point2> InstanceRecord::point() const {
  if (!px || !py) return std::nullopt;
  return Point2{*px, *py};
}

void validate(const InstanceRecord& r) {
  const Graph g = r.graph();
  if (content_hash(g) != r.id) throw FormatError("id does not match edge_hex");
  if (r.fitness && r.t_exact && r.t_heuristic &&
      std::abs(*r.fitness - (*r.t_heuristic - *r.t_exact)) > 1e-9) {
    throw FormatError("fitness differs from t_heuristic - t_exact");
  }
  for (auto t : {r.t_exact, r.t_heuristic}) {
    if (t && !(*t >= 0.0)) throw FormatError("timings must be non-negative");
  }
  for (auto h : {r.hcn_exact, r.hcn_heuristic}) {
    if (h && (*h < 0 || *h > r.n)) throw FormatError("completion number out of range");
  }
  if (r.hcn_exact && r.hcn_heuristic && *r.hcn_heuristic < *r.hcn_exact) {
    throw FormatError("heuristic completion number below the exact optimum");
  }
  if (r.px.has_value() != r.py.has_value()) throw FormatError("px and py must come together");
  if (r.features) {
    for (double x : *r.features) {
      if (!std::isfinite(x)) throw FormatError("non-finite feature value");
    }
  }
}

Json to_json(const InstanceRecord& r) {
  Json j;
  j["id"] = format_id(r.id);
  j["n"] = r.n;
  j["edge_hex"] = r.edge_hex;
  Json prov;
  if (const auto* gen = std::get_if<GeneratorOrigin>(&r.provenance)) {
    prov["type"] = "generator";
    prov["kind"] = gen->kind;
    prov["label"] = gen->label;
  } else {
    const auto& evo = std::get<EvolvedOrigin>(r.provenance);
    prov["type"] = "evolved";
    prov["run_id"] = evo.run_id;
    prov["generation"] = evo.generation;
    prov["mode"] = evo.mode;
    if (evo.score) prov["score"] = *evo.score;
  }
  j["provenance"] = std::move(prov);
  if (r.fitness) j["fitness"] = *r.fitness;
  if (r.t_exact) j["t_exact"] = *r.t_exact;
  if (r.t_heuristic) j["t_heuristic"] = *r.t_heuristic;
  if (r.hcn_exact) j["hcn_exact"] = *r.hcn_exact;
  if (r.hcn_heuristic) j["hcn_heuristic"] = *r.hcn_heuristic;
  if (r.features) {
    Json f;
    for (std::size_t k = 0; k < kFeatureCount; ++k) f[std::string(kFeatureNames[k])] = (*r.features)[k];
    j["features"] = std::move(f);
  }
  if (r.px) j["px"] = *r.px;
  if (r.py) j["py"] = *r.py;
  for (const auto& [key, value] : r.extra.items()) j[key] = value;
  return j;
}

InstanceRecord from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("record must be a JSON object");
  InstanceRecord r;
  try {
    r.id = parse_id(j.at("id").get<std::string>());
    r.n = j.at("n").get<int>();
    r.edge_hex = j.at("edge_hex").get<std::string>();
    const auto& prov = j.at("provenance");
    const auto type = prov.at("type").get<std::string>();
    if (type == "generator") {
      r.provenance = GeneratorOrigin{prov.at("kind").get<std::string>(),
                                     prov.value("label", prov.at("kind").get<std::string>())};
    } else if (type == "evolved") {
      EvolvedOrigin evo;
      evo.run_id = prov.at("run_id").get<std::uint64_t>();
      evo.generation = prov.at("generation").get<int>();
      evo.mode = prov.at("mode").get<std::string>();
      evo.score = optional_field<double>(prov, "score");
      r.provenance = std::move(evo);
    } else {
      throw FormatError("unknown provenance type '" + type + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed record: ") + e.what());
  }
  r.fitness = optional_field<double>(j, "fitness");
  r.t_exact = optional_field<double>(j, "t_exact");
  r.t_heuristic = optional_field<double>(j, "t_heuristic");
  r.hcn_exact = optional_field<int>(j, "hcn_exact");
  r.hcn_heuristic = optional_field<int>(j, "hcn_heuristic");
  r.px = optional_field<double>(j, "px");
  r.py = optional_field<double>(j, "py");
  if (const auto it = j.find("features"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw FormatError("features must be an object");
    FeatureArray values{};
    for (std::size_t k = 0; k < kFeatureCount; ++k) {
      const auto f = it->find(std::string(kFeatureNames[k]));
      if (f == it->end() || !f->is_number()) {
        throw FormatError("feature '" + std::string(kFeatureNames[k]) + "' missing");
      }
      values[k] = f->get<double>();
    }
    r.features = values;
  }
  for (const auto& [key, value] : j.items()) {
    if (!is_known(key)) r.extra[key] = value;
  }
  validate(r);
  return r;
}

std::string to_line(const InstanceRecord& record) { return to_json(record).dump(); }

InstanceRecord parse_line(std::string_view line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  return from_json(j);
}

std::vector<InstanceRecord> read_archive(std::istream& in) {
  std::vector<InstanceRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_line(line));
    } catch (const std::exception& e) {
      throw FormatError("archive line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<InstanceRecord> read_archive(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open archive '" + path.string() + "'");
  return read_archive(in);
}

void write_archive(std::ostream& out, std::span<const InstanceRecord> records) {
  for (const auto& r : records) out << to_line(r) << '\n';
}

void replace_archive(const std::filesystem::path& path, std::span<const InstanceRecord> records) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw FormatError("cannot write '" + tmp.string() + "'");
    write_archive(out, records);
    if (!out.flush()) throw FormatError("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

ArchiveWriter::ArchiveWriter(const std::filesystem::path& path) : path_(path) {
  fd_ = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) {
    throw FormatError("cannot open archive '" + path.string() + "': " + std::strerror(errno));
  }
}

ArchiveWriter::~ArchiveWriter() {
  if (fd_ >= 0) ::close(fd_);
}

void ArchiveWriter::write_all(std::string_view bytes) {
  while (!bytes.empty()) {
    const auto written = ::write(fd_, bytes.data(), bytes.size());
    if (written < 0) {
      if (errno == EINTR) continue;
      throw FormatError("append to '" + path_.string() + "' failed: " + std::strerror(errno));
    }
    bytes.remove_prefix(static_cast<std::size_t>(written));
  }
}

void ArchiveWriter::append(const InstanceRecord& record) {
  const std::string line = to_line(record) + '\n';
  std::lock_guard lock(mutex_);
  write_all(line);
}

void ArchiveWriter::append(std::span<const InstanceRecord> records) {
  for (const auto& r : records) append(r);
}

bool matches_tag(const InstanceRecord& record, std::string_view tag) {
  const auto colon = tag.find(':');
  const auto head = tag.substr(0, colon);
  const auto tail = colon == std::string_view::npos ? std::string_view{} : tag.substr(colon + 1);
  if (const auto* gen = std::get_if<GeneratorOrigin>(&record.provenance)) {
    return head == "generator" && (tail.empty() || tail == gen->kind);
  }
  const auto& evo = std::get<EvolvedOrigin>(record.provenance);
  return head == "evolved" && (tail.empty() || tail == evo.mode);
}

std::vector<InstanceRecord> footprint(std::span<const InstanceRecord> records, std::string_view tag) {
  std::vector<InstanceRecord> out;
  for (const auto& r : records) {
    if (matches_tag(r, tag)) out.push_back(r);
  }
  return out;
}

}  // namespace hcp
