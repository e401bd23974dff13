#include "hcp/projection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <vector>

#include "hcp/eigen.hpp"
#include "hcp/error.hpp"

namespace hcp {

namespace {

constexpr std::string_view kMagic = "hcp-projection-model";
constexpr int kFormatVersion = 1;

std::uint64_t fingerprint(const std::vector<FeatureArray>& sorted_rows) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& row : sorted_rows) {
    for (double x : row) {
      std::uint64_t bits = 0;
      std::memcpy(&bits, &x, sizeof bits);
      for (int s = 0; s < 64; s += 8) {
        h ^= (bits >> s) & 0xffU;
        h *= 0x100000001b3ULL;
      }
    }
  }
  return h;
}

std::string hex_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

double parse_double(const std::string& token) {
  char* end = nullptr;
  const double x = std::strtod(token.c_str(), &end);
  if (token.empty() || end != token.c_str() + token.size()) {
    throw FormatError("projection model: bad real '" + token + "'");
  }
  return x;
}

}  // namespace

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

ProjectionModel fit_projection(std::span<const FeatureArray> input) {
  if (input.size() < 3) {
    throw InsufficientData("projection fit needs at least 3 feature vectors, got " +
                           std::to_string(input.size()));
  }
  std::vector<FeatureArray> rows(input.begin(), input.end());
  for (const auto& row : rows) {
    for (double x : row) {
      if (!std::isfinite(x)) throw InvalidArgument("non-finite feature value in training data");
    }
  }
  // Sorting makes every accumulation below independent of the input order.
  std::sort(rows.begin(), rows.end());
  if (rows.front() == rows.back()) {
    throw InsufficientData("projection fit needs distinct feature vectors");
  }

  ProjectionModel model;
  model.sample_count = rows.size();
  model.fitted_on = fingerprint(rows);
  const auto count = static_cast<double>(rows.size());

  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    double lo = rows.front()[f];
    for (const auto& row : rows) lo = std::min(lo, row[f]);
    model.offsets[f] = lo <= 0.0 ? 1.0 - lo : 0.0;
  }
  std::vector<FeatureArray> logged(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t f = 0; f < kFeatureCount; ++f) {
      logged[r][f] = std::log(rows[r][f] + model.offsets[f] + kLogGuard);
    }
  }
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    double mean = 0.0;
    for (const auto& row : logged) mean += row[f];
    mean /= count;
    double var = 0.0;
    for (const auto& row : logged) var += (row[f] - mean) * (row[f] - mean);
    var /= count;
    const double sd = std::sqrt(var);
    model.means[f] = mean;
    model.stds[f] = sd > 1e-12 * std::max(1.0, std::abs(mean)) ? sd : 0.0;
  }

  std::vector<std::size_t> kept;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (model.retained(f)) kept.push_back(f);
  }
  if (kept.size() < 2) {
    throw InsufficientData("projection fit needs at least 2 non-constant features");
  }

  SquareMatrix cov(kept.size());
  for (const auto& row : logged) {
    for (std::size_t a = 0; a < kept.size(); ++a) {
      const double za = (row[kept[a]] - model.means[kept[a]]) / model.stds[kept[a]];
      for (std::size_t b = a; b < kept.size(); ++b) {
        const double zb = (row[kept[b]] - model.means[kept[b]]) / model.stds[kept[b]];
        cov(a, b) += za * zb;
      }
    }
  }
  for (std::size_t a = 0; a < kept.size(); ++a) {
    for (std::size_t b = a; b < kept.size(); ++b) {
      cov(a, b) /= count;
      cov(b, a) = cov(a, b);
    }
  }

  const auto eig = jacobi_eigen(std::move(cov), 1e-14);
  double total = 0.0;
  for (double lambda : eig.values) total += std::max(lambda, 0.0);
  for (std::size_t c = 0; c < 2; ++c) {
    std::size_t pivot = 0;
    for (std::size_t a = 1; a < kept.size(); ++a) {
      if (std::abs(eig.vectors(a, c)) > std::abs(eig.vectors(pivot, c))) pivot = a;
    }
    const double sign = eig.vectors(pivot, c) < 0.0 ? -1.0 : 1.0;
    for (std::size_t a = 0; a < kept.size(); ++a) {
      model.components[c][kept[a]] = sign * eig.vectors(a, c);
    }
    model.eigenvalues[c] = std::max(eig.values[c], 0.0);
    model.variance_explained[c] = total > 0.0 ? model.eigenvalues[c] / total : 0.0;
  }
  return model;
}

ProjectionModel fit_projection(std::span<const FeatureVector> features) {
  std::vector<FeatureArray> rows;
  rows.reserve(features.size());
  for (const auto& fv : features) rows.push_back(fv.values());
  return fit_projection(std::span<const FeatureArray>(rows));
}

FeatureArray standardize(const ProjectionModel& model, const FeatureArray& values) {
  FeatureArray z{};
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    if (!std::isfinite(values[f])) {
      throw InvalidArgument("cannot project non-finite feature '" +
                            std::string(kFeatureNames[f]) + "'");
    }
    if (!model.retained(f)) continue;
    // Values below the training minimum are clamped so the log stays finite.
    const double shifted = std::max(values[f] + model.offsets[f], 0.0) + kLogGuard;
    z[f] = (std::log(shifted) - model.means[f]) / model.stds[f];
  }
  return z;
}

Point2 project_standardized(const ProjectionModel& model, const FeatureArray& z) {
  Point2 p;
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    p.x += model.components[0][f] * z[f];
    p.y += model.components[1][f] * z[f];
  }
  return p;
}

Point2 project(const ProjectionModel& model, const FeatureArray& values) {
  return project_standardized(model, standardize(model, values));
}

Point2 project(const ProjectionModel& model, const FeatureVector& fv) {
  return project(model, fv.values());
}

std::string save_model(const ProjectionModel& model) {
  std::ostringstream out;
  auto row = [&out](std::string_view key, auto const& values) {
    out << key;
    for (double x : values) out << ' ' << hex_double(x);
    out << '\n';
  };
  out << kMagic << ' ' << kFormatVersion << '\n';
  out << "features";
  for (auto name : kFeatureNames) out << ' ' << name;
  out << '\n';
  char fp[32];
  std::snprintf(fp, sizeof fp, "%016llx", static_cast<unsigned long long>(model.fitted_on));
  out << "fitted_on " << fp << '\n';
  out << "sample_count " << model.sample_count << '\n';
  row("offsets", model.offsets);
  row("means", model.means);
  row("stds", model.stds);
  row("component1", model.components[0]);
  row("component2", model.components[1]);
  row("eigenvalues", model.eigenvalues);
  row("variance_explained", model.variance_explained);
  out << "end\n";
  return out.str();
}

ProjectionModel load_model(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  auto next = [&](std::string_view key) {
    if (!std::getline(in, line)) {
      throw FormatError("projection model truncated before '" + std::string(key) + "'");
    }
    std::istringstream fields(line);
    std::string head;
    fields >> head;
    if (head != key) {
      throw FormatError("projection model: expected '" + std::string(key) + "', found '" +
                        head + "'");
    }
    std::vector<std::string> rest;
    for (std::string tok; fields >> tok;) rest.push_back(tok);
    return rest;
  };
  auto reals = [&](std::string_view key, auto& target) {
    const auto tokens = next(key);
    if (tokens.size() != target.size()) {
      throw FormatError("projection model: '" + std::string(key) + "' has " +
                        std::to_string(tokens.size()) + " values");
    }
    for (std::size_t k = 0; k < tokens.size(); ++k) target[k] = parse_double(tokens[k]);
  };

  const auto version = next(kMagic);
  if (version.size() != 1 || version[0] != std::to_string(kFormatVersion)) {
    throw FormatError("projection model: unsupported version");
  }
  const auto names = next("features");
  if (!std::equal(names.begin(), names.end(), kFeatureNames.begin(), kFeatureNames.end())) {
    throw FormatError("projection model: feature list does not match this build");
  }
  ProjectionModel model;
  const auto fp = next("fitted_on");
  if (fp.size() != 1) throw FormatError("projection model: bad fingerprint");
  model.fitted_on = std::strtoull(fp[0].c_str(), nullptr, 16);
  const auto samples = next("sample_count");
  if (samples.size() != 1) throw FormatError("projection model: bad sample count");
  model.sample_count = std::strtoull(samples[0].c_str(), nullptr, 10);
  reals("offsets", model.offsets);
  reals("means", model.means);
  reals("stds", model.stds);
  reals("component1", model.components[0]);
  reals("component2", model.components[1]);
  reals("eigenvalues", model.eigenvalues);
  reals("variance_explained", model.variance_explained);
  next("end");
  return model;
}

}  // namespace hcp
