#include "hcp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "hcp/error.hpp"
#include "hcp/features.hpp"

namespace hcp {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 120.0;  // room for the colour bar
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string fixed(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string compact(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;

  static Range of(std::span<const double> values) {
    Range r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (double v : values) {
      r.lo = std::min(r.lo, v);
      r.hi = std::max(r.hi, v);
    }
    if (!(r.lo <= r.hi)) return {0.0, 1.0};
    if (r.hi - r.lo < 1e-12) {
      r.lo -= 0.5;
      r.hi += 0.5;
    }
    return r;
  }

  Range padded(double fraction) const {
    const double pad = (hi - lo) * fraction;
    return {lo - pad, hi + pad};
  }
};

// Data-to-pixel mapping for one plot area.
class Canvas {
 public:
  Canvas(Range xr, Range yr, double left = kLeft, double top = kTop,
         double width = kWidth - kLeft - kRight, double height = kHeight - kTop - kBottom)
      : xr_(xr), yr_(yr), left_(left), top_(top), width_(width), height_(height) {}

  double x(double v) const { return left_ + (v - xr_.lo) / (xr_.hi - xr_.lo) * width_; }
  double y(double v) const { return top_ + height_ - (v - yr_.lo) / (yr_.hi - yr_.lo) * height_; }

  void frame(std::string& out, const std::string& x_label, const std::string& y_label) const {
    out += "<rect x=\"" + fixed(left_) + "\" y=\"" + fixed(top_) + "\" width=\"" + fixed(width_) +
           "\" height=\"" + fixed(height_) + "\" fill=\"none\" stroke=\"#333\"/>\n";
    for (int t = 0; t <= 4; ++t) {
      const double xv = xr_.lo + (xr_.hi - xr_.lo) * t / 4.0;
      const double yv = yr_.lo + (yr_.hi - yr_.lo) * t / 4.0;
      out += "<text x=\"" + fixed(x(xv)) + "\" y=\"" + fixed(top_ + height_ + 16) +
             "\" font-size=\"10\" text-anchor=\"middle\">" + compact(std::round(xv * 100) / 100) +
             "</text>\n";
      out += "<text x=\"" + fixed(left_ - 6) + "\" y=\"" + fixed(y(yv) + 3) +
             "\" font-size=\"10\" text-anchor=\"end\">" + compact(std::round(yv * 100) / 100) +
             "</text>\n";
    }
    out += "<text x=\"" + fixed(left_ + width_ / 2) + "\" y=\"" + fixed(top_ + height_ + 40) +
           "\" font-size=\"12\" text-anchor=\"middle\">" + escape(x_label) + "</text>\n";
    out += "<text x=\"" + fixed(left_ - 45) + "\" y=\"" + fixed(top_ + height_ / 2) +
           "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 " +
           fixed(left_ - 45) + " " + fixed(top_ + height_ / 2) + ")\">" + escape(y_label) +
           "</text>\n";
  }

 private:
  Range xr_;
  Range yr_;
  double left_;
  double top_;
  double width_;
  double height_;
};

std::string header(const std::string& title) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + compact(kWidth) + "\" height=\"" +
         compact(kHeight) + "\" viewBox=\"0 0 " + compact(kWidth) + " " + compact(kHeight) +
         "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<text x=\"" +
         fixed(kWidth / 2) + "\" y=\"24\" font-size=\"14\" text-anchor=\"middle\">" +
         escape(title) + "</text>\n";
}

std::string circle(double cx, double cy, double r, const std::string& fill,
                   const std::string& extra = "") {
  return "<circle cx=\"" + fixed(cx) + "\" cy=\"" + fixed(cy) + "\" r=\"" + fixed(r) +
         "\" fill=\"" + fill + "\"" + extra + "/>\n";
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const std::string& colour) {
  std::string out = "<polyline fill=\"none\" stroke=\"" + colour + "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ' ';
    out += fixed(pts[i].first) + "," + fixed(pts[i].second);
  }
  return out + "\"/>\n";
}

void legend_entry(std::string& out, double x, double y, const std::string& colour,
                  const std::string& label) {
  out += "<rect x=\"" + fixed(x) + "\" y=\"" + fixed(y - 8) +
         "\" width=\"10\" height=\"10\" fill=\"" + colour + "\"/>\n";
  out += "<text x=\"" + fixed(x + 14) + "\" y=\"" + fixed(y + 1) + "\" font-size=\"10\">" +
         escape(label) + "</text>\n";
}

constexpr const char* kExactColour = "#2166ac";
constexpr const char* kHeuristicColour = "#b2182b";

}  // namespace

std::string gradient_color(double value, double lo, double hi) {
  double t = hi > lo ? (value - lo) / (hi - lo) : 0.5;
  if (!std::isfinite(t)) t = 0.5;
  t = std::clamp(t, 0.0, 1.0);
  // Blue (33, 102, 172) to red (178, 24, 43).
  const auto mix = [t](int a, int b) {
    return static_cast<int>(std::lround(a + (b - a) * t));
  };
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", mix(33, 178), mix(102, 24), mix(172, 43));
  return buf;
}

std::string svg_scatter(std::span<const ScatterPoint> points, const ScatterOptions& options) {
  if (points.empty()) throw InvalidArgument("scatter plot needs at least one point");
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> vs;
  for (const auto& p : points) {
    xs.push_back(p.position.x);
    ys.push_back(p.position.y);
    vs.push_back(p.value);
  }
  const Range value_range = options.clamp ? Range{options.clamp->first, options.clamp->second}
                                          : Range::of(vs);
  const Canvas canvas(Range::of(xs).padded(0.05), Range::of(ys).padded(0.05));
  std::string out = header(options.title);
  canvas.frame(out, "component 1", "component 2");
  out += "<g id=\"points\">\n";
  for (const auto& p : points) {
    out += circle(canvas.x(p.position.x), canvas.y(p.position.y), 2.5,
                  gradient_color(p.value, value_range.lo, value_range.hi));
  }
  out += "</g>\n";
  if (options.legend) {
    const double bar_x = kWidth - kRight + 30;
    const double bar_top = kTop + 20;
    const double bar_height = kHeight - kTop - kBottom - 40;
    out += "<defs><linearGradient id=\"scale\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">"
           "<stop offset=\"0\" stop-color=\"" +
           gradient_color(0.0, 0.0, 1.0) + "\"/><stop offset=\"1\" stop-color=\"" +
           gradient_color(1.0, 0.0, 1.0) + "\"/></linearGradient></defs>\n";
    out += "<rect x=\"" + fixed(bar_x) + "\" y=\"" + fixed(bar_top) +
           "\" width=\"14\" height=\"" + fixed(bar_height) + "\" fill=\"url(#scale)\"/>\n";
    out += "<text x=\"" + fixed(bar_x + 18) + "\" y=\"" + fixed(bar_top + 8) +
           "\" font-size=\"10\">" + compact(value_range.hi) + "</text>\n";
    out += "<text x=\"" + fixed(bar_x + 18) + "\" y=\"" + fixed(bar_top + bar_height) +
           "\" font-size=\"10\">" + compact(value_range.lo) + "</text>\n";
    out += "<text id=\"color-scale\" x=\"" + fixed(bar_x - 10) + "\" y=\"" + fixed(bar_top - 8) +
           "\" font-size=\"10\">" + escape(options.color_field) + " [" +
           compact(value_range.lo) + "," + compact(value_range.hi) + "]</text>\n";
  }
  return out + "</svg>\n";
}

std::string svg_footprint(std::span<const Point2> all, std::span<const Point2> highlighted,
                          const std::string& title) {
  if (all.empty() && highlighted.empty()) throw InvalidArgument("footprint plot needs points");
  std::vector<double> xs;
  std::vector<double> ys;
  for (auto set : {all, highlighted}) {
    for (const auto& p : set) {
      xs.push_back(p.x);
      ys.push_back(p.y);
    }
  }
  const Canvas canvas(Range::of(xs).padded(0.05), Range::of(ys).padded(0.05));
  std::string out = header(title);
  canvas.frame(out, "component 1", "component 2");
  out += "<g id=\"landscape\">\n";
  for (const auto& p : all) out += circle(canvas.x(p.x), canvas.y(p.y), 2.0, "#bbbbbb");
  out += "</g>\n<g id=\"footprint\">\n";
  for (const auto& p : highlighted) out += circle(canvas.x(p.x), canvas.y(p.y), 3.0, kExactColour);
  out += "</g>\n";
  legend_entry(out, kWidth - kRight + 10, kTop + 20, "#bbbbbb", "all instances");
  legend_entry(out, kWidth - kRight + 10, kTop + 36, kExactColour, "highlighted");
  return out + "</svg>\n";
}

std::string svg_histogram(const Histogram& h, const std::string& title, const std::string& x_label) {
  if (h.counts.empty()) throw InvalidArgument("histogram has no bins");
  const double top_count = static_cast<double>(*std::max_element(h.counts.begin(), h.counts.end()));
  const Canvas canvas({h.origin, h.bin_left(h.counts.size())}, {0.0, std::max(top_count, 1.0)});
  std::string out = header(title);
  canvas.frame(out, x_label, "count");
  out += "<g id=\"bins\">\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    const double x0 = canvas.x(h.bin_left(k));
    const double x1 = canvas.x(h.bin_left(k + 1));
    const double y0 = canvas.y(static_cast<double>(h.counts[k]));
    out += "<rect x=\"" + fixed(x0) + "\" y=\"" + fixed(y0) + "\" width=\"" +
           fixed(std::max(x1 - x0 - 1.0, 0.5)) + "\" height=\"" + fixed(canvas.y(0.0) - y0) +
           "\" fill=\"" + kExactColour + "\"/>\n";
  }
  return out + "</g>\n</svg>\n";
}

std::string svg_coefficients(const ProjectionModel& model) {
  double extent = 0.0;
  for (const auto& row : model.components) {
    for (double c : row) extent = std::max(extent, std::abs(c));
  }
  extent = std::max(extent, 1e-3) * 1.1;
  const Canvas canvas({0.0, static_cast<double>(kFeatureCount)}, {-extent, extent}, kLeft, kTop,
                      kWidth - kLeft - kRight, kHeight - kTop - 130);
  std::string out = header("principal component coefficients");
  canvas.frame(out, "", "coefficient");
  const char* colours[2] = {kExactColour, kHeuristicColour};
  for (std::size_t f = 0; f < kFeatureCount; ++f) {
    for (std::size_t c = 0; c < 2; ++c) {
      const double x0 = canvas.x(static_cast<double>(f) + 0.1 + 0.4 * static_cast<double>(c));
      const double x1 = canvas.x(static_cast<double>(f) + 0.5 + 0.4 * static_cast<double>(c));
      const double v = model.components[c][f];
      const double ya = canvas.y(std::max(v, 0.0));
      const double yb = canvas.y(std::min(v, 0.0));
      out += "<rect x=\"" + fixed(x0) + "\" y=\"" + fixed(ya) + "\" width=\"" + fixed(x1 - x0) +
             "\" height=\"" + fixed(yb - ya) + "\" fill=\"" + colours[c] + "\"/>\n";
    }
    const double lx = canvas.x(static_cast<double>(f) + 0.5);
    const double ly = kHeight - 125;
    out += "<text x=\"" + fixed(lx) + "\" y=\"" + fixed(ly) +
           "\" font-size=\"10\" text-anchor=\"end\" transform=\"rotate(-45 " + fixed(lx) + " " +
           fixed(ly) + ")\">" + std::string(kFeatureNames[f]) + "</text>\n";
  }
  legend_entry(out, kWidth - kRight + 10, kTop + 20, colours[0],
               "component 1 (" + compact(std::round(model.variance_explained[0] * 1000) / 10) + "%)");
  legend_entry(out, kWidth - kRight + 10, kTop + 36, colours[1],
               "component 2 (" + compact(std::round(model.variance_explained[1] * 1000) / 10) + "%)");
  return out + "</svg>\n";
}

std::string svg_fitness_curves(std::span<const GenerationStats> stats, const std::string& title) {
  if (stats.empty()) throw InvalidArgument("fitness plot needs at least one generation");
  std::vector<double> gens;
  std::vector<double> fitness;
  std::vector<double> edges;
  for (const auto& s : stats) {
    gens.push_back(s.generation);
    fitness.insert(fitness.end(), {s.min, s.mean, s.max});
    edges.push_back(s.mean_edges);
  }
  const double panel = (kHeight - kTop - kBottom - 40) / 2;
  const Canvas top(Range::of(gens), Range::of(fitness).padded(0.05), kLeft, kTop,
                   kWidth - kLeft - kRight, panel);
  const Canvas bottom(Range::of(gens), Range::of(edges).padded(0.05), kLeft, kTop + panel + 40,
                      kWidth - kLeft - kRight, panel);
  std::string out = header(title);
  top.frame(out, "", "fitness (s)");
  bottom.frame(out, "generation", "mean edges");
  const char* colours[3] = {kExactColour, "#4d4d4d", kHeuristicColour};
  const char* names[3] = {"min", "mean", "max"};
  for (int series = 0; series < 3; ++series) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& s : stats) {
      const double v = series == 0 ? s.min : series == 1 ? s.mean : s.max;
      pts.emplace_back(top.x(s.generation), top.y(v));
    }
    out += polyline(pts, colours[series]);
    legend_entry(out, kWidth - kRight + 10, kTop + 20 + 16 * series, colours[series], names[series]);
  }
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : stats) pts.emplace_back(bottom.x(s.generation), bottom.y(s.mean_edges));
  out += polyline(pts, "#1b7837");
  return out + "</svg>\n";
}

std::string svg_decision_regions(std::span<const LabeledPoint> train, int k, int resolution) {
  if (train.empty()) throw InvalidArgument("decision plot needs training points");
  if (resolution < 2) throw InvalidArgument("decision plot resolution must be >= 2");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& p : train) {
    xs.push_back(p.position.x);
    ys.push_back(p.position.y);
  }
  const Range xr = Range::of(xs).padded(0.05);
  const Range yr = Range::of(ys).padded(0.05);
  const Canvas canvas(xr, yr);
  std::string out = header("kNN decision regions (k = " + std::to_string(k) + ")");
  out += "<g id=\"regions\" opacity=\"0.35\">\n";
  const double dx = (xr.hi - xr.lo) / resolution;
  const double dy = (yr.hi - yr.lo) / resolution;
  for (int r = 0; r < resolution; ++r) {
    for (int c = 0; c < resolution; ++c) {
      const Point2 centre{xr.lo + (c + 0.5) * dx, yr.lo + (r + 0.5) * dy};
      const auto label = knn_classify(train, centre, k);
      const double x0 = canvas.x(xr.lo + c * dx);
      const double y0 = canvas.y(yr.lo + (r + 1) * dy);
      out += "<rect x=\"" + fixed(x0) + "\" y=\"" + fixed(y0) + "\" width=\"" +
             fixed(canvas.x(xr.lo + (c + 1) * dx) - x0) + "\" height=\"" +
             fixed(canvas.y(yr.lo + r * dy) - y0) + "\" fill=\"" +
             (label == DominanceLabel::exact_faster ? kExactColour : kHeuristicColour) + "\"/>\n";
    }
  }
  out += "</g>\n<g id=\"training\">\n";
  for (const auto& p : train) {
    out += circle(canvas.x(p.position.x), canvas.y(p.position.y), 2.0,
                  p.label == DominanceLabel::exact_faster ? kExactColour : kHeuristicColour,
                  " stroke=\"white\" stroke-width=\"0.5\"");
  }
  out += "</g>\n";
  canvas.frame(out, "component 1", "component 2");
  legend_entry(out, kWidth - kRight + 10, kTop + 20, kExactColour, "exact faster");
  legend_entry(out, kWidth - kRight + 10, kTop + 36, kHeuristicColour, "heuristic faster");
  return out + "</svg>\n";
}

}  // namespace hcp
