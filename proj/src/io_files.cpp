#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <sstream>

#include "modelset/errors.hpp"
#include "modelset/io.hpp"
#include "modelset/scheme.hpp"

namespace modelset::io {

namespace {

const char* kAxis[] = {"x", "y", "z"};

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(2) << v;
  return os.str();
}

struct Svg {
  double width = 640;
  double height = 360;
  double margin = 40;
  std::ostringstream body;

  std::string finish(const std::string& title) const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << margin << "\" y=\"20\" font-family=\"sans-serif\" font-size=\"13\">" << title
       << "</text>\n"
       << body.str() << "</svg>\n";
    return os.str();
  }
  void line(double x0, double y0, double x1, double y1, const char* stroke, double w = 1.0) {
    body << "<line x1=\"" << fmt(x0) << "\" y1=\"" << fmt(y0) << "\" x2=\"" << fmt(x1) << "\" y2=\"" << fmt(y1)
         << "\" stroke=\"" << stroke << "\" stroke-width=\"" << w << "\"/>\n";
  }
  void label(double x, double y, const std::string& text) {
    body << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(y)
         << "\" font-family=\"sans-serif\" font-size=\"10\">" << text << "</text>\n";
  }
};

}  // namespace

void write_points_csv(const IndexedPointSet& p, std::ostream& out) {
  const bool backed = p.scheme_backed();
  const int rank = backed ? p.scheme->rank() : 0;
  const int m = backed ? p.scheme->internal_dim() : 0;
  std::vector<std::string> cols;
  for (int i = 0; i < rank; ++i) cols.push_back("n" + std::to_string(i));
  for (int i = 0; i < p.dim; ++i) cols.emplace_back(kAxis[i]);
  for (int i = 0; i < m; ++i) cols.push_back(std::string("star_") + kAxis[i]);
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
  for (std::size_t k = 0; k < p.size(); ++k) {
    bool first = true;
    auto put = [&](const std::string& s) {
      out << (first ? "" : ",") << s;
      first = false;
    };
    for (int i = 0; i < rank; ++i) put(std::to_string(p.index[k][i]));
    for (int i = 0; i < p.dim; ++i) put(num(p.physical[k][i]));
    for (int i = 0; i < m; ++i) put(num(p.star[k][i]));
    out << '\n';
  }
}

void write_peaks_csv(const PeakTable& t, int dim, std::ostream& out) {
  for (int i = 0; i < dim; ++i) out << 'k' << kAxis[i] << ',';
  out << "re,im,intensity,is_control\n";
  auto rows = [&](const std::vector<Peak>& v) {
    for (const auto& p : v) {
      for (int i = 0; i < dim; ++i) out << num(p.k[i]) << ',';
      const auto& a = p.amplitude_by_box.back();
      out << num(a.real()) << ',' << num(a.imag()) << ',' << num(p.intensity) << ',' << (p.is_control ? 1 : 0)
          << '\n';
    }
  };
  rows(t.entries);
  rows(t.controls);
}

void write_almost_periods_csv(const AlmostPeriods& a, int dim, std::ostream& out) {
  for (int i = 0; i < dim; ++i) out << kAxis[i] << ',';
  out << "d\n";
  for (const auto& e : a.members) {
    for (int i = 0; i < dim; ++i) out << num(e.delta.vec[i]) << ',';
    out << num(e.d) << '\n';
  }
}

std::string diffraction_svg(const PeakTable& t) {
  Svg svg;
  double kmax = 0.0;
  double imax = 0.0;
  for (const auto* v : {&t.entries, &t.controls}) {
    for (const auto& p : *v) {
      kmax = std::max(kmax, norm(p.k));
      imax = std::max(imax, p.intensity);
    }
  }
  if (kmax <= 0.0) kmax = 1.0;
  if (imax <= 0.0) imax = 1.0;
  const double x0 = svg.margin;
  const double y0 = svg.height - svg.margin;
  const double w = svg.width - 2 * svg.margin;
  const double h = svg.height - 2 * svg.margin;
  svg.line(x0, y0, x0 + w, y0, "black");
  svg.line(x0, y0, x0, y0 - h, "black");
  svg.label(x0 + w - 30, y0 + 15, "|k| " + fmt(kmax));
  svg.label(x0 - 35, y0 - h, "I " + fmt(imax));
  for (const auto* v : {&t.entries, &t.controls}) {
    for (const auto& p : *v) {
      double x = x0 + w * norm(p.k) / kmax;
      double y = y0 - h * p.intensity / imax;
      svg.line(x, y0, x, std::min(y, y0 - 1.0), p.is_control ? "red" : "steelblue", 1.5);
    }
  }
  return svg.finish("diffraction intensity |S(k)|^2 (blue: candidates, red: controls)");
}

std::string reconstruction_svg(const ReconstructionReport& r, const WindowSpec* truth,
                               const std::vector<double>& stars) {
  Svg svg;
  svg.height = 160;
  double lo = INFINITY;
  double hi = -INFINITY;
  for (double s : stars) {
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  auto extend = [&](const WindowSpec& w) {
    if (w.dim() != 1) return;
    Box b = w.bounding_box();
    lo = std::min(lo, b.lo[0]);
    hi = std::max(hi, b.hi[0]);
  };
  if (truth) extend(*truth);
  if (r.estimate) extend(*r.estimate);
  if (!std::isfinite(lo) || hi <= lo) {
    lo = -1.0;
    hi = 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  const double w = svg.width - 2 * svg.margin;
  auto sx = [&](double v) { return svg.margin + w * (v - lo) / (hi - lo); };
  auto bars = [&](const WindowSpec& win, double y, const char* colour) {
    if (const auto* u = std::get_if<IntervalUnion>(&win.shape())) {
      for (const auto& c : u->components) svg.line(sx(c.lo), y, sx(c.hi), y, colour, 6);
    }
  };
  if (truth) bars(*truth, 50, "seagreen");
  if (r.estimate) bars(*r.estimate, 75, "steelblue");
  for (double s : stars) svg.line(sx(s), 95, sx(s), 110, "gray", 0.5);
  svg.label(svg.margin, 135, fmt(lo + pad));
  svg.label(svg.margin + w - 30, 135, fmt(hi - pad));
  return svg.finish("window (green: truth, blue: estimate, ticks: star images)");
}

std::string gap_chart_svg(const AlmostPeriods& a) {
  Svg svg;
  svg.height = 200;
  std::vector<double> xs;
  for (const auto& e : a.members) xs.push_back(e.delta.vec[0]);
  const double r = a.radius > 0 ? a.radius : 1.0;
  const double w = svg.width - 2 * svg.margin;
  auto sx = [&](double v) { return svg.margin + w * (v + r) / (2 * r); };
  svg.line(svg.margin, 100, svg.margin + w, 100, "black");
  for (double x : xs) svg.line(sx(x), 85, sx(x), 115, "steelblue");
  for (std::size_t i = 1; i < xs.size(); ++i) {
    double g = xs[i] - xs[i - 1];
    if (std::isfinite(a.max_gap) && std::fabs(g - a.max_gap) < 1e-9) {
      svg.line(sx(xs[i - 1]), 125, sx(xs[i]), 125, "red", 3);
    }
  }
  svg.label(svg.margin, 150, "-R = " + fmt(-r));
  svg.label(svg.margin + w - 60, 150, "R = " + fmt(r));
  std::string gap = std::isfinite(a.max_gap) ? fmt(a.max_gap) : std::string("inf");
  return svg.finish("almost periods, eps = " + fmt(a.epsilon) + ", max gap " + gap);
}

// ------------------------------------------------------------ ingest

namespace {

Box bounding_box(int dim, const std::vector<Vec>& pts) {
  Box b = Box::cube(dim, 0.0, 0.0);
  if (pts.empty()) return b;
  b.lo = b.hi = pts.front();
  for (const auto& p : pts) {
    for (int i = 0; i < dim; ++i) {
      b.lo[i] = std::min(b.lo[i], p[i]);
      b.hi[i] = std::max(b.hi[i], p[i]);
    }
  }
  for (int i = dim; i < kMaxDim; ++i) b.lo[i] = b.hi[i] = 0.0;
  return b;
}

IndexedPointSet finish_ingest(int dim, std::vector<Vec> pts, std::vector<std::string>* warnings,
                              const std::optional<Box>& region) {
  Box box;
  if (region) {
    box = *region;
    box.dim = dim;
    for (const auto& p : pts) {
      if (!box.contains(p)) throw Error(ErrorCode::ConfigError, "point outside the declared region");
    }
  } else {
    box = bounding_box(dim, pts);
    if (warnings) warnings->push_back("region not declared; using the bounding box of the points");
  }
  return IndexedPointSet::raw(dim, box, std::move(pts));
}

}  // namespace

IndexedPointSet ingest_csv(std::istream& in, std::vector<std::string>* warnings, const std::optional<Box>& region) {
  std::string line;
  std::size_t lineno = 0;
  int dim = 0;
  std::vector<Vec> pts;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (dim == 0) {
      bool header = std::any_of(line.begin(), line.end(), [](char c) { return std::isalpha(static_cast<unsigned char>(c)) && c != 'e' && c != 'E'; });
      dim = static_cast<int>(cells.size());
      if (dim < 1 || dim > kMaxDim) throw ParseError(lineno, "expected 1 to 3 columns");
      if (header) continue;
    }
    if (static_cast<int>(cells.size()) != dim) throw ParseError(lineno, "expected " + std::to_string(dim) + " columns");
    Vec v{};
    for (int i = 0; i < dim; ++i) {
      try {
        std::size_t used = 0;
        v[i] = std::stod(cells[i], &used);
        while (used < cells[i].size() && std::isspace(static_cast<unsigned char>(cells[i][used]))) ++used;
        if (used != cells[i].size()) throw std::invalid_argument("trailing text");
      } catch (const std::exception&) {
        throw ParseError(lineno, "not a number: '" + cells[i] + "'");
      }
      if (!std::isfinite(v[i])) throw ParseError(lineno, "non-finite coordinate");
    }
    pts.push_back(v);
  }
  if (dim == 0) throw ParseError(lineno, "no data");
  return finish_ingest(dim, std::move(pts), warnings, region);
}

IndexedPointSet ingest(const std::string& path, const std::string& format, std::vector<std::string>* warnings,
                       const std::optional<Box>& region) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  if (format == "csv") return ingest_csv(in, warnings, region);
  if (format != "json") throw Error(ErrorCode::ConfigError, "ingest format must be 'csv' or 'json'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto end = text.begin() + static_cast<std::ptrdiff_t>(std::min(e.byte, text.size()));
    auto line = static_cast<std::size_t>(std::count(text.begin(), end, '\n')) + 1;
    throw ParseError(line, "invalid JSON in " + path);
  }
  if (!j.contains("points") || !j.at("points").is_array()) throw ParseError(0, "missing 'points' array");
  std::vector<Vec> pts;
  int dim = 0;
  std::size_t row = 0;
  for (const auto& p : j.at("points")) {
    ++row;
    Vec v{};
    try {
      v = vec_from_json(p);
    } catch (const Error&) {
      throw ParseError(row, "point is not a coordinate list");
    }
    int k = p.is_number() ? 1 : static_cast<int>(p.size());
    if (dim == 0) dim = k;
    if (k != dim || dim < 1) throw ParseError(row, "inconsistent dimension");
    pts.push_back(v);
  }
  if (dim == 0) throw ParseError(0, "no points");
  std::optional<Box> box = region;
  if (!box && j.contains("region")) box = box_from_json(j.at("region"), dim);
  return finish_ingest(dim, std::move(pts), warnings, box);
}

}  // namespace modelset::io
