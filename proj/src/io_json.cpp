#include <algorithm>
#include <iterator>
#include <cmath>

#include "modelset/errors.hpp"
#include "modelset/fixtures.hpp"
#include "modelset/io.hpp"

namespace modelset::io {

const char* version() { return "0.1.0"; }

namespace {

Rational parse_rational(const Json& v) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number()) return Rational::from_double(v.get<double>());
  throw Error(ErrorCode::ConfigError, "expected a rational number, got " + v.dump());
}

double as_double(const Json& v, std::int64_t radicand) {
  if (v.is_number()) return v.get<double>();
  return parse_exact(v, radicand).to_double();
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorCode::ConfigError, std::string("missing field '") + key + "'");
  return j.at(key);
}

Json opt_double(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

bool is_exact_value(const Json& v) { return v.is_array() || v.is_string() || v.is_number_integer(); }

QuadraticNumber parse_exact(const Json& v, std::int64_t radicand) {
  if (v.is_array()) {
    if (v.size() != 2) throw Error(ErrorCode::ConfigError, "exact values are [a, b] pairs");
    Rational b = parse_rational(v[1]);
    if (!b.is_zero() && radicand == 0) throw Error(ErrorCode::ConfigError, "irrational part needs a radicand D");
    return QuadraticNumber(parse_rational(v[0]), b, b.is_zero() ? 0 : radicand);
  }
  return QuadraticNumber(parse_rational(v));
}

LatticeScheme scheme_from_json(const Json& j) {
  if (j.contains("fixture")) {
    auto name = j.at("fixture").get<std::string>();
    if (name == "fibonacci") return fixtures::fibonacci_scheme();
    if (name == "silver_mean") return fixtures::silver_mean_scheme();
    if (name == "ammann_beenker") return fixtures::ammann_beenker_scheme();
    if (name == "integer_crystal") return fixtures::integer_crystal_scheme(j.value("d", 1));
    throw Error(ErrorCode::ConfigError, "unknown scheme fixture '" + name + "'");
  }
  const int d = require(j, "d").get<int>();
  const int m = require(j, "m").get<int>();
  const Json& basis = require(j, "basis");
  Json arith = j.value("arithmetic", Json{{"mode", "float"}});
  const std::string mode = arith.value("mode", "float");
  if (!basis.is_array()) throw Error(ErrorCode::ConfigError, "basis must be a list of rows");
  if (mode == "quadratic") {
    const auto radicand = require(arith, "D").get<std::int64_t>();
    std::vector<std::vector<QuadraticNumber>> rows;
    for (const auto& row : basis) {
      rows.emplace_back();
      for (const auto& v : row) rows.back().push_back(parse_exact(v, radicand));
    }
    return LatticeScheme::make_exact(d, m, rows, radicand);
  }
  if (mode != "float") throw Error(ErrorCode::ConfigError, "arithmetic mode must be 'float' or 'quadratic'");
  std::vector<std::vector<double>> rows;
  for (const auto& row : basis) {
    rows.emplace_back();
    for (const auto& v : row) rows.back().push_back(as_double(v, 0));
  }
  return LatticeScheme::make_float(d, m, rows, arith.value("tol", 1e-9));
}

WindowSpec window_from_json(const Json& j, std::int64_t radicand) {
  if (j.contains("fixture")) {
    auto name = j.at("fixture").get<std::string>();
    if (name == "fibonacci") return fixtures::fibonacci_window();
    if (name == "fibonacci_generic") return fixtures::fibonacci_generic_window();
    if (name == "silver_mean") return fixtures::silver_mean_window();
    if (name == "ammann_beenker") return fixtures::ammann_beenker_window();
    throw Error(ErrorCode::ConfigError, "unknown window fixture '" + name + "'");
  }
  const std::string type = require(j, "type").get<std::string>();
  const double tol = j.value("tol", 1e-9);
  if (type == "whole") return WindowSpec::whole();
  if (type == "intervals") {
    std::vector<Interval> comps;
    for (const auto& c : require(j, "components")) {
      Interval iv;
      const Json& lo = require(c, "lo");
      const Json& hi = require(c, "hi");
      iv.lo_closed = c.value("lo_closed", true);
      iv.hi_closed = c.value("hi_closed", false);
      if (is_exact_value(lo) && is_exact_value(hi) && (lo.is_array() || hi.is_array() || radicand != 0)) {
        iv.exact_lo = parse_exact(lo, radicand);
        iv.exact_hi = parse_exact(hi, radicand);
        iv.lo = iv.exact_lo->to_double();
        iv.hi = iv.exact_hi->to_double();
      } else {
        iv.lo = as_double(lo, radicand);
        iv.hi = as_double(hi, radicand);
      }
      comps.push_back(iv);
    }
    return WindowSpec::intervals(std::move(comps), tol);
  }
  if (type == "polygon") {
    const Json& verts = require(j, "vertices");
    const bool closed = j.value("closed", true);
    bool exact = radicand != 0 || std::any_of(verts.begin(), verts.end(), [](const Json& v) {
                   return v.size() == 2 && (v[0].is_array() || v[1].is_array());
                 });
    exact = exact && std::all_of(verts.begin(), verts.end(), [](const Json& v) {
              return v.size() == 2 && is_exact_value(v[0]) && is_exact_value(v[1]);
            });
    if (exact) {
      std::vector<std::array<QuadraticNumber, 2>> vs;
      for (const auto& v : verts) vs.push_back({parse_exact(v[0], radicand), parse_exact(v[1], radicand)});
      return WindowSpec::exact_polygon(std::move(vs), closed, tol);
    }
    std::vector<Vec> vs;
    for (const auto& v : verts) vs.push_back({as_double(v.at(0), radicand), as_double(v.at(1), radicand), 0.0});
    return WindowSpec::polygon(std::move(vs), closed, tol);
  }
  throw Error(ErrorCode::ConfigError, "window type must be 'intervals', 'polygon' or 'whole'");
}

Vec vec_from_json(const Json& j) {
  Vec v{};
  if (j.is_number()) {
    v[0] = j.get<double>();
    return v;
  }
  if (!j.is_array() || j.size() > kMaxDim) throw Error(ErrorCode::ConfigError, "expected a vector, got " + j.dump());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

IndexVec index_from_json(const Json& j) {
  IndexVec n{};
  if (!j.is_array() || j.size() > kMaxRank) throw Error(ErrorCode::ConfigError, "expected an index vector");
  for (std::size_t i = 0; i < j.size(); ++i) n[i] = j[i].get<std::int64_t>();
  return n;
}

Box box_from_json(const Json& j, int dim) {
  Box b{dim, {}, {}};
  if (j.is_array() && j.size() == 2 && j[0].is_number()) return Box::cube(dim, j[0].get<double>(), j[1].get<double>());
  Vec lo = vec_from_json(require(j, "lo"));
  Vec hi = vec_from_json(require(j, "hi"));
  if (require(j, "lo").is_number()) {
    return Box::cube(dim, lo[0], hi[0]);
  }
  b.lo = lo;
  b.hi = hi;
  if (b.empty()) throw Error(ErrorCode::ConfigError, "region is empty");
  return b;
}

VanHoveSequence boxes_from_json(const Json& j, int dim) {
  VanHoveSequence s;
  s.dim = dim;
  s.sizes = require(j, "sizes").get<std::vector<double>>();
  if (s.sizes.empty() || !std::is_sorted(s.sizes.begin(), s.sizes.end())) {
    throw Error(ErrorCode::ConfigError, "box sizes must be nonempty and increasing");
  }
  s.centered = j.value("centered", true);
  if (j.contains("anchor")) s.anchor = vec_from_json(j.at("anchor"));
  return s;
}

// ------------------------------------------------------------ serialisation

Json to_json(const Vec& v, int dim) {
  Json a = Json::array();
  for (int i = 0; i < dim; ++i) a.push_back(v[i]);
  return a;
}

Json to_json(const IndexVec& n, int rank) {
  Json a = Json::array();
  for (int i = 0; i < rank; ++i) a.push_back(n[i]);
  return a;
}

Json to_json(const QuadraticNumber& q) {
  Json j{{"value", q.to_double()},
         {"rational", q.rational_part().str()},
         {"irrational", q.irrational_part().str()}};
  if (q.radicand() != 0) j["D"] = q.radicand();
  return j;
}

Json to_json(const Translation& t, int dim, int rank) {
  Json j{{"vec", to_json(t.vec, dim)}};
  if (t.index) j["index"] = to_json(*t.index, rank);
  return j;
}

Json to_json(const LatticeScheme& s) {
  Json basis = Json::array();
  for (int i = 0; i < s.rank(); ++i) {
    Json row = Json::array();
    for (int c = 0; c < s.rank(); ++c) {
      if (s.is_exact()) {
        const auto& q = s.exact_basis().at(i, c);
        row.push_back(Json::array({q.rational_part().str(), q.irrational_part().str()}));
      } else {
        row.push_back(s.basis(i, c));
      }
    }
    basis.push_back(row);
  }
  Json arith = s.is_exact() ? Json{{"mode", "quadratic"}, {"D", s.radicand()}} : Json{{"mode", "float"}, {"tol", s.tol()}};
  return {{"d", s.physical_dim()}, {"m", s.internal_dim()}, {"basis", basis}, {"arithmetic", arith},
          {"covolume", s.covolume()}};
}

// Loadable by window_from_json; exact coordinates become [a, b] pairs.
Json to_json(const WindowSpec& w) {
  auto pair = [](const QuadraticNumber& q) {
    return Json::array({q.rational_part().str(), q.irrational_part().str()});
  };
  const auto& shape = w.shape();
  if (const auto* u = std::get_if<IntervalUnion>(&shape)) {
    Json comps = Json::array();
    for (const auto& c : u->components) {
      Json lo = c.exact_lo ? pair(*c.exact_lo) : Json(c.lo);
      Json hi = c.exact_hi ? pair(*c.exact_hi) : Json(c.hi);
      comps.push_back({{"lo", lo}, {"hi", hi}, {"lo_closed", c.lo_closed}, {"hi_closed", c.hi_closed}});
    }
    return {{"type", "intervals"}, {"components", comps}, {"tol", w.tol()}, {"measure", measure(w)}};
  }
  if (const auto* p = std::get_if<ConvexPolygon>(&shape)) {
    Json verts = Json::array();
    if (!p->exact_vertices.empty()) {
      for (const auto& v : p->exact_vertices) verts.push_back(Json::array({pair(v[0]), pair(v[1])}));
    } else {
      for (const auto& v : p->vertices) verts.push_back(Json::array({v[0], v[1]}));
    }
    return {{"type", "polygon"}, {"vertices", verts}, {"closed", p->boundary_included}, {"tol", w.tol()},
            {"measure", measure(w)}};
  }
  return {{"type", "whole"}};
}

Json to_json(const ValidationReport& r) {
  Json den = Json::array();
  for (const auto& s : r.denseness) den.push_back({{"sample_size", s.sample_size}, {"min_gap", opt_double(s.min_gap)}});
  return {{"determinant", r.determinant}, {"covolume", r.covolume},       {"invertible", r.invertible},
          {"injective", r.injective},     {"injectivity_exact", r.injectivity_exact},
          {"injectivity_advisory", r.injectivity_advisory},               {"denseness", den},
          {"warnings", r.warnings}};
}

Json to_json(const IndexedPointSet& p, bool with_points) {
  Json j{{"dim", p.dim},
         {"region", {{"lo", to_json(p.region.lo, p.dim)}, {"hi", to_json(p.region.hi, p.dim)}}},
         {"count", p.size()},
         {"scheme_backed", p.scheme_backed()}};
  if (!with_points) return j;
  const int rank = p.scheme_backed() ? p.scheme->rank() : 0;
  Json pts = Json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    Json e{{"x", to_json(p.physical[i], p.dim)}};
    if (p.scheme_backed()) e["index"] = to_json(p.index[i], rank);
    pts.push_back(e);
  }
  j["points"] = pts;
  return j;
}

Json to_json(const ClusterReport& r, int dim) {
  Json cl = Json::array();
  for (const auto& c : r.clusters) {
    Json pts = Json::array();
    for (const auto& v : c.points) pts.push_back(to_json(v, dim));
    cl.push_back({{"multiplicity", c.multiplicity}, {"points", pts}});
  }
  return {{"radius", r.radius}, {"anchors", r.anchors}, {"count", r.clusters.size()}, {"clusters", cl}};
}

Json to_json(const RepetitionReport& r, int dim, int rank) {
  Json m = Json::array();
  for (const auto& t : r.matches) m.push_back(to_json(t, dim, rank));
  return {{"reference_size", r.reference_size}, {"matches", r.matches.size()}, {"max_gap", opt_double(r.max_gap)},
          {"translations", m}};
}

Json to_json(const FrequencyTable& t, int dim) {
  Json rows = Json::array();
  for (std::size_t a = 0; a < t.anchors.size(); ++a) {
    rows.push_back({{"anchor", to_json(t.anchors[a], dim)}, {"frequency", t.frequency[a]}});
  }
  return {{"sizes", t.sizes}, {"rows", rows}, {"spread", t.spread}, {"truncated", t.truncated}};
}

Json to_json(const PeriodReport& r, int dim, int rank) {
  Json per = Json::array();
  for (const auto& t : r.periods) per.push_back(to_json(t, dim, rank));
  Json gen = Json::array();
  for (const auto& t : r.generators) gen.push_back(to_json(t, dim, rank));
  return {{"range", r.range}, {"count", r.periods.size()}, {"periods", per}, {"generators", gen},
          {"full_rank", r.full_rank}};
}

Json to_json(const LocalMatch& r, int dim, int rank) {
  Json j{{"close", r.close}, {"candidates", r.candidates}};
  if (r.close) j["v"] = to_json(r.v, dim, rank);
  return j;
}

Json to_json(const AutocorrelationTable& t) {
  const int rank = t.scheme ? t.scheme->rank() : 0;
  Json rows = Json::array();
  for (std::size_t k = 0; k < t.deltas.size(); ++k) {
    Json e{{"delta", to_json(t.deltas[k], t.dim)}};
    if (!t.delta_index.empty()) e["index"] = to_json(t.delta_index[k], rank);
    Json by_box = Json::array();
    for (std::size_t b = 0; b < t.eta.size(); ++b) by_box.push_back(t.eta[b][k]);
    e["eta_by_box"] = by_box;
    e["d"] = 2.0 * (t.eta0.back() - t.eta.back()[k]);
    rows.push_back(e);
  }
  return {{"radius", t.radius}, {"sizes", t.boxes.sizes}, {"eta0", t.eta0}, {"count", t.deltas.size()},
          {"deltas", rows}};
}

Json to_json(const SymdiffReport& r) { return {{"per_box", r.per_box}, {"upper", r.upper}}; }

Json to_json(const AlmostPeriods& a, int dim, int rank) {
  Json m = Json::array();
  for (const auto& e : a.members) {
    Json j = to_json(e.delta, dim, rank);
    j["d"] = e.d;
    m.push_back(j);
  }
  return {{"epsilon", a.epsilon}, {"radius", a.radius}, {"count", a.members.size()},
          {"max_gap", opt_double(a.max_gap)}, {"members", m}};
}

Json to_json(const MactResult& r, int dim, int rank) {
  return {{"close", r.close}, {"v", to_json(r.v, dim, rank)}, {"best_d", opt_double(r.best_d)},
          {"candidates", r.candidates}};
}

Json to_json(const PeakTable& t, int dim) {
  auto peaks = [&](const std::vector<Peak>& v) {
    Json a = Json::array();
    for (const auto& p : v) {
      Json amp = Json::array();
      for (const auto& c : p.amplitude_by_box) amp.push_back(Json::array({c.real(), c.imag()}));
      a.push_back({{"k", to_json(p.k, dim)}, {"amplitude_by_box", amp}, {"intensity", p.intensity}});
    }
    return a;
  };
  return {{"sizes", t.sizes}, {"max_control", t.max_control}, {"entries", peaks(t.entries)},
          {"controls", peaks(t.controls)}};
}

Json to_json(const SeparationReport& r) {
  return {{"samples", r.samples}, {"singular", r.singular}, {"fraction", r.fraction}, {"exact", r.exact}};
}

Json to_json(const TorusPoint& p) {
  Json j{{"frac", p.frac}};
  if (p.exact) {
    Json e = Json::array();
    for (const auto& q : *p.exact) e.push_back(to_json(q));
    j["exact"] = e;
  }
  return j;
}

Json to_json(const FiberReport& r, int rank) {
  Json hits = Json::array();
  for (const auto& h : r.hits) {
    hits.push_back({{"index", to_json(h.index, rank)}, {"physical", h.physical[0]}, {"star", h.star[0]}});
  }
  Json elems = Json::array();
  for (const auto& e : r.elements) {
    Json idx = Json::array();
    for (const auto& n : e.index) idx.push_back(to_json(n, rank));
    elems.push_back({{"count", e.size()}, {"indices", idx}});
  }
  Json j{{"elements", elems}, {"hits", hits}, {"multiple_boundary_points", r.multiple_boundary_points}};
  if (r.elements.size() == 2) {
    // Symmetric difference certificate, by index.
    Json diff = Json::array();
    const auto& a = r.elements[0].index;
    const auto& b = r.elements[1].index;
    std::vector<IndexVec> sa(a.begin(), a.end());
    std::vector<IndexVec> sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    std::vector<IndexVec> out;
    std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(out));
    for (const auto& n : out) diff.push_back(to_json(n, rank));
    j["symmetric_difference"] = diff;
  }
  return j;
}

Json to_json(const ReconstructionReport& r) {
  Json j{{"insufficient_data", r.insufficient_data}, {"threshold", r.threshold}, {"components", r.components}};
  if (r.estimate) j["estimate"] = to_json(*r.estimate);
  if (r.hausdorff) j["hausdorff"] = *r.hausdorff;
  return j;
}

Json to_json(const std::vector<ContinuityRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) {
    a.push_back({{"M", r.m}, {"epsilon", r.epsilon}, {"capped", r.capped}, {"members", r.members}});
  }
  return a;
}

Json to_json(const M1Report& r, int dim, int rank) {
  Json f = Json::array();
  for (const auto& t : r.cover) f.push_back(to_json(t, dim, rank));
  return {{"card_r", r.card_r}, {"card_2r", r.card_2r}, {"stable", r.stable}, {"cover", f}};
}

Json to_json(const WeakUdReport& r) { return {{"counts", r.counts}, {"max", r.max}, {"min", r.min}}; }

Json to_json(const MeyerCertificate& c, int dim, int rank) {
  Json chain = Json::array();
  for (const auto& s : c.chain) {
    chain.push_back({{"x", to_json(s.x, dim)}, {"p", to_json(s.p, dim, rank)}, {"q", to_json(s.q, dim, rank)}});
  }
  return {{"x", to_json(c.x, dim, rank)},   {"y", to_json(c.y, dim, rank)},
          {"steps", c.chain.size()},         {"m", c.m},
          {"M", c.big_m},                    {"bound", c.f_bound},
          {"f", to_json(c.f, dim, rank)},    {"f_norm", c.f_norm},
          {"distinct_differences", c.distinct_differences},
          {"valid", c.valid},                {"chain", chain}};
}

}  // namespace modelset::io
