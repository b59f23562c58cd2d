#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>

#include "modelset/errors.hpp"
#include "modelset/fixtures.hpp"
#include "modelset/io.hpp"
#include "modelset/parallel.hpp"
#include "modelset/rng.hpp"

namespace modelset::io {

namespace fs = std::filesystem;

namespace {

Error config_error(const std::string& what) { return Error(ErrorCode::ConfigError, what); }

// Lazily built inputs shared by the operations of one run.
class Context {
 public:
  Context(const RunConfig& config, std::vector<std::string>& warnings, std::vector<std::string>& files,
          bool write_files)
      : cfg_(config), raw_(config.raw), params_(config.params), warnings_(warnings), files_(files),
        write_(write_files) {}

  const Json& params() const { return params_; }
  std::vector<std::string>& warnings() { return warnings_; }

  bool has_scheme() const { return raw_.contains("scheme"); }

  std::shared_ptr<const LatticeScheme> scheme() {
    if (!scheme_) {
      if (!has_scheme()) {
        if (points_are_scheme_backed()) return points().scheme;
        throw config_error("operation '" + cfg_.operation + "' needs a scheme");
      }
      scheme_ = std::make_shared<const LatticeScheme>(scheme_from_json(raw_.at("scheme")));
    }
    return scheme_;
  }

  const WindowSpec& window() {
    if (!window_) {
      if (!raw_.contains("window")) throw config_error("operation '" + cfg_.operation + "' needs a window");
      window_ = window_from_json(raw_.at("window"), scheme()->radicand());
    }
    return *window_;
  }

  int dim() {
    if (points_) return points_->dim;
    if (has_scheme()) return scheme()->physical_dim();
    return points().dim;
  }

  Box region() {
    if (!raw_.contains("region")) throw config_error("operation '" + cfg_.operation + "' needs a region");
    return box_from_json(raw_.at("region"), dim());
  }

  VanHoveSequence boxes() {
    if (!raw_.contains("boxes")) {
      if (dim() != 1) throw config_error("'boxes' is required outside one dimension");
      return VanHoveSequence::default_1d();
    }
    return boxes_from_json(raw_.at("boxes"), dim());
  }

  const IndexedPointSet& points() {
    if (points_) return *points_;
    if (raw_.contains("points")) {
      const Json& src = raw_.at("points");
      if (src.contains("fixture")) {
        if (src.at("fixture") != "random") throw config_error("unknown point fixture");
        if (!src.contains("seed")) throw config_error("the random point fixture needs a seed");
        auto b = box_from_json(src.at("region"), 1);
        points_ = fixtures::random_fixture(b.lo[0], b.hi[0], src.at("seed").get<std::uint64_t>());
      } else {
        std::optional<Box> region;
        if (raw_.contains("region")) region = box_from_json(raw_.at("region"), src.value("dim", 1));
        points_ = ingest(src.at("path").get<std::string>(), src.value("format", "csv"), &warnings_, region);
      }
    } else {
      points_ = enumerate_cut(*scheme(), window(), region(), {params_.value("budget", 1e8)});
    }
    return *points_;
  }

  int rank() {
    const auto& p = points();
    return p.scheme_backed() ? p.scheme->rank() : (has_scheme() ? scheme()->rank() : 0);
  }

  void write(const std::string& name, const std::function<void(std::ostream&)>& fn) {
    if (!write_) return;
    fs::path path = fs::path(cfg_.output_dir) / name;
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
    fn(out);
    if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
    files_.push_back(name);
  }

  Translation translation(const Json& j) {
    Translation t;
    if (j.is_object() && j.contains("index")) {
      t.index = index_from_json(j.at("index"));
      t.vec = scheme()->physical(*t.index);
    } else {
      t.vec = vec_from_json(j.is_object() ? j.at("vec") : j);
    }
    return t;
  }

  // Q for the two-set comparisons: a translate of P.
  IndexedPointSet shifted() {
    if (!params_.contains("shift")) throw config_error("'params.shift' is required");
    return translate(points(), translation(params_.at("shift")));
  }

  TorusPoint torus(const Json& j) {
    if (j.contains("frac")) return torus_point(j.at("frac").get<std::vector<double>>());
    const auto& s = *scheme();
    const Json& x = j.at("x");
    const Json& h = j.at("h");
    auto list = [](const Json& v) { return v.is_array() && !(v.size() == 2 && v[0].is_array()) ? v : Json::array({v}); };
    Json xs = s.physical_dim() == 1 && !(x.is_array() && x.size() == 1) ? Json::array({x}) : list(x);
    Json hs = s.internal_dim() == 1 && !(h.is_array() && h.size() == 1) ? Json::array({h}) : list(h);
    bool exact = s.is_exact();
    for (const auto* v : {&xs, &hs}) {
      for (const auto& e : *v) exact = exact && is_exact_value(e);
    }
    if (exact) {
      ExactVec ex;
      ExactVec eh;
      for (const auto& e : xs) ex.push_back(parse_exact(e, s.radicand()));
      for (const auto& e : hs) eh.push_back(parse_exact(e, s.radicand()));
      return beta_of_cut(s, ex, eh);
    }
    Vec vx{};
    Vec vh{};
    for (std::size_t i = 0; i < xs.size() && i < kMaxDim; ++i) vx[i] = parse_exact(xs[i], s.radicand()).to_double();
    for (std::size_t i = 0; i < hs.size() && i < kMaxDim; ++i) vh[i] = parse_exact(hs[i], s.radicand()).to_double();
    if (s.is_exact()) warnings_.push_back("torus point given in floating point; boundary tests use the tolerance");
    return beta_of_cut(s, vx, vh);
  }

  std::uint64_t seed() const {
    if (!cfg_.seed) throw config_error("operation '" + cfg_.operation + "' samples and needs a seed");
    return *cfg_.seed;
  }

 private:
  bool points_are_scheme_backed() { return raw_.contains("points") && points().scheme_backed(); }

  const RunConfig& cfg_;
  const Json& raw_;
  const Json& params_;
  std::vector<std::string>& warnings_;
  std::vector<std::string>& files_;
  bool write_;
  std::shared_ptr<const LatticeScheme> scheme_;
  std::optional<WindowSpec> window_;
  std::optional<IndexedPointSet> points_;
};

double param(const Json& p, const char* key) {
  if (!p.contains(key)) throw config_error(std::string("'params.") + key + "' is required");
  return p.at(key).get<double>();
}

std::vector<Vec> vec_list(const Json& p, const char* key) {
  std::vector<Vec> out;
  if (p.contains(key)) {
    for (const auto& v : p.at(key)) out.push_back(vec_from_json(v));
  }
  return out;
}

using Handler = std::function<Json(Context&)>;

Json op_enumerate(Context& c) {
  const auto& p = c.points();
  Json j = to_json(p, c.params().value("include_points", false));
  double vol = p.region.volume();
  if (vol > 0) j["density_estimate"] = static_cast<double>(p.size()) / vol;
  if (c.has_scheme() && p.scheme_backed()) j["model_density"] = model_density(*c.scheme(), c.window());
  c.write("points.csv", [&](std::ostream& o) { write_points_csv(p, o); });
  return j;
}

Json op_validate(Context& c) {
  auto rep = validate_scheme(*c.scheme());
  for (const auto& w : rep.warnings) c.warnings().push_back(w);
  if (rep.injectivity_advisory) c.warnings().push_back("injectivity is advisory: float mode scans a bounded index box");
  return to_json(rep);
}

Json op_model_density(Context& c) {
  const auto& s = *c.scheme();
  return {{"density", model_density(s, c.window())},
          {"window_measure", measure(c.window())},
          {"covolume", s.covolume()},
          {"lattice_density", s.lattice_density()}};
}

Json op_dual(Context& c) {
  const auto& s = *c.scheme();
  Json rows = Json::array();
  for (const auto& k : dual_candidates(s, param(c.params(), "k_max"), c.params().value("internal_max", -1.0))) {
    rows.push_back({{"k", to_json(k.k, s.physical_dim())},
                    {"k_internal", to_json(k.k_internal, s.internal_dim())},
                    {"dual_index", to_json(k.dual_index, s.rank())}});
  }
  return {{"count", rows.size()}, {"candidates", rows}};
}

Json op_difference(Context& c) {
  auto d = difference_set(c.points(), param(c.params(), "r"));
  return to_json(d, true);
}

Json op_packing(Context& c) { return {{"packing_radius", packing_radius(c.points())}}; }

Json op_flc(Context& c) { return to_json(flc_clusters(c.points(), param(c.params(), "k")), c.dim()); }

Json op_repetition(Context& c) {
  Vec center = c.params().contains("center") ? vec_from_json(c.params().at("center")) : Vec{};
  return to_json(repetition_set(c.points(), param(c.params(), "k"), center), c.dim(), c.rank());
}

Json op_patch_frequency(Context& c) {
  std::vector<Translation> patch;
  if (!c.params().contains("patch")) throw config_error("'params.patch' is required");
  for (const auto& t : c.params().at("patch")) patch.push_back(c.translation(t));
  auto anchors = vec_list(c.params(), "anchors");
  if (anchors.empty()) anchors.push_back(Vec{});
  return to_json(patch_frequency(c.points(), patch, c.boxes(), anchors), c.dim());
}

Json op_periods(Context& c) {
  return to_json(period_candidates(c.points(), c.params().value("range", -1.0)), c.dim(), c.rank());
}

Json op_lt_close(Context& c) {
  auto q = c.shifted();
  return to_json(lt_close(c.points(), q, param(c.params(), "k"), param(c.params(), "v_radius")), c.dim(), c.rank());
}

Json op_eta(Context& c) { return to_json(eta_table(c.points(), param(c.params(), "r"), c.boxes())); }

Json op_pairwise(Context& c) {
  auto tab = eta_table(c.points(), param(c.params(), "r"), c.boxes());
  auto t = c.translation(c.params().at("t"));
  auto s = c.params().contains("s") ? c.translation(c.params().at("s")) : Translation{};
  if (!c.params().contains("s") && c.points().scheme_backed()) s.index = IndexVec{};
  return {{"d", pairwise_d(tab, t, s)}, {"eta0", tab.eta_zero()}};
}

Json op_symdiff(Context& c) {
  auto q = c.shifted();
  return to_json(symdiff_density(c.points(), q, c.boxes()));
}

Json op_almost(Context& c) {
  auto tab = eta_table(c.points(), param(c.params(), "r"), c.boxes());
  double eps = c.params().contains("eps_fraction") ? param(c.params(), "eps_fraction") * 2.0 * tab.eta_zero()
                                                   : param(c.params(), "eps");
  auto ap = almost_periods(tab, eps);
  Json j = to_json(ap, c.dim(), c.rank());
  j["eta0"] = tab.eta_zero();
  c.write("almost_periods.csv", [&](std::ostream& o) { write_almost_periods_csv(ap, c.dim(), o); });
  if (c.dim() == 1) c.write("almost_periods.svg", [&](std::ostream& o) { o << gap_chart_svg(ap); });
  return j;
}

Json op_predicted(Context& c) {
  const auto& s = *c.scheme();
  const Json& t = c.params().at("t");
  double d = 0.0;
  if (t.is_object() && t.contains("index")) {
    d = predicted_d(s, c.window(), index_from_json(t.at("index")));
  } else {
    ExactVec v;
    for (const auto& e : (t.is_array() && !(t.size() == 2 && t[0].is_array()) ? t : Json::array({t}))) {
      v.push_back(parse_exact(e, s.radicand()));
    }
    d = predicted_d(s, c.window(), v);
  }
  return {{"predicted_d", d}};
}

Json op_mact(Context& c) {
  auto q = c.shifted();
  auto r = mact_close(c.points(), q, param(c.params(), "v_radius"), param(c.params(), "eps"), c.boxes());
  return to_json(r, c.dim(), c.rank());
}

Json op_weyl(Context& c) {
  auto s = weyl_sum(c.points(), vec_from_json(c.params().at("k")), c.boxes());
  Json a = Json::array();
  for (const auto& v : s) a.push_back(Json::array({v.real(), v.imag()}));
  return {{"amplitude_by_box", a}, {"intensity", std::norm(s.back())}};
}

Json op_diffraction(Context& c) {
  const auto& p = c.points();
  const auto n_controls = c.params().value("controls", std::size_t{10});
  const double k_max = param(c.params(), "k_max");
  const std::uint64_t seed = n_controls > 0 ? c.seed() : 0;
  PeakTable tab;
  if (c.params().contains("candidates")) {
    auto ks = vec_list(c.params(), "candidates");
    tab = diffraction_table(p, ks, k_max, n_controls, seed, c.boxes());
  } else {
    tab = diffraction_table(p, *c.scheme(), k_max, n_controls, seed, c.boxes(), c.params().value("internal_max", -1.0));
  }
  double floor = c.params().value("min_intensity", 0.0);
  if (floor > 0) {
    std::erase_if(tab.entries, [&](const Peak& pk) { return pk.intensity < floor; });
  }
  c.write("peaks.csv", [&](std::ostream& o) { write_peaks_csv(tab, p.dim, o); });
  c.write("diffraction.svg", [&](std::ostream& o) { o << diffraction_svg(tab); });
  return to_json(tab, p.dim);
}

Json op_separation(Context& c) {
  return to_json(separation_fraction(*c.scheme(), c.window(), c.params().value("samples", std::size_t{1000}),
                                     c.seed(), param(c.params(), "radius")));
}

Json op_embed(Context& c) {
  return to_json(embed_translation(*c.scheme(), vec_from_json(c.params().at("t"))));
}

Json op_beta(Context& c) { return to_json(c.torus(c.params())); }

Json op_singularity(Context& c) {
  const auto& s = *c.scheme();
  auto hits = singularity_test(s, c.window(), c.torus(c.params().at("point")), param(c.params(), "radius"));
  Json a = Json::array();
  for (const auto& h : hits) {
    a.push_back({{"index", to_json(h.index, s.rank())},
                 {"physical", to_json(h.physical, s.physical_dim())},
                 {"star", to_json(h.star, s.internal_dim())}});
  }
  return {{"singular", !hits.empty()}, {"hits", a}};
}

Json op_fiber(Context& c) {
  auto s = c.scheme();
  auto rep = fiber_enumerate(s, c.window(), c.torus(c.params().at("point")), param(c.params(), "radius"));
  if (rep.multiple_boundary_points) {
    c.warnings().push_back("several boundary points hit; only the two one-sided limits are listed");
  }
  return to_json(rep, s->rank());
}

Json op_reconstruct(Context& c) {
  const auto& p = c.points();
  std::optional<WindowSpec> truth;
  if (c.params().value("compare", true) && c.has_scheme()) truth = c.window();
  auto rep = reconstruct_window(p, truth ? &*truth : nullptr, c.params().value("threshold", -1.0));
  if (p.scheme_backed() && p.scheme->internal_dim() == 1) {
    std::vector<double> stars;
    for (const auto& h : p.star) stars.push_back(h[0]);
    c.write("reconstruction.svg", [&](std::ostream& o) { o << reconstruction_svg(rep, truth ? &*truth : nullptr, stars); });
  }
  return to_json(rep);
}

Json op_continuity(Context& c) {
  auto tab = eta_table(c.points(), param(c.params(), "r"), c.boxes());
  auto ms = c.params().at("ms").get<std::vector<double>>();
  Json j{{"eta0", tab.eta_zero()}, {"rows", to_json(continuity_epsilon(c.points(), tab, ms))}};
  return j;
}

Json op_generator_norm(Context& c) {
  const Json& t = c.params().at("t");
  if (t.is_object() && t.contains("index")) return {{"norm", generator_norm(index_from_json(t.at("index")))}};
  const auto& s = *c.scheme();
  ExactVec v;
  for (const auto& e : (t.is_array() && !(t.size() == 2 && t[0].is_array()) ? t : Json::array({t}))) {
    v.push_back(parse_exact(e, s.radicand()));
  }
  return {{"norm", generator_norm(s, v)}};
}

Json op_m1(Context& c) { return to_json(m1_cover(c.points(), param(c.params(), "r")), c.dim(), c.rank()); }

Json op_weak_ud(Context& c) {
  auto anchors = vec_list(c.params(), "anchors");
  if (anchors.empty()) anchors.push_back(Vec{});
  return to_json(weak_ud_bound(c.points(), param(c.params(), "k"), anchors));
}

Json op_stepping(Context& c) {
  const auto& p = c.points();
  const auto& prm = c.params();
  auto constants = meyer_constants(p, param(prm, "reach"), prm.value("anchors", std::size_t{200}), c.seed(),
                                   prm.value("half_width", -1.0));
  std::vector<std::pair<IndexVec, IndexVec>> pairs;
  if (prm.contains("pairs")) {
    for (const auto& e : prm.at("pairs")) pairs.emplace_back(index_from_json(e.at(0)), index_from_json(e.at(1)));
  } else {
    const double span = prm.value("pair_radius", constants.reach / 4);
    auto pool = restrict_to(p, Box::cube(p.dim, -span, span));
    if (pool.empty()) throw config_error("no points to pair within 'pair_radius'");
    Rng rng(c.seed() ^ 0x5eedULL);
    for (std::size_t i = 0, n = prm.value("n_pairs", std::size_t{100}); i < n; ++i) {
      auto a = pool.index[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(pool.size()) - 1))];
      auto b = pool.index[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(pool.size()) - 1))];
      pairs.emplace_back(a, b);
    }
  }
  Json certs = Json::array();
  std::size_t valid = 0;
  std::size_t failed = 0;
  for (const auto& [x, y] : pairs) {
    try {
      auto cert = stepping_certificate(p, x, y, constants);
      valid += cert.valid ? 1 : 0;
      certs.push_back(to_json(cert, p.dim, c.rank()));
    } catch (const ChainFailure& e) {
      ++failed;
      certs.push_back({{"x", to_json(x, c.rank())}, {"y", to_json(y, c.rank())}, {"valid", false},
                       {"chain_failure_step", e.step()}, {"error", e.what()}});
    }
  }
  return {{"half_width", constants.half_width}, {"m", constants.m},           {"M", constants.big_m},
          {"reach", constants.reach},           {"pairs", pairs.size()},      {"valid", valid},
          {"chain_failures", failed},           {"all_valid", valid == pairs.size()}, {"certificates", certs}};
}

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"enumerate_cut", op_enumerate},       {"validate_scheme", op_validate},
      {"model_density", op_model_density},   {"dual_candidates", op_dual},
      {"difference_set", op_difference},     {"packing_radius", op_packing},
      {"flc_clusters", op_flc},              {"repetition_set", op_repetition},
      {"patch_frequency", op_patch_frequency}, {"period_candidates", op_periods},
      {"lt_close", op_lt_close},             {"eta_table", op_eta},
      {"pairwise_d", op_pairwise},           {"symdiff_density", op_symdiff},
      {"almost_periods", op_almost},         {"predicted_d", op_predicted},
      {"mact_close", op_mact},               {"weyl_sum", op_weyl},
      {"diffraction_table", op_diffraction}, {"separation_fraction", op_separation},
      {"embed_translation", op_embed},       {"beta_of_cut", op_beta},
      {"singularity_test", op_singularity},  {"fiber_enumerate", op_fiber},
      {"reconstruct_window", op_reconstruct}, {"continuity_epsilon", op_continuity},
      {"generator_norm", op_generator_norm}, {"m1_cover", op_m1},
      {"weak_ud_bound", op_weak_ud},         {"stepping_certificate", op_stepping},
  };
  return table;
}

bool check_expectations(const Json& result, const Json& expect, Json& outcome) {
  bool ok = true;
  outcome = Json::array();
  for (const auto& e : expect) {
    const auto path = e.at("path").get<std::string>();
    Json row{{"path", path}};
    bool pass = false;
    try {
      const Json& v = result.at(Json::json_pointer(path));
      row["value"] = v;
      pass = true;
      if (e.contains("equals")) pass = pass && v == e.at("equals");
      if (e.contains("size")) pass = pass && (v.is_array() || v.is_object()) && v.size() == e.at("size").get<std::size_t>();
      if (e.contains("min")) pass = pass && v.is_number() && v.get<double>() >= e.at("min").get<double>();
      if (e.contains("max")) pass = pass && v.is_number() && v.get<double>() <= e.at("max").get<double>();
    } catch (const nlohmann::json::exception&) {
      row["value"] = nullptr;
    }
    row["pass"] = pass;
    ok = ok && pass;
    outcome.push_back(row);
  }
  return ok;
}

}  // namespace

const std::vector<std::string>& operations() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : handlers()) v.push_back(k);
    return v;
  }();
  return names;
}

bool needs_seed(const std::string& op, const Json& params) {
  if (op == "diffraction_table") return params.value("controls", 10) > 0;
  return op == "separation_fraction" || op == "stepping_certificate";
}

RunConfig parse_config(const Json& j) {
  if (!j.is_object()) throw config_error("config must be a JSON object");
  static const std::set<std::string> known = {"operation", "scheme", "window", "region", "boxes", "points",
                                              "params",    "seed",   "output_dir", "threads", "batch", "expect",
                                              "name",      "description"};
  for (const auto& [k, _] : j.items()) {
    if (!known.count(k)) throw config_error("unknown field '" + k + "'");
  }
  RunConfig c;
  c.raw = j;
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw config_error("seed must be a non-negative 64-bit integer");
    c.seed = j.at("seed").get<std::uint64_t>();
  }
  c.output_dir = j.value("output_dir", ".");
  if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
  if (j.contains("expect")) {
    c.expect = j.at("expect");
    if (!c.expect.is_array()) throw config_error("'expect' must be a list");
    for (const auto& e : c.expect) {
      if (!e.is_object() || !e.contains("path")) throw config_error("every expectation needs a 'path'");
    }
  }
  if (j.contains("batch")) {
    if (!j.at("batch").is_array() || j.at("batch").empty()) throw config_error("'batch' must be a nonempty list");
    Json base = j;
    base.erase("batch");
    base.erase("expect");
    base.erase("operation");
    base.erase("params");
    base.erase("name");
    for (const auto& item : j.at("batch")) {
      Json merged = base;
      for (const auto& [k, v] : item.items()) merged[k] = v;
      if (!item.contains("output_dir") && item.contains("name")) {
        merged["output_dir"] = (fs::path(c.output_dir) / item.at("name").get<std::string>()).string();
      }
      if (merged.contains("batch")) throw config_error("batches do not nest");
      c.batch.push_back(parse_config(merged));
    }
    return c;
  }
  if (!j.contains("operation")) throw config_error("missing field 'operation'");
  c.operation = j.at("operation").get<std::string>();
  if (!handlers().count(c.operation)) throw config_error("unknown operation '" + c.operation + "'");
  c.params = j.value("params", Json::object());
  if (!c.params.is_object()) throw config_error("'params' must be an object");
  if (needs_seed(c.operation, c.params) && !c.seed) {
    throw config_error("operation '" + c.operation + "' samples and needs a seed");
  }
  return c;
}

Json RunReport::to_json() const {
  return {{"version", version()}, {"result", payload},       {"warnings", warnings},
          {"pass", pass},         {"files", files},          {"timing", {{"seconds", seconds}}}};
}

RunReport run(const RunConfig& config, bool write_files) {
  const auto start = std::chrono::steady_clock::now();
  const unsigned saved_threads = thread_budget();
  if (config.threads > 0) set_thread_budget(config.threads);
  RunReport rep;
  if (write_files) {
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot create " + config.output_dir + ": " + ec.message());
  }
  try {
    if (!config.batch.empty()) {
      Json runs = Json::array();
      for (const auto& sub : config.batch) {
        auto r = run(sub, write_files);
        rep.pass = rep.pass && r.pass;
        Json entry{{"name", sub.raw.value("name", sub.operation)}, {"operation", sub.operation},
                   {"pass", r.pass},                               {"result", r.payload}};
        if (!r.warnings.empty()) entry["warnings"] = r.warnings;
        runs.push_back(entry);
        for (const auto& f : r.files) rep.files.push_back((fs::path(sub.output_dir) / f).string());
      }
      rep.payload = {{"runs", runs}};
    } else {
      Context ctx(config, rep.warnings, rep.files, write_files);
      Json result = handlers().at(config.operation)(ctx);
      if (ctx.has_scheme() && config.operation != "validate_scheme" && config.operation != "generator_norm") {
        rep.warnings.push_back("denseness of the internal projection is assumed, not verified; run validate_scheme");
      }
      rep.payload = {{"operation", config.operation}, {"config", config.raw}, {"value", result}};
      if (!config.expect.empty()) {
        Json outcome;
        rep.pass = check_expectations(result, config.expect, outcome);
        rep.payload["expectations"] = outcome;
      }
    }
  } catch (...) {
    set_thread_budget(saved_threads);
    throw;
  }
  set_thread_budget(saved_threads);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (write_files) {
    Json doc = rep.to_json();
    doc.erase("timing");
    std::ofstream out(fs::path(config.output_dir) / "report.json");
    if (!out) throw Error(ErrorCode::IoError, "cannot write report.json in " + config.output_dir);
    out << doc.dump(2) << '\n';
    std::ofstream timing(fs::path(config.output_dir) / "timing.json");
    timing << Json{{"seconds", rep.seconds}}.dump() << '\n';
  }
  return rep;
}

}  // namespace modelset::io
