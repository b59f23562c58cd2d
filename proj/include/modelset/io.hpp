#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "modelset/autocorr.hpp"
#include "modelset/diagnostics.hpp"
#include "modelset/meyer.hpp"
#include "modelset/point_set.hpp"
#include "modelset/scheme.hpp"
#include "modelset/spectral.hpp"
#include "modelset/torus.hpp"
#include "modelset/window.hpp"

namespace modelset::io {

using Json = nlohmann::ordered_json;

const char* version();

// ------------------------------------------------------------ parsing
/// Scalars: numbers, "p/q" strings, or [a, b] pairs meaning a + b sqrt(D).
QuadraticNumber parse_exact(const Json& v, std::int64_t radicand);
bool is_exact_value(const Json& v);

/// {"d", "m", "basis", "arithmetic": {"mode": "quadratic", "D"} | {"mode": "float", "tol"}}
/// or {"fixture": "fibonacci" | "silver_mean" | "ammann_beenker" | "integer_crystal"}.
LatticeScheme scheme_from_json(const Json& j);
/// Interval unions, polygons, "whole", or a fixture name. Exact endpoints
/// need the scheme radicand.
WindowSpec window_from_json(const Json& j, std::int64_t radicand = 0);
Box box_from_json(const Json& j, int dim);
VanHoveSequence boxes_from_json(const Json& j, int dim);
IndexVec index_from_json(const Json& j);
Vec vec_from_json(const Json& j);

// ------------------------------------------------------------ serialisation
Json to_json(const Vec& v, int dim);
Json to_json(const IndexVec& n, int rank);
Json to_json(const QuadraticNumber& q);
Json to_json(const Translation& t, int dim, int rank);
Json to_json(const LatticeScheme& s);
Json to_json(const WindowSpec& w);
Json to_json(const ValidationReport& r);
Json to_json(const IndexedPointSet& p, bool with_points = true);
Json to_json(const ClusterReport& r, int dim);
Json to_json(const RepetitionReport& r, int dim, int rank);
Json to_json(const FrequencyTable& t, int dim);
Json to_json(const PeriodReport& r, int dim, int rank);
Json to_json(const LocalMatch& r, int dim, int rank);
Json to_json(const AutocorrelationTable& t);
Json to_json(const SymdiffReport& r);
Json to_json(const AlmostPeriods& a, int dim, int rank);
Json to_json(const MactResult& r, int dim, int rank);
Json to_json(const PeakTable& t, int dim);
Json to_json(const SeparationReport& r);
Json to_json(const TorusPoint& p);
Json to_json(const FiberReport& r, int rank);
Json to_json(const ReconstructionReport& r);
Json to_json(const std::vector<ContinuityRow>& rows);
Json to_json(const M1Report& r, int dim, int rank);
Json to_json(const WeakUdReport& r);
Json to_json(const MeyerCertificate& c, int dim, int rank);

// ------------------------------------------------------------ tables and plots
/// Columns: index columns (scheme-backed), physical columns, star columns.
void write_points_csv(const IndexedPointSet& p, std::ostream& out);
void write_peaks_csv(const PeakTable& t, int dim, std::ostream& out);
void write_almost_periods_csv(const AlmostPeriods& a, int dim, std::ostream& out);
std::string diffraction_svg(const PeakTable& t);
std::string reconstruction_svg(const ReconstructionReport& r, const WindowSpec* truth,
                               const std::vector<double>& stars);
std::string gap_chart_svg(const AlmostPeriods& a);

/// Raw point set from CSV (header x[,y[,z]]) or JSON ({"points": [[...]],
/// "region": {"lo", "hi"}}). The region defaults to the bounding box, with a
/// warning. Throws ParseError with the line number, DuplicatePoint, IoError.
IndexedPointSet ingest(const std::string& path, const std::string& format, std::vector<std::string>* warnings,
                       const std::optional<Box>& region = std::nullopt);
IndexedPointSet ingest_csv(std::istream& in, std::vector<std::string>* warnings,
                           const std::optional<Box>& region = std::nullopt);

// ------------------------------------------------------------ runs
struct RunConfig {
  Json raw;
  std::string operation;
  Json params = Json::object();
  std::optional<std::uint64_t> seed;
  std::string output_dir = ".";
  unsigned threads = 0;  // 0: keep the current budget
  std::vector<RunConfig> batch;
  Json expect = Json::array();
};

struct RunReport {
  Json payload;  // deterministic part
  std::vector<std::string> warnings;
  std::vector<std::string> files;
  double seconds = 0.0;
  bool pass = true;

  /// {"version", "config", "result", "warnings", "pass", "files", "timing"}.
  Json to_json() const;
};

/// Operation names accepted in configs.
const std::vector<std::string>& operations();
/// Operations that draw random numbers and therefore need a seed.
bool needs_seed(const std::string& operation, const Json& params);

/// Validates and normalises a config (ConfigError on failure).
RunConfig parse_config(const Json& j);
/// Runs one config or a batch; writes report.json and side tables into the
/// output directory when `write_files` is set.
RunReport run(const RunConfig& config, bool write_files = true);

}  // namespace modelset::io
