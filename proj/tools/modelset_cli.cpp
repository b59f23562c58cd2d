#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include <CLI11.hpp>

#include "modelset/errors.hpp"
#include "modelset/io.hpp"

namespace {

using modelset::ErrorCode;
using modelset::io::Json;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct Verb {
  const char* name;
  const char* help;
  const char* default_op;            // nullptr: the config must name one
  std::set<std::string> operations;  // empty: any operation
};

const std::vector<Verb>& verbs() {
  static const std::vector<Verb> v = {
      {"generate", "enumerate a model set patch", "enumerate_cut", {"enumerate_cut"}},
      {"analyze", "run any single operation", nullptr, {}},
      {"autocorr", "autocorrelation tables and metrics", "eta_table",
       {"eta_table", "pairwise_d", "symdiff_density", "predicted_d", "mact_close"}},
      {"almost-periods", "epsilon almost periods and gap statistics", "almost_periods",
       {"almost_periods", "continuity_epsilon"}},
      {"diffract", "exponential sums and peak tables", "diffraction_table", {"diffraction_table", "weyl_sum"}},
      {"torus", "torus parametrisation and singularity scans", "singularity_test",
       {"embed_translation", "beta_of_cut", "singularity_test", "separation_fraction"}},
      {"fiber", "hull elements over a torus point", "fiber_enumerate", {"fiber_enumerate"}},
      {"reconstruct", "window estimate from star images", "reconstruct_window", {"reconstruct_window"}},
      {"meyer-cert", "stepping-stone certificates and cover sizes", "stepping_certificate",
       {"stepping_certificate", "m1_cover", "weak_ud_bound", "generator_norm"}},
      {"suite", "batch of operations with expectations", nullptr, {}},
  };
  return v;
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError:
      return kExitIo;
    case ErrorCode::ConfigError:
    case ErrorCode::ParseError:
    case ErrorCode::DuplicatePoint:
    case ErrorCode::NotSchemeBacked:
    case ErrorCode::UnsupportedDimension:
    case ErrorCode::UnsupportedShape:
    case ErrorCode::RegionTooSmall:
    case ErrorCode::RegionTooLarge:
    case ErrorCode::EpsilonOutOfRange:
    case ErrorCode::InvalidArgument:
    case ErrorCode::NotInL:
    case ErrorCode::SingularBasis:
    case ErrorCode::InjectivityViolation:
      return kExitConfig;
    default:
      return kExitNumeric;
  }
}

Json load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw modelset::Error(ErrorCode::IoError, "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw modelset::Error(ErrorCode::ConfigError, path + ": " + e.what());
  }
}

void override_seed(Json& j, std::uint64_t seed) {
  j["seed"] = seed;
  if (j.contains("batch")) {
    for (auto& item : j["batch"]) {
      if (item.contains("seed")) item["seed"] = seed;
    }
  }
}

int execute(const Verb& verb, const std::string& config_path, const std::string& out, unsigned threads,
            std::optional<std::uint64_t> seed) {
  Json j = load(config_path);
  if (!j.is_object()) throw modelset::Error(ErrorCode::ConfigError, "config must be a JSON object");
  std::string name = verb.name;
  if (name == "suite") {
    if (!j.contains("batch")) throw modelset::Error(ErrorCode::ConfigError, "suite needs a 'batch' config");
  } else {
    if (j.contains("batch")) throw modelset::Error(ErrorCode::ConfigError, "batch configs run with the suite verb");
    if (!j.contains("operation")) {
      if (!verb.default_op) throw modelset::Error(ErrorCode::ConfigError, "config must name an operation");
      j["operation"] = verb.default_op;
    }
    auto op = j.at("operation").get<std::string>();
    if (!verb.operations.empty() && !verb.operations.count(op)) {
      throw modelset::Error(ErrorCode::ConfigError, "operation '" + op + "' does not belong to verb " + name);
    }
  }
  if (!out.empty()) j["output_dir"] = out;
  if (threads > 0) j["threads"] = threads;
  if (seed) override_seed(j, *seed);

  auto config = modelset::io::parse_config(j);
  auto report = modelset::io::run(config, true);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  if (report.payload.contains("runs")) {
    for (const auto& r : report.payload.at("runs")) {
      std::cout << (r.at("pass").get<bool>() ? "PASS " : "FAIL ") << r.at("name").get<std::string>() << '\n';
    }
  }
  std::cout << "report: " << (std::filesystem::path(config.output_dir) / "report.json").string() << '\n';
  return report.pass ? 0 : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modelset: cut-and-project model sets and their diagnostics"};
  app.set_version_flag("--version", std::string(modelset::io::version()));
  app.require_subcommand(1);

  std::string config;
  std::string out;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;
  for (const auto& v : verbs()) {
    auto* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory (overrides the config)");
    sub->add_option("--threads", threads, "worker threads (overrides the config)");
    sub->add_option("--seed-override", seed, "replace every seed in the config");
  }
  app.add_subcommand("operations", "list operation names")->callback([] {
    for (const auto& op : modelset::io::operations()) std::cout << op << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  for (const auto& v : verbs()) {
    if (!app.got_subcommand(v.name)) continue;
    try {
      return execute(v, config, out, threads, seed);
    } catch (const modelset::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return exit_code(e.code());
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "error: ConfigError: " << e.what() << '\n';
      return kExitConfig;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitNumeric;
    }
  }
  return 0;
}
