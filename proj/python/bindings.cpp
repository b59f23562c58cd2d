#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modelset/errors.hpp"
#include "modelset/io.hpp"
#include "modelset/scheme.hpp"

namespace py = pybind11;
using modelset::io::Json;

namespace {

// Configs and reports cross the boundary as JSON text; the Python side
// wraps these with json.loads / json.dumps.
std::string run_json(const std::string& config, bool write_files) {
  auto cfg = modelset::io::parse_config(Json::parse(config));
  py::gil_scoped_release release;
  return modelset::io::run(cfg, write_files).to_json().dump();
}

std::string cut_json(const std::string& scheme, const std::string& window, const std::string& region) {
  auto s = modelset::io::scheme_from_json(Json::parse(scheme));
  auto w = modelset::io::window_from_json(Json::parse(window), s.radicand());
  auto box = modelset::io::box_from_json(Json::parse(region), s.physical_dim());
  return modelset::io::to_json(modelset::enumerate_cut(s, w, box)).dump();
}

double density_json(const std::string& scheme, const std::string& window) {
  auto s = modelset::io::scheme_from_json(Json::parse(scheme));
  return modelset::model_density(s, modelset::io::window_from_json(Json::parse(window), s.radicand()));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  // messages lead with the error code name, e.g. "ConfigError: ..."
  py::register_exception<modelset::Error>(m, "ModelsetError", PyExc_ValueError);
  static PyObject* error_type = m.attr("ModelsetError").ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Json::exception& e) {
      PyErr_SetString(error_type, (std::string("ConfigError: ") + e.what()).c_str());
    }
  });

  m.def("version", &modelset::io::version);
  m.def("operations", &modelset::io::operations);
  m.def("needs_seed", [](const std::string& op, const std::string& params) {
    return modelset::io::needs_seed(op, Json::parse(params));
  });
  m.def("run_json", &run_json, py::arg("config"), py::arg("write_files") = false);
  m.def("cut_json", &cut_json, py::arg("scheme"), py::arg("window"), py::arg("region"));
  m.def("density_json", &density_json, py::arg("scheme"), py::arg("window"));
}
