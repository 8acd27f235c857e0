#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coindex/verify.hpp"

namespace py = pybind11;

namespace {

// run a verification from JSON text and hand the report back as JSON text;
// the Python wrapper turns both sides into dicts
std::string verify_json(const std::string& config_text, int order, const std::string& mode,
                        bool timing) {
    auto cfg = coindex::VerificationConfig::from_json_text(config_text);
    if (order > 0) cfg.order = order;
    if (!mode.empty()) cfg.mode = mode;
    auto report = coindex::run_verification(cfg);
    return report.to_json(timing);
}

py::dict calibrate(int order) {
    auto rec = coindex::calibrate_signs(order);
    py::dict out;
    out["cs"] = rec.cs_note;
    out["bb_sign"] = rec.bb_sign;
    out["bb_note"] = rec.bb_note;
    out["ls_sign"] = rec.ls_sign;
    out["ls_note"] = rec.ls_note;
    out["consistent"] = rec.consistent;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "coincidence invariants of pairs of holomorphic self-maps: exact residues "
              "and index-theorem verification";

    m.def("verify_json", &verify_json, py::arg("config_text"), py::arg("order") = 0,
          py::arg("mode") = "", py::arg("timing") = false,
          "Run a verification from a JSON config string; returns the report as JSON text.");
    m.def("calibrate", &calibrate, py::arg("order") = 10,
          "Run the sign calibration suite on the built-in families.");
    m.def("builtin_configs", &coindex::builtin_configs,
          "Built-in example configurations, keyed by name.");

    py::register_exception<coindex::config_error>(m, "ConfigError");
    py::register_exception<coindex::hypothesis_error>(m, "HypothesisError");
    py::register_exception<coindex::computation_error>(m, "ComputationError");
}
