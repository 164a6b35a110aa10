#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ccdc/config_json.hpp"
#include "ccdc/error.hpp"
#include "ccdc/run.hpp"

namespace py = pybind11;
using namespace ccdc;

namespace {

py::object fraction(const Rational& r) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(r.numerator(), r.denominator());
}

py::bytes to_bytes(const BitString& b) {
  const auto s = b.bytes();
  return py::bytes(reinterpret_cast<const char*>(s.data()), s.size());
}

BitString from_bytes(const py::bytes& b) {
  const std::string s = b;
  return BitString(std::vector<std::uint8_t>(s.begin(), s.end()));
}

py::dict outputs_dict(const OutputMap& outputs) {
  py::dict d;
  for (const auto& [f, v] : outputs) d[py::make_tuple(f.job, f.index)] = to_bytes(v);
  return d;
}

py::dict report_dict(const LoadReport& r) {
  py::dict d;
  d["scheme"] = std::string(to_string(r.scheme));
  d["K"] = r.K;
  d["r"] = r.r;
  d["N"] = r.N;
  d["Q"] = r.Q;
  d["gamma"] = r.gamma;
  d["J"] = r.J;
  d["T"] = r.T;
  d["formula"] = fraction(r.formula);
  d["measured"] = fraction(r.measured);
  d["match"] = r.match;
  d["correct"] = r.correct;
  d["padded"] = r.padded;
  d["notes"] = r.notes;
  if (r.per_stage) {
    py::dict s;
    s["stage1_subset"] = fraction(r.per_stage->stage1_subset);
    s["stage2_subset"] = fraction(r.per_stage->stage2_subset);
    s["stage1_total"] = fraction(r.per_stage->stage1_total);
    s["stage2_total"] = fraction(r.per_stage->stage2_total);
    d["per_stage"] = s;
  }
  return d;
}

SystemConfig make_config(const py::kwargs& kw) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : kw) {
    const auto k = py::cast<std::string>(key);
    if (py::isinstance<py::str>(value)) {
      j[k] = py::cast<std::string>(value);
    } else if (py::isinstance<py::int_>(value) && !py::isinstance<py::bool_>(value)) {
      j[k] = py::cast<std::int64_t>(value);
    } else {
      throw ConfigError("SystemConfig field '" + k + "' must be an int or a str");
    }
  }
  return config_from_json(j);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coded shuffle simulator for MapReduce jobs with linear reduction";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<PayloadError>(m, "PayloadError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);

  py::class_<SystemConfig>(m, "SystemConfig")
      .def(py::init(&make_config))
      .def_readwrite("K", &SystemConfig::K)
      .def_readwrite("r", &SystemConfig::r)
      .def_readwrite("N", &SystemConfig::N)
      .def_readwrite("Q", &SystemConfig::Q)
      .def_readwrite("T", &SystemConfig::T)
      .def_readwrite("gamma", &SystemConfig::gamma)
      .def_readwrite("seed", &SystemConfig::seed)
      .def_readwrite("dim", &SystemConfig::dim)
      .def_property(
          "scheme", [](const SystemConfig& c) { return std::string(to_string(c.scheme)); },
          [](SystemConfig& c, const std::string& s) { c.scheme = parse_scheme(s); })
      .def_property(
          "group", [](const SystemConfig& c) { return std::string(to_string(c.group)); },
          [](SystemConfig& c, const std::string& s) { c.group = parse_group(s); })
      .def_property(
          "workload", [](const SystemConfig& c) { return std::string(to_string(c.workload)); },
          [](SystemConfig& c, const std::string& s) { c.workload = parse_workload(s); })
      .def_property_readonly("J", &SystemConfig::jobs)
      .def("validate", [](const SystemConfig& c) { validate(c); })
      .def("violations", [](const SystemConfig& c) { return config_violations(c, c.scheme); })
      .def("to_json", [](const SystemConfig& c) { return config_to_json(c).dump(); })
      .def("__repr__", [](const SystemConfig& c) { return "SystemConfig(" + config_to_json(c).dump() + ")"; });

  m.def(
      "lex_subsets",
      [](int n, int k) {
        std::vector<std::vector<int>> out;
        for (const auto& s : lex_subsets(n, k)) out.push_back(s.members());
        return out;
      },
      py::arg("universe_size"), py::arg("subset_size"));

  m.def(
      "group_add",
      [](const std::string& group, const py::bytes& a, const py::bytes& b) {
        return to_bytes(group_add(parse_group(group), from_bytes(a), from_bytes(b)));
      },
      py::arg("group"), py::arg("a"), py::arg("b"));
  m.def("xor_bits", [](const py::bytes& a, const py::bytes& b) { return to_bytes(xor_bits(from_bytes(a), from_bytes(b))); });
  m.def("split_packet", [](const py::bytes& p, int parts) {
    std::vector<py::bytes> out;
    for (const auto& s : split_packet(from_bytes(p), parts)) out.push_back(to_bytes(s));
    return out;
  });

  m.def(
      "formula_load", [](const std::string& scheme, int K, int r, int N) {
        return fraction(formula_load(parse_scheme(scheme), K, r, N));
      },
      py::arg("scheme"), py::arg("K"), py::arg("r"), py::arg("N") = 1);

  m.def(
      "oracle_outputs",
      [](const SystemConfig& cfg) { return outputs_dict(oracle_outputs(cfg, Workload::from(cfg))); },
      "Centralized reduction of every output, as {(job, function): bytes}.");

  m.def(
      "run",
      [](const SystemConfig& cfg) {
        validate(cfg);
        const Workload w = Workload::from(cfg);
        const Outcome out = run_scheme(cfg, w);
        const auto report = verify(out, oracle_outputs(cfg, w), formula_load(cfg.scheme, cfg.K, cfg.r, cfg.N));
        py::dict d = report_dict(report);
        d["outputs"] = outputs_dict(out.outputs);
        d["map_work"] = out.map_work;
        py::list trace;
        for (const auto& msg : out.trace.messages()) {
          py::dict row;
          row["sender"] = msg.sender;
          row["recipients"] = msg.recipients.members();
          row["bits"] = msg.bits;
          row["stage"] = msg.tag.stage;
          row["subset_rank"] = msg.tag.subset_rank;
          row["outside_node"] = msg.tag.outside_node;
          row["job"] = msg.tag.job;
          trace.append(row);
        }
        d["trace"] = trace;
        return d;
      },
      "Run cfg.scheme, verify it against the oracle and return the report with outputs and trace.");

  m.def(
      "evaluate", [](const SystemConfig& cfg) { return report_dict(evaluate(cfg)); },
      "Run and verify, returning only the load report.");
}
