// Copyright 2026 The pdcbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <limits>
#include <string>

#include "pdcbench/bitstring.hpp"
#include "pdcbench/cipher.hpp"
#include "pdcbench/config.hpp"
#include "pdcbench/experiments.hpp"
#include "pdcbench/lang.hpp"
#include "pdcbench/metrics.hpp"

namespace py = pybind11;
using namespace pdcbench;

namespace {

double distance(const std::string& metric, const BitString& x, const BitString& y) {
  auto d = metric_eval(MetricId::parse(metric), x, y);
  return d.finite ? d.value : std::numeric_limits<double>::infinity();
}

// Config text in, summary text out.
py::dict run_recipe(const std::string& name, const std::string& config_text, const std::string& out,
                    std::uint64_t seed, std::size_t workers) {
  Config cfg = recipe_default_config(name);
  if (!config_text.empty()) {
    for (const auto& [section, entries] : Config::parse(config_text).sections()) {
      for (const auto& [k, v] : entries) cfg.set(section, k, v);
    }
  }
  cfg.set("experiment", "name", name);
  if (!cfg.has("experiment", "output")) cfg.set("experiment", "output", "out/" + name);
  auto ec = ExperimentConfig::from_config(cfg);
  if (!out.empty()) ec.output_dir = out;
  if (seed != 0) ec.seed = seed;
  if (workers != 0) ec.workers = workers;
  RunResult r;
  {
    py::gil_scoped_release nogil;
    r = run_experiment(ec);
  }
  py::dict d;
  d["files"] = r.files;
  d["summary"] = r.summary;
  d["output_dir"] = ec.output_dir;
  return d;
}

}  // namespace

PYBIND11_MODULE(_pdcbench, m) {
  m.doc() = "pdcbench core bindings";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<BitString>(m, "BitString")
      .def(py::init([](const std::string& s) { return BitString::parse(s); }))
      .def_static("from_uint", &BitString::from_uint, py::arg("value"), py::arg("length"))
      .def_static("from_hex", &BitString::from_hex, py::arg("hex"), py::arg("length"))
      .def("__len__", &BitString::size)
      .def("__getitem__", &BitString::at)
      .def("__str__", &BitString::to_string)
      .def("__repr__", [](const BitString& s) { return "BitString('" + s.to_string() + "')"; })
      .def("__eq__", [](const BitString& a, const BitString& b) { return a == b; })
      .def("__hash__", [](const BitString& s) { return std::hash<BitString>{}(s); })
      .def("__xor__", &BitString::operator^)
      .def("popcount", &BitString::popcount)
      .def("to_uint", &BitString::to_uint)
      .def("to_hex", &BitString::to_hex)
      .def("flipped", &BitString::flipped)
      .def("slice", &BitString::slice)
      .def("concat", py::overload_cast<const BitString&>(&BitString::concat, py::const_));

  m.def("metric_names", [] {
    std::vector<std::string> out;
    for (const auto& id : all_metrics()) out.push_back(id.name());
    return out;
  });
  m.def("distance", &distance, py::arg("metric"), py::arg("x"), py::arg("y"));
  m.def("sphere_size", &sphere_size);

  py::class_<CipherSpec>(m, "CipherSpec")
      .def_static("spn", py::overload_cast<int>(&CipherSpec::spn), py::arg("rounds"))
      .def_static("arx", &CipherSpec::arx, py::arg("rounds") = 22)
      .def_readonly("rounds", &CipherSpec::rounds)
      .def_property_readonly("family", [](const CipherSpec& s) { return std::string(to_string(s.family)); })
      .def_property_readonly("block_bits", [](const CipherSpec& s) { return s.block_bits(); })
      .def_property_readonly("key_bits", [](const CipherSpec& s) { return s.key_bits(); });

  m.def("encrypt", py::overload_cast<const CipherSpec&, const BitString&, const BitString&>(&encrypt));
  m.def("decrypt", py::overload_cast<const CipherSpec&, const BitString&, const BitString&>(&decrypt));

  m.def("encode_text", &lang::encode_text);
  m.def("decode_text", &lang::decode_text);
  m.def("plausibility_score", [](const BitString& p) { return lang::plausibility_score(lang::LanguageModel::english(), p); });
  m.def("is_plausible", [](const BitString& p, py::object theta) {
    double t = theta.is_none() ? lang::default_threshold() : theta.cast<double>();
    return lang::is_plausible(lang::LanguageModel::english(), p, t);
  }, py::arg("plaintext"), py::arg("theta") = py::none());
  m.def("default_threshold", &lang::default_threshold);
  m.def("unicity_distance", &lang::unicity_distance);

  m.def("recipes", [] {
    std::vector<std::string> out;
    for (const auto& r : list_recipes()) out.push_back(r.name);
    return out;
  });
  m.def("recipe_config", [](const std::string& name) { return recipe_default_config(name).to_string(); });
  m.def("run_recipe", &run_recipe, py::arg("name"), py::arg("config") = "", py::arg("out") = "",
        py::arg("seed") = 0, py::arg("workers") = 0);
}
