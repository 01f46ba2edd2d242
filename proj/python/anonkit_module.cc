//
// Copyright 2026 The Anonkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "anonkit/coarsening.h"
#include "anonkit/config.h"
#include "anonkit/dataset.h"
#include "anonkit/distance.h"
#include "anonkit/generator.h"
#include "anonkit/k_anonymity.h"
#include "anonkit/regeneration.h"
#include "anonkit/runner.h"
#include "anonkit/schema.h"
#include "anonkit/text_format.h"
#include "anonkit/uniqueness.h"
#include "pybind11/pybind11.h"
#include "pybind11/stl.h"

namespace py = pybind11;

namespace anonkit {
namespace {

PyObject* cap_error = nullptr;

[[noreturn]] void Raise(const absl::Status& status) {
  const std::string msg(status.message());
  switch (status.code()) {
    case absl::StatusCode::kResourceExhausted:
      PyErr_SetString(cap_error, msg.c_str());
      throw py::error_already_set();
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
    case absl::StatusCode::kNotFound:
      throw py::value_error(msg);
    default:
      throw std::runtime_error(msg);
  }
}

template <typename T>
T Unwrap(absl::StatusOr<T> v) {
  if (!v.ok()) Raise(v.status());
  return *std::move(v);
}

void Check(const absl::Status& s) {
  if (!s.ok()) Raise(s);
}

AnonkitConfig ConfigFrom(const std::optional<std::string>& json) {
  if (!json.has_value()) return DefaultPdConfig();
  return Unwrap(ParseConfigJson(*json));
}

// A dataset bundled with the config that describes its columns.
struct PyDataset {
  Dataset data;
  AnonkitConfig config;
};

std::vector<FeatureGroup> Groups(const std::string& groups) {
  return Unwrap(ParseGroupList(groups));
}

py::dict RowToDict(const ReportRow& row) {
  py::dict d;
  d["method"] = row.method;
  d["k"] = row.k;
  d["t"] = row.t;
  d["cluster_size"] = row.cluster_size;
  d["resolution"] = row.resolution;
  d["qi_groups"] = row.qi_groups;
  d["records"] = row.records;
  d["unique_count"] = row.unique_count;
  d["reid_risk"] = row.reid_risk;
  d["min_class_size"] = row.min_class_size;
  d["mean_class_size"] = row.mean_class_size;
  d["worst_case_guess_rate"] = row.worst_case_guess_rate;
  d["residual_uniques"] = row.residual_uniques;
  py::dict disclosure;
  for (const auto& [name, value] : row.disclosure) disclosure[py::str(name)] = value;
  d["disclosure"] = disclosure;
  d["information_loss"] = row.information_loss;
  d["status"] = row.status;
  return d;
}

MaskedValueDistributions DistributionsFrom(
    const std::map<std::string, std::vector<std::pair<int64_t, double>>>& in,
    const Schema& schema) {
  MaskedValueDistributions out;
  for (const auto& [name, weights] : in) {
    std::optional<std::size_t> a = schema.IndexOf(name);
    if (!a.has_value()) throw py::value_error("unknown attribute '" + name + "'");
    out[*a] = weights;
  }
  return out;
}

UniquenessOptions Options(uint64_t cap) {
  UniquenessOptions o;
  o.realization_cap = cap;
  return o;
}

}  // namespace
}  // namespace anonkit

PYBIND11_MODULE(_anonkit, m) {
  using namespace anonkit;
  m.doc() = "Tabular anonymization and risk assessment.";

  cap_error = PyErr_NewException("anonkit.CapExceededError", PyExc_RuntimeError,
                                 nullptr);
  m.attr("CapExceededError") = py::handle(cap_error);

  py::class_<PyDataset>(m, "Dataset")
      .def_static(
          "from_text",
          [](const std::string& text, std::optional<std::string> config_json) {
            PyDataset d{Dataset(), ConfigFrom(config_json)};
            d.data = Unwrap(ParseDataset(text, d.config.schema));
            return d;
          },
          py::arg("text"), py::arg("config_json") = py::none())
      .def_static(
          "load",
          [](const std::string& path, std::optional<std::string> config_json) {
            PyDataset d{Dataset(), ConfigFrom(config_json)};
            d.data = Unwrap(ParseDataset(Unwrap(ReadFile(path)), d.config.schema));
            return d;
          },
          py::arg("path"), py::arg("config_json") = py::none())
      .def("to_text", [](const PyDataset& d) { return SerializeDataset(d.data); })
      .def("save",
           [](const PyDataset& d, const std::string& path) {
             Check(WriteFileAtomically(path, SerializeDataset(d.data)));
           })
      .def_property_readonly("num_records",
                             [](const PyDataset& d) { return d.data.num_records(); })
      .def_property_readonly("columns",
                             [](const PyDataset& d) {
                               std::vector<std::string> out;
                               for (const AttributeSchema& a :
                                    d.data.schema().attributes()) {
                                 out.push_back(a.name);
                               }
                               return out;
                             })
      .def("__len__", [](const PyDataset& d) { return d.data.num_records(); })
      .def("cell",
           [](const PyDataset& d, std::size_t record, const std::string& column) {
             std::optional<std::size_t> a = d.data.schema().IndexOf(column);
             if (!a.has_value()) throw py::key_error(column);
             if (record >= d.data.num_records()) throw py::index_error();
             return FormatCell(d.data.cell(record, *a), d.data.schema().attribute(*a));
           })
      .def("__eq__", [](const PyDataset& a, const PyDataset& b) {
        return a.data == b.data;
      });

  m.def("default_config_json", [] { return ConfigToJson(DefaultPdConfig()); });

  m.def(
      "generate",
      [](std::size_t n, uint64_t seed, double coupling) {
        GeneratorSpec spec = DefaultGeneratorSpec(n, seed);
        spec.hospital_county_coupling = coupling;
        return PyDataset{Unwrap(GeneratePdLike(spec)), DefaultPdConfig()};
      },
      py::arg("n"), py::kw_only(), py::arg("seed"), py::arg("coupling") = 0.9,
      "Synthetic discharge-like records; deterministic in (n, seed, coupling).");

  m.def(
      "anonymize",
      [](const PyDataset& input, const std::string& method,
         std::optional<std::size_t> k, std::optional<double> t,
         std::optional<uint64_t> fraction,
         std::map<std::string, uint64_t> resolutions,
         std::optional<uint64_t> seed,
         std::map<std::string, std::vector<std::pair<int64_t, double>>>
             distributions,
         const PyDataset* original, const std::string& groups,
         uint64_t realization_cap) {
        const Method mth = Unwrap(ParseMethod(method));
        MethodParams p;
        p.k = k;
        p.t = t;
        p.fraction = fraction;
        p.resolutions = std::move(resolutions);
        p.seed = seed;
        p.distributions = DistributionsFrom(distributions, input.config.schema);
        Check(ValidateMethodParams(mth, p));
        const std::vector<FeatureGroup> g = Groups(groups);
        const Dataset* orig = original == nullptr ? nullptr : &original->data;
        absl::StatusOr<Evaluation> r;
        {
          py::gil_scoped_release release;
          r = Evaluate(input.data, input.config, mth, p, g, orig,
                       Options(realization_cap));
        }
        Evaluation ev = Unwrap(std::move(r));
        return py::make_tuple(PyDataset{std::move(ev.output), input.config},
                              RowToDict(ev.report));
      },
      py::arg("dataset"), py::arg("method"), py::kw_only(),
      py::arg("k") = py::none(), py::arg("t") = py::none(),
      py::arg("fraction") = py::none(),
      py::arg("resolutions") = std::map<std::string, uint64_t>{},
      py::arg("seed") = py::none(),
      py::arg("distributions") =
          std::map<std::string, std::vector<std::pair<int64_t, double>>>{},
      py::arg("original") = nullptr, py::arg("groups") = "all",
      py::arg("realization_cap") = UniquenessOptions().realization_cap,
      "Runs one method; returns (released dataset, report dict).");

  m.def(
      "assess",
      [](const PyDataset& released, const PyDataset* original,
         const std::string& groups, uint64_t realization_cap) {
        return RowToDict(Unwrap(Assess(released.data,
                                       original == nullptr ? nullptr : &original->data,
                                       released.config, Groups(groups),
                                       Options(realization_cap))));
      },
      py::arg("released"), py::kw_only(), py::arg("original") = nullptr,
      py::arg("groups") = "all",
      py::arg("realization_cap") = UniquenessOptions().realization_cap);

  m.def(
      "is_unique",
      [](const PyDataset& d, std::size_t record, const std::string& groups,
         uint64_t realization_cap) {
        const AttributeSet q = d.data.schema().QuasiIdentifiers(Groups(groups));
        return Unwrap(IsUniqueWorstCase(d.data, record, q, Options(realization_cap)));
      },
      py::arg("dataset"), py::arg("record"), py::kw_only(),
      py::arg("groups") = "all",
      py::arg("realization_cap") = UniquenessOptions().realization_cap);

  m.def(
      "closeness_bounds",
      [](std::size_t n, std::size_t k, std::optional<double> t) {
        const ClosenessParams p = Unwrap(ClosenessBounds(n, k, t));
        py::dict d;
        d["k"] = p.k;
        d["t"] = p.t;
        d["n"] = p.n;
        d["cluster_size"] = p.effective_cluster_size;
        return d;
      },
      py::arg("n"), py::arg("k"), py::arg("t") = py::none());

  m.def(
      "coarsening_intervals",
      [](int64_t dmin, int64_t dmax, uint64_t resolution) {
        if (dmin > dmax) throw py::value_error("dmin > dmax");
        AttributeSchema a{"a", Role::kQuasiIdentifier, FeatureGroup::kNone,
                          dmin, dmax, std::nullopt};
        return Unwrap(CoarseningIntervals(a, resolution));
      },
      py::arg("dmin"), py::arg("dmax"), py::arg("resolution"));
}
